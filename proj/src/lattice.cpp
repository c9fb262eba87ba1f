#include "hypint/lattice.hpp"

#include <algorithm>

#include "hypint/error.hpp"
#include "hypint/linalg.hpp"
#include "hypint/simplex.hpp"

namespace hypint {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool abs_less(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

void row_sub(VecZ& dst, const Int& f, const VecZ& src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
        dst[j] -= f * src[j];
}

void row_negate(VecZ& row) {
    for (Int& z : row)
        z = -z;
}

VecQ shifted(const VecQ& v, const VecZ& l) {
    VecQ w = v;
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += Rat(l[i]);
    return w;
}

// Subset caps keep the relaxation pass at 2^|support| linear programs.
constexpr long kSubsetCap = 12;

} // namespace

HnfResult hnf_rows(const MatZ& m) {
    const long rows = static_cast<long>(m.size());
    const long cols = rows ? static_cast<long>(m[0].size()) : 0;
    for (const VecZ& r : m) {
        if (static_cast<long>(r.size()) != cols)
            throw internal_error("hnf_rows: ragged matrix");
    }
    HnfResult res;
    res.h = m;
    res.u.assign(rows, VecZ(rows, Int(0)));
    for (long i = 0; i < rows; ++i)
        res.u[i][i] = 1;

    long row = 0;
    for (long col = 0; col < cols && row < rows; ++col) {
        bool have = false;
        for (long i = row; i < rows; ++i) {
            if (res.h[i][col] != 0) {
                have = true;
                break;
            }
        }
        if (!have)
            continue;
        // Euclidean passes shrink the column below `row` onto one pivot.
        for (;;) {
            long best = -1;
            for (long i = row; i < rows; ++i) {
                if (res.h[i][col] != 0 &&
                    (best < 0 || abs_less(res.h[i][col], res.h[best][col])))
                    best = i;
            }
            std::swap(res.h[best], res.h[row]);
            std::swap(res.u[best], res.u[row]);
            bool clean = true;
            for (long i = row + 1; i < rows; ++i) {
                if (res.h[i][col] == 0)
                    continue;
                Int q = res.h[i][col] / res.h[row][col];
                row_sub(res.h[i], q, res.h[row]);
                row_sub(res.u[i], q, res.u[row]);
                if (res.h[i][col] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (res.h[row][col] < 0) {
            row_negate(res.h[row]);
            row_negate(res.u[row]);
        }
        for (long i = 0; i < row; ++i) {
            Int q = floor_div(res.h[i][col], res.h[row][col]);
            if (q != 0) {
                row_sub(res.h[i], q, res.h[row]);
                row_sub(res.u[i], q, res.u[row]);
            }
        }
        ++row;
    }
    res.rank = row;
    return res;
}

VecZ snf_invariants(MatZ m) {
    VecZ inv;
    const long rows = static_cast<long>(m.size());
    const long cols = rows ? static_cast<long>(m[0].size()) : 0;
    long t = 0;
    while (t < rows && t < cols) {
        long pi = -1, pj = -1;
        for (long i = t; i < rows; ++i) {
            for (long j = t; j < cols; ++j) {
                if (m[i][j] != 0 && (pi < 0 || abs_less(m[i][j], m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0)
            break;
        std::swap(m[pi], m[t]);
        for (long i = 0; i < rows; ++i)
            std::swap(m[i][pj], m[i][t]);
        for (;;) {
            bool dirty = false;
            for (long i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0)
                    continue;
                Int q = m[i][t] / m[t][t];
                row_sub(m[i], q, m[t]);
                if (m[i][t] != 0)
                    dirty = true;
            }
            for (long j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0)
                    continue;
                Int q = m[t][j] / m[t][t];
                for (long i = 0; i < rows; ++i)
                    m[i][j] -= q * m[i][t];
                if (m[t][j] != 0)
                    dirty = true;
            }
            if (dirty) {
                // A nonzero remainder has smaller absolute value; re-pick.
                long bi = t, bj = t;
                for (long i = t; i < rows; ++i)
                    for (long j = t; j < cols; ++j)
                        if (m[i][j] != 0 && abs_less(m[i][j], m[bi][bj])) {
                            bi = i;
                            bj = j;
                        }
                std::swap(m[bi], m[t]);
                for (long i = 0; i < rows; ++i)
                    std::swap(m[i][bj], m[i][t]);
                continue;
            }
            bool divides = true;
            for (long i = t + 1; i < rows && divides; ++i) {
                for (long j = t + 1; j < cols && divides; ++j) {
                    if (m[i][j] % m[t][t] != 0) {
                        for (long c = 0; c < cols; ++c)
                            m[t][c] += m[i][c];
                        divides = false;
                    }
                }
            }
            if (divides)
                break;
        }
        inv.push_back(abs(m[t][t]));
        ++t;
    }
    return inv;
}

Configuration Configuration::from_columns(MatZ columns) {
    if (columns.empty())
        throw input_error("configuration needs at least one vector");
    Configuration cfg;
    cfg.dim = static_cast<long>(columns[0].size());
    if (cfg.dim == 0)
        throw input_error("configuration vectors must have positive dimension");
    for (const VecZ& c : columns) {
        if (static_cast<long>(c.size()) != cfg.dim)
            throw input_error("configuration vectors must share one dimension");
    }
    cfg.vectors = std::move(columns);
    MatQ sys(cfg.count(), VecQ(cfg.dim));
    for (long i = 0; i < cfg.count(); ++i)
        for (long j = 0; j < cfg.dim; ++j)
            sys[i][j] = Rat(cfg.vectors[i][j]);
    cfg.h = solve_linear(sys, VecQ(cfg.count(), Rat(1)));
    return cfg;
}

MatZ Configuration::matrix() const {
    MatZ a(dim, VecZ(count()));
    for (long i = 0; i < count(); ++i)
        for (long j = 0; j < dim; ++j)
            a[j][i] = vectors[i][j];
    return a;
}

MatZ kernel_basis(const Configuration& cfg) {
    HnfResult hr = hnf_rows(cfg.vectors);
    MatZ ker(hr.u.begin() + hr.rank, hr.u.end());
    if (ker.empty())
        return ker;
    HnfResult canon = hnf_rows(ker);
    return MatZ(canon.h.begin(), canon.h.begin() + canon.rank);
}

SpanLattice::SpanLattice(MatZ generators, long dim) : dim_(dim), gens_(std::move(generators)) {
    for (const VecZ& g : gens_) {
        if (static_cast<long>(g.size()) != dim_)
            throw input_error("span lattice: generator dimension mismatch");
    }
    HnfResult hr = hnf_rows(gens_);
    h_.assign(hr.h.begin(), hr.h.begin() + hr.rank);
    u_.assign(hr.u.begin(), hr.u.begin() + hr.rank);
    for (const VecZ& row : h_) {
        long p = 0;
        while (row[p] == 0)
            ++p;
        pivots_.push_back(p);
    }
}

SpanLattice SpanLattice::column_span(const Configuration& cfg) {
    return SpanLattice(cfg.vectors, cfg.dim);
}

bool SpanLattice::contains(const VecZ& x) const {
    return decompose(x).has_value();
}

bool SpanLattice::contains(const VecQ& x) const {
    if (static_cast<long>(x.size()) != dim_)
        throw input_error("span lattice: vector dimension mismatch");
    VecZ y(dim_);
    for (long i = 0; i < dim_; ++i) {
        if (!is_integer(x[i]))
            return false;
        y[i] = x[i].get_num();
    }
    return contains(y);
}

bool SpanLattice::same_coset(const VecQ& x, const VecQ& y) const {
    if (x.size() != y.size())
        throw input_error("span lattice: coset operands differ in size");
    VecQ diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        diff[i] = x[i] - y[i];
    return contains(diff);
}

std::optional<VecZ> SpanLattice::decompose(const VecZ& x) const {
    if (static_cast<long>(x.size()) != dim_)
        throw input_error("span lattice: vector dimension mismatch");
    VecZ cur = x;
    VecZ coeffs(h_.size());
    for (std::size_t r = 0; r < h_.size(); ++r) {
        const long p = pivots_[r];
        if (cur[p] % h_[r][p] != 0)
            return std::nullopt;
        coeffs[r] = cur[p] / h_[r][p];
        if (coeffs[r] != 0)
            row_sub(cur, coeffs[r], h_[r]);
    }
    for (const Int& z : cur) {
        if (z != 0)
            return std::nullopt;
    }
    VecZ out(gens_.size(), Int(0));
    for (std::size_t r = 0; r < h_.size(); ++r)
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += coeffs[r] * u_[r][k];
    return out;
}

std::vector<long> negative_support(const VecQ& v) {
    std::vector<long> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_integer(v[i]) && v[i] < 0)
            out.push_back(static_cast<long>(i));
    }
    return out;
}

std::vector<std::vector<long>> graded_tuples(long k, long radius, const Int& guard) {
    if (k < 0 || radius < 0)
        throw input_error("graded_tuples: negative dimension or radius");
    Int side = 2 * Int(radius) + 1;
    Int total;
    mpz_pow_ui(total.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(k));
    if (total > guard)
        throw resource_error("enumeration box of " + total.get_str() +
                             " points exceeds the guard of " + guard.get_str());
    std::vector<std::vector<long>> out;
    out.reserve(total.get_ui());
    std::vector<long> cur(k, -radius);
    for (;;) {
        out.push_back(cur);
        long i = k - 1;
        while (i >= 0 && cur[i] == radius)
            cur[i--] = -radius;
        if (i < 0)
            break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<long>& a, const std::vector<long>& b) {
                  long ga = 0, gb = 0;
                  for (long x : a)
                      ga += x < 0 ? -x : x;
                  for (long x : b)
                      gb += x < 0 ? -x : x;
                  if (ga != gb)
                      return ga < gb;
                  return a < b;
              });
    return out;
}

std::vector<VecZ> support_preserving_offsets(const Configuration& cfg, const VecQ& v,
                                             long box_radius, const Int& guard) {
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("support enumeration: v has the wrong length");
    const MatZ basis = kernel_basis(cfg);
    const auto target = negative_support(v);
    std::vector<VecZ> out;
    for (const auto& c : graded_tuples(static_cast<long>(basis.size()), box_radius, guard)) {
        VecZ l(cfg.count(), Int(0));
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (long i = 0; i < cfg.count(); ++i)
                l[i] += c[r] * basis[r][i];
        if (negative_support(shifted(v, l)) == target)
            out.push_back(std::move(l));
    }
    return out;
}

MinimalSupportResult minimal_support_check(const Configuration& cfg, const VecQ& v,
                                           long box_radius, const Int& guard) {
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("minimal support check: v has the wrong length");
    MinimalSupportResult res;
    const auto support = negative_support(v);
    if (support.empty())
        return res; // empty support cannot shrink
    const MatZ basis = kernel_basis(cfg);
    if (basis.empty())
        return res; // relation lattice is trivial
    const long k = static_cast<long>(basis.size());

    for (const auto& c : graded_tuples(k, box_radius, guard)) {
        VecZ l(cfg.count(), Int(0));
        for (long r = 0; r < k; ++r)
            for (long i = 0; i < cfg.count(); ++i)
                l[i] += c[r] * basis[r][i];
        const auto sup = negative_support(shifted(v, l));
        if (sup.size() < support.size() &&
            std::includes(support.begin(), support.end(), sup.begin(), sup.end())) {
            res.verdict = MinimalSupportResult::Verdict::not_minimal;
            res.witness = std::move(l);
            return res;
        }
    }

    if (static_cast<long>(support.size()) > kSubsetCap) {
        res.verdict = MinimalSupportResult::Verdict::minimal_within_bound;
        return res;
    }
    // For each proper subset S' of the support, the target "negative support
    // of v + l is contained in S'" relaxes to a linear system in the real
    // basis coefficients: kept coordinates stay <= -1, every other integer
    // coordinate stays >= 0.  Infeasibility of all subsets proves minimality.
    const unsigned long full = (1ul << support.size()) - 1;
    for (unsigned long mask = 0; mask < full; ++mask) {
        LpProblem prob(k);
        prob.free_var.assign(k, true);
        for (long i = 0; i < cfg.count(); ++i) {
            auto pos = std::find(support.begin(), support.end(), i);
            bool kept = pos != support.end() &&
                        (mask >> (pos - support.begin())) & 1ul;
            if (!kept && !is_integer(v[i]))
                continue;
            VecQ row(k);
            for (long r = 0; r < k; ++r)
                row[r] = Rat(basis[r][i]);
            if (kept)
                prob.constraint(std::move(row), -1, Rat(-1) - v[i]);
            else
                prob.constraint(std::move(row), 1, -v[i]);
        }
        if (lp_solve(prob).status == LpStatus::optimal) {
            res.verdict = MinimalSupportResult::Verdict::minimal_within_bound;
            return res;
        }
    }
    res.verdict = MinimalSupportResult::Verdict::minimal;
    return res;
}

} // namespace hypint
