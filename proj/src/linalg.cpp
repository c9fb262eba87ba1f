#include "hypint/linalg.hpp"

#include "hypint/error.hpp"

namespace hypint {

Rat dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size())
        throw internal_error("dot: size mismatch");
    Rat sum;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

Int dot(const VecZ& a, const VecZ& b) {
    if (a.size() != b.size())
        throw internal_error("dot: size mismatch");
    Int sum;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

VecQ to_rational_vec(const VecZ& v) {
    VecQ out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rat(v[i]);
    return out;
}

MatQ to_rational_mat(const MatZ& m) {
    MatQ out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i] = to_rational_vec(m[i]);
    return out;
}

std::vector<long> rref(MatQ& m) {
    std::vector<long> pivots;
    if (m.empty())
        return pivots;
    const long rows = static_cast<long>(m.size());
    const long cols = static_cast<long>(m[0].size());
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long sel = -1;
        for (long i = r; i < rows; ++i) {
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0)
            continue;
        std::swap(m[r], m[sel]);
        Rat inv = 1 / m[r][c];
        for (long j = c; j < cols; ++j)
            m[r][j] *= inv;
        for (long i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c];
            for (long j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

long rank(MatQ m) {
    return static_cast<long>(rref(m).size());
}

std::optional<VecQ> solve_linear(const MatQ& m, const VecQ& rhs) {
    const long rows = static_cast<long>(m.size());
    if (rows != static_cast<long>(rhs.size()))
        throw internal_error("solve_linear: size mismatch");
    if (rows == 0)
        return VecQ{};
    const long cols = static_cast<long>(m[0].size());
    MatQ aug(rows, VecQ(cols + 1));
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j)
            aug[i][j] = m[i][j];
        aug[i][cols] = rhs[i];
    }
    std::vector<long> pivots = rref(aug);
    for (long c : pivots) {
        if (c == cols)
            return std::nullopt; // 0 = 1 row
    }
    VecQ x(cols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug[r][cols];
    return x;
}

MatQ nullspace(const MatQ& m) {
    if (m.empty())
        return {};
    const long cols = static_cast<long>(m[0].size());
    MatQ red = m;
    std::vector<long> pivots = rref(red);
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivots)
        is_pivot[c] = true;
    MatQ basis;
    for (long c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        VecQ x(cols);
        x[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = -red[r][c];
        basis.push_back(std::move(x));
    }
    return basis;
}

Rat det(MatQ m) {
    const long n = static_cast<long>(m.size());
    for (const VecQ& row : m) {
        if (static_cast<long>(row.size()) != n)
            throw internal_error("det: matrix not square");
    }
    Rat result = 1;
    for (long col = 0; col < n; ++col) {
        long pivot = -1;
        for (long r = col; r < n; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            result = -result;
        }
        result *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (long r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rat f = m[r][col] * inv;
            for (long c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return result;
}

VecZ primitive_vector(const VecQ& x) {
    Int den = 1;
    for (const Rat& q : x)
        den = lcm(den, Int(q.get_den()));
    VecZ out(x.size());
    Int content = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rat scaled = x[i] * Rat(den);
        out[i] = scaled.get_num();
        content = gcd(content, out[i]);
    }
    if (content == 0)
        return out;
    for (Int& z : out)
        z /= content;
    return out;
}

} // namespace hypint
