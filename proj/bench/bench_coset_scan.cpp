// Wall-clock comparison of the coset scan at one thread (the serial
// reference) against the parallel run, on growing instances.  The two runs
// must return identical results bit for bit: minimum, minimizer, tie count,
// and explored node count.  Not a correctness test; run by hand when
// touching the scan.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hypint/geometry.hpp"
#include "hypint/lattice.hpp"
#include "hypint/rational.hpp"

using namespace hypint;

namespace {

const Int kBenchGuard = 100'000'000;

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

struct DirectCase {
    std::string name;
    Configuration cfg;
    VecQ witness;
    MatZ lattice;
};

// Unit cone in R^3 with the full integer lattice: the scan walks every
// integer shift of the witness inside the dilation sum(x) <= sum(witness),
// so the node count grows cubically with the cap.
DirectCase unit_cone_case(long cap) {
    DirectCase c;
    c.name = "unit cone, cap " + std::to_string(cap);
    c.cfg = Configuration::from_columns(
        {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}});
    Rat third(cap, 3);
    third.canonicalize();
    c.witness = {third + Rat(1, 2), third + Rat(1, 3), third + Rat(1, 5)};
    for (Rat& q : c.witness)
        q.canonicalize();
    c.lattice = {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}};
    return c;
}

struct DirectRun {
    CosetScanResult res;
    double ms = 0;
};

DirectRun run_direct(const DirectCase& c, int threads) {
    set_threads(threads);
    ConeDescription cone = cone_facets(c.cfg);
    FaceDescriptor face = smallest_face(cone, c.witness);
    const auto t0 = std::chrono::steady_clock::now();
    DirectRun r;
    r.res = coset_min_weight(c.cfg, cone, face, c.witness, c.lattice, kBenchGuard);
    r.ms = ms_since(t0);
    return r;
}

bool same(const CosetScanResult& a, const CosetScanResult& b) {
    return a.minimum == b.minimum && a.minimizer == b.minimizer &&
           a.minimizer_count == b.minimizer_count && a.nodes == b.nodes;
}

struct OrbitCase {
    std::string name;
    Configuration cfg;
    VecQ v;
    Int p;
};

struct OrbitRun {
    WeightBound bound;
    double ms = 0;
};

OrbitRun run_orbit(const OrbitCase& c, int threads) {
    set_threads(threads);
    const auto t0 = std::chrono::steady_clock::now();
    OrbitRun r;
    r.bound = orbit_lower_bound(c.cfg, c.v, c.p, kBenchGuard);
    r.ms = ms_since(t0);
    return r;
}

} // namespace

int main() {
    const int workers = max_threads();
    std::printf("coset scan, serial reference vs %d threads\n\n", workers);
    std::printf("%-28s %12s %12s %12s %8s\n", "case", "nodes", "serial ms",
                "parallel ms", "speedup");

    bool ok = true;
    for (long cap : {40L, 70L, 100L}) {
        DirectCase c = unit_cone_case(cap);
        DirectRun serial = run_direct(c, 1);
        DirectRun parallel = run_direct(c, workers);
        if (!same(serial.res, parallel.res)) {
            std::printf("MISMATCH on %s\n", c.name.c_str());
            ok = false;
            continue;
        }
        std::printf("%-28s %12lld %12.1f %12.1f %7.2fx\n", c.name.c_str(),
                    serial.res.nodes, serial.ms, parallel.ms,
                    serial.ms / parallel.ms);
    }

    OrbitCase oc;
    oc.name = "orbit bound, six columns";
    oc.cfg = Configuration::from_columns({{Int(0), Int(0), Int(1)},
                                          {Int(1), Int(0), Int(1)},
                                          {Int(0), Int(1), Int(1)},
                                          {Int(1), Int(1), Int(1)},
                                          {Int(2), Int(1), Int(1)},
                                          {Int(1), Int(2), Int(1)}});
    oc.v = {Rat(-1, 7), Rat(-2, 7), Rat(-3, 7), Rat(-4, 7), Rat(-5, 7), Rat(-6, 7)};
    for (Rat& q : oc.v)
        q.canonicalize();
    oc.p = 2;
    OrbitRun serial = run_orbit(oc, 1);
    OrbitRun parallel = run_orbit(oc, workers);
    if (serial.bound.bound != parallel.bound.bound ||
        serial.bound.per_mu_terms != parallel.bound.per_mu_terms ||
        serial.bound.e != parallel.bound.e) {
        std::printf("MISMATCH on %s\n", oc.name.c_str());
        ok = false;
    } else {
        std::printf("%-28s %12s %12.1f %12.1f %7.2fx\n", oc.name.c_str(), "-",
                    serial.ms, parallel.ms, serial.ms / parallel.ms);
    }

    if (!ok)
        return 1;
    std::printf("\nresults identical across thread counts\n");
    return 0;
}
