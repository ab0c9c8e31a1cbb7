// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: curvature grid evaluation and the per-degree spectral
// solves. Also verifies that both paths agree bitwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "warpcert/geometry.hpp"
#include "warpcert/spectral.hpp"

using namespace warpcert;

namespace {

using clock_type = std::chrono::steady_clock;

double time_best_of(int reps, auto&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

WarpProfile big_round_profile(std::size_t points) {
    // f = sin, h = cos on a subinterval of (0, pi/2); everything analytic.
    WarpProfile p;
    const double a = 0.3, b = M_PI_2 - 0.3;
    p.grid.resize(points);
    p.f.resize(points);
    p.f1.resize(points);
    p.f2.resize(points);
    p.h.resize(points);
    p.h1.resize(points);
    p.h2.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / (points - 1);
        p.grid[i] = t;
        p.f[i] = std::sin(t);
        p.f1[i] = std::cos(t);
        p.f2[i] = -std::sin(t);
        p.h[i] = std::cos(t);
        p.h1[i] = -std::sin(t);
        p.h2[i] = -std::cos(t);
    }
    return p;
}

bool reports_equal(const CurvatureReport& a, const CurvatureReport& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (a.points[i].ric_tt != b.points[i].ric_tt) return false;
        if (a.points[i].ric_circle != b.points[i].ric_circle) return false;
        if (a.points[i].ric_sphere != b.points[i].ric_sphere) return false;
        if (a.points[i].scal_hyp != b.points[i].scal_hyp) return false;
    }
    return a.min_ric == b.min_ric && a.min_scal_hyp == b.min_scal_hyp;
}

bool spectra_equal(const SpectrumResult& a, const SpectrumResult& b) {
    if (a.modes.size() != b.modes.size()) return false;
    for (std::size_t i = 0; i < a.modes.size(); ++i)
        if (a.modes[i].eigenvalue != b.modes[i].eigenvalue ||
            a.modes[i].k != b.modes[i].k)
            return false;
    return true;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-28s %12s %12s %9s %7s\n", "kernel", "serial [ms]", "parallel [ms]",
                "speedup", "match");

    {
        const WarpProfile p = big_round_profile(4'000'000);
        CurvatureReport serial_rep, parallel_rep;
        const double ts =
            time_best_of(3, [&] { serial_rep = ricci_doubly_warped_serial(p, 4); });
        const double tp = time_best_of(3, [&] { parallel_rep = ricci_doubly_warped(p, 4); });
        std::printf("%-28s %12.2f %12.2f %8.2fx %7s\n", "curvature grid (4M pts)",
                    ts * 1e3, tp * 1e3, ts / tp,
                    reports_equal(serial_rep, parallel_rep) ? "yes" : "NO");
    }

    {
        const std::size_t cells = 40'000;
        std::vector<double> f(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            const double t = -M_PI_2 + M_PI * (i + 0.5) / cells;
            f[i] = std::cos(t) + 1e-3;
        }
        SpectrumResult serial_spec, parallel_spec;
        const double ts = time_best_of(3, [&] {
            serial_spec =
                warped_interval_spectrum_serial(f, M_PI_2, 2, Bc::neumann, 8, 12);
        });
        const double tp = time_best_of(3, [&] {
            parallel_spec = warped_interval_spectrum(f, M_PI_2, 2, Bc::neumann, 8, 12);
        });
        std::printf("%-28s %12.2f %12.2f %8.2fx %7s\n", "spectrum (9 degrees, 40k)",
                    ts * 1e3, tp * 1e3, ts / tp,
                    spectra_equal(serial_spec, parallel_spec) ? "yes" : "NO");
    }
    return 0;
}
