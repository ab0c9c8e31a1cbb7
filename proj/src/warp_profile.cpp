#include "warpcert/warp_profile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace warpcert {

void WarpProfile::validate(bool require_h, double closure_tol) const {
    const std::size_t n = grid.size();
    if (n < 3)
        throw DegenerateGrid("profile grid needs at least 3 points, got " +
                             std::to_string(n));
    for (std::size_t i = 1; i < n; ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DegenerateGrid("profile grid not strictly increasing at index " +
                                 std::to_string(i));
    auto check_len = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != n)
            throw DimensionMismatch(std::string(name) + " length " +
                                    std::to_string(v.size()) + " != grid length " +
                                    std::to_string(n));
    };
    check_len(f, "f");
    check_len(f1, "f1");
    check_len(f2, "f2");
    if (require_h || has_h()) {
        check_len(h, "h");
        check_len(h1, "h1");
        check_len(h2, "h2");
    }

    for (std::size_t i = 1; i + 1 < n; ++i)
        if (f[i] <= 0.0)
            throw NonPositiveWarping("f <= 0 at interior grid point t=" +
                                     std::to_string(grid[i]));

    if (left_end == LeftEnd::cap_closure) {
        if (std::abs(f1.front()) > closure_tol)
            throw NonPositiveWarping("cap closure requires f'(t0)=0, got " +
                                     std::to_string(f1.front()));
        if (has_h()) {
            if (std::abs(h.front()) > closure_tol)
                throw NonPositiveWarping("cap closure requires h(t0)=0, got " +
                                         std::to_string(h.front()));
            if (std::abs(h1.front() - 1.0) > closure_tol)
                throw NonPositiveWarping("cap closure requires h'(t0)=1, got " +
                                         std::to_string(h1.front()));
        }
    }
}

double ModelFiber::trace_ricci() const {
    double tr = 0.0;
    for (std::size_t i = 0; i < ricci_diag.size(); ++i)
        tr += ricci_diag[i] / metric_diag[i];
    return tr;
}

void ModelFiber::validate(double tol) const {
    if (dim < 1) throw DimensionMismatch("fiber dimension must be >= 1");
    if (ricci_diag.size() != static_cast<std::size_t>(dim) ||
        metric_diag.size() != static_cast<std::size_t>(dim))
        throw DimensionMismatch("fiber arrays must have length dim=" +
                                std::to_string(dim));
    for (double g : metric_diag)
        if (g <= 0.0)
            throw NonPositiveWarping("fiber metric coefficients must be positive");
    const double tr = trace_ricci();
    if (std::abs(tr - scal) > tol * std::max(1.0, std::abs(scal)))
        throw DimensionMismatch("fiber scal " + std::to_string(scal) +
                                " inconsistent with Ricci trace " + std::to_string(tr));
}

ModelFiber round_sphere_fiber(int m) {
    ModelFiber fb;
    fb.name = "S" + std::to_string(m);
    fb.dim = m;
    fb.ricci_diag.assign(static_cast<std::size_t>(m), static_cast<double>(m - 1));
    fb.metric_diag.assign(static_cast<std::size_t>(m), 1.0);
    fb.scal = static_cast<double>(m) * (m - 1);
    fb.validate();
    return fb;
}

ModelFiber einstein_product_fiber(const std::string& name,
                                  const std::vector<EinsteinFactor>& factors) {
    ModelFiber fb;
    fb.name = name;
    for (const auto& fac : factors) {
        fb.dim += fac.dim;
        for (int i = 0; i < fac.dim; ++i) {
            fb.ricci_diag.push_back(fac.ricci);
            fb.metric_diag.push_back(1.0);
        }
    }
    fb.scal = fb.trace_ricci();
    fb.validate();
    return fb;
}

void write_profile_csv(const std::string& path, const WarpProfile& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "t,f,f1,f2,h,h1,h2\n";
    char buf[512];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      p.grid[i], p.f[i], p.f1[i], p.f2[i],
                      p.has_h() ? p.h[i] : 0.0,
                      p.has_h() ? p.h1[i] : 0.0,
                      p.has_h() ? p.h2[i] : 0.0);
        out << buf;
    }
}

} // namespace warpcert
