#include "warpcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace warpcert {

namespace {

constexpr double kVanishTol = 1e-13;

inline bool evaluable(const WarpProfile& p, std::size_t i) {
    return p.f[i] > kVanishTol && std::abs(p.h[i]) > kVanishTol;
}

inline CurvaturePoint curvature_at(const WarpProfile& p, int n, std::size_t i) {
    const double f = p.f[i], f1 = p.f1[i], f2 = p.f2[i];
    const double h = p.h[i], h1 = p.h1[i], h2 = p.h2[i];
    const double m = static_cast<double>(n - 1);

    CurvaturePoint c;
    c.t = p.grid[i];
    const double cross = (h1 * f1) / (h * f);
    c.ric_tt = -h2 / h - m * f2 / f;
    c.ric_circle = -h2 / h - m * cross;
    c.ric_sphere = -f2 / f - cross + (n - 2) * (1.0 - f1 * f1) / (f * f);
    c.scal_hyp = -2.0 * m * f2 / f + m * (n - 2) * (1.0 - f1 * f1) / (f * f);
    return c;
}

// Quadratic (Lagrange) extrapolation of each curvature channel from three
// evaluated points to t0. The smooth-closure conditions guarantee finite
// limits, so this recovers them to O(dx^3).
CurvaturePoint extrapolate_endpoint(const std::vector<CurvaturePoint>& pts,
                                    std::size_t i0, std::size_t i1, std::size_t i2,
                                    double t0) {
    const double x0 = pts[i0].t, x1 = pts[i1].t, x2 = pts[i2].t;
    const double l0 = (t0 - x1) * (t0 - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (t0 - x0) * (t0 - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (t0 - x0) * (t0 - x1) / ((x2 - x0) * (x2 - x1));
    CurvaturePoint c;
    c.t = t0;
    c.ric_tt = l0 * pts[i0].ric_tt + l1 * pts[i1].ric_tt + l2 * pts[i2].ric_tt;
    c.ric_circle = l0 * pts[i0].ric_circle + l1 * pts[i1].ric_circle + l2 * pts[i2].ric_circle;
    c.ric_sphere = l0 * pts[i0].ric_sphere + l1 * pts[i1].ric_sphere + l2 * pts[i2].ric_sphere;
    c.scal_hyp = l0 * pts[i0].scal_hyp + l1 * pts[i1].scal_hyp + l2 * pts[i2].scal_hyp;
    c.extrapolated = true;
    return c;
}

template <bool Parallel>
CurvatureReport ricci_doubly_warped_impl(const WarpProfile& p, int n) {
    if (n < 3) throw DimensionMismatch("ricci_doubly_warped requires n >= 3");
    p.validate(true);

    const std::size_t len = p.size();
    for (std::size_t i = 1; i + 1 < len; ++i)
        if (p.f[i] <= 0.0)
            throw NonPositiveWarping("f <= 0 at interior point t=" +
                                     std::to_string(p.grid[i]));

    CurvatureReport rep;
    rep.n = n;
    rep.points.resize(len);

    std::vector<char> direct(len, 0);
    for (std::size_t i = 0; i < len; ++i) direct[i] = evaluable(p, i) ? 1 : 0;

    const long count = static_cast<long>(len);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) {
            const auto u = static_cast<std::size_t>(i);
            if (direct[u]) rep.points[u] = curvature_at(p, n, u);
        }
    } else {
        for (long i = 0; i < count; ++i) {
            const auto u = static_cast<std::size_t>(i);
            if (direct[u]) rep.points[u] = curvature_at(p, n, u);
        }
    }

    // Endpoint limits where a warping function vanishes.
    for (std::size_t i = 0; i < len; ++i) {
        if (direct[i]) continue;
        if (i != 0 && i + 1 != len)
            throw NonPositiveWarping("vanishing warping function at interior t=" +
                                     std::to_string(p.grid[i]));
        if (i == 0) {
            if (len < 4 || !direct[1] || !direct[2] || !direct[3])
                throw GridTooCoarse("not enough interior points to extrapolate left endpoint");
            rep.points[0] = extrapolate_endpoint(rep.points, 1, 2, 3, p.grid[0]);
        } else {
            if (len < 4 || !direct[len - 2] || !direct[len - 3] || !direct[len - 4])
                throw GridTooCoarse("not enough interior points to extrapolate right endpoint");
            rep.points[len - 1] =
                extrapolate_endpoint(rep.points, len - 2, len - 3, len - 4, p.grid[len - 1]);
        }
    }

    double mn = std::numeric_limits<double>::infinity();
    double mns = std::numeric_limits<double>::infinity();
    for (const auto& c : rep.points) {
        mn = std::min({mn, c.ric_tt, c.ric_circle, c.ric_sphere});
        mns = std::min(mns, c.scal_hyp);
    }
    rep.min_ric = mn;
    rep.min_scal_hyp = mns;
    return rep;
}

} // namespace

bool CurvatureReport::consistent(double tol) const {
    double mn = std::numeric_limits<double>::infinity();
    double mns = std::numeric_limits<double>::infinity();
    for (const auto& c : points) {
        mn = std::min({mn, c.ric_tt, c.ric_circle, c.ric_sphere});
        mns = std::min(mns, c.scal_hyp);
    }
    return std::abs(mn - min_ric) <= tol && std::abs(mns - min_scal_hyp) <= tol;
}

CurvatureReport ricci_doubly_warped(const WarpProfile& p, int n) {
    return ricci_doubly_warped_impl<true>(p, n);
}

CurvatureReport ricci_doubly_warped_serial(const WarpProfile& p, int n) {
    return ricci_doubly_warped_impl<false>(p, n);
}

std::vector<std::pair<double, double>> scal_warped_hypersurface(const WarpProfile& p, int n) {
    p.validate(false);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.f[i] <= 0.0)
            throw NonPositiveWarping("f <= 0 at t=" + std::to_string(p.grid[i]));

    const double m = static_cast<double>(n - 1);
    std::vector<std::pair<double, double>> out(p.size());
    const long count = static_cast<long>(p.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double f = p.f[u], f1 = p.f1[u], f2 = p.f2[u];
        out[u] = {p.grid[u],
                  -2.0 * m * f2 / f + m * (n - 2) * (1.0 - f1 * f1) / (f * f)};
    }
    return out;
}

double ambient_scalar_doubly_warped(double f, double f1, double f2,
                                    double h, double h1, double h2, int n) {
    const double m = static_cast<double>(n - 1);
    return -2.0 * h2 / h - 2.0 * m * f2 / f - 2.0 * m * (h1 * f1) / (h * f) +
           m * (n - 2) * (1.0 - f1 * f1) / (f * f);
}

double scalar_bound_residual(const WarpProfile& p, int n, double alpha, double lambda0) {
    const auto scal = scal_warped_hypersurface(p, n);
    const double m = static_cast<double>(n - 1);
    const double coef = (n - 2) - alpha * lambda0 * lambda0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scal.size(); ++i) {
        const double bound = m * std::pow(p.f[i], -alpha - 2.0) * coef;
        worst = std::min(worst, scal[i].second - bound);
    }
    return worst;
}

NormalSliceRicci ricci_normal_slice(const ModelFiber& fiber, std::span<const double> g2) {
    fiber.validate();
    if (g2.size() != fiber.ricci_diag.size())
        throw DimensionMismatch("g2 length " + std::to_string(g2.size()) +
                                " != fiber dim " + std::to_string(fiber.dim));
    NormalSliceRicci out;
    double tr = 0.0;
    out.ric_fiber.resize(g2.size());
    for (std::size_t i = 0; i < g2.size(); ++i) {
        tr += g2[i] / fiber.metric_diag[i];
        out.ric_fiber[i] = fiber.ricci_diag[i] - 0.5 * g2[i];
    }
    out.ric_tt = -0.5 * tr;
    return out;
}

SecondFundamentalForm second_fundamental_form(std::span<const double> ts,
                                              const std::vector<std::vector<double>>& g_diag,
                                              double t_star) {
    if (ts.size() != g_diag.size())
        throw DimensionMismatch("metric family and t-grid lengths differ");
    if (ts.size() < 3)
        throw GridTooCoarse("need at least 3 samples to bracket t_star");

    std::size_t idx = ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(ts[i] - t_star) <= 1e-12 * std::max(1.0, std::abs(t_star))) {
            idx = i;
            break;
        }
    if (idx == ts.size())
        throw GridTooCoarse("t_star is not a sample point");
    if (idx == 0 || idx + 1 == ts.size())
        throw GridTooCoarse("t_star must be interior to the sample grid");

    const double hm = ts[idx] - ts[idx - 1];
    const double hp = ts[idx + 1] - ts[idx];
    const auto& gm = g_diag[idx - 1];
    const auto& g0 = g_diag[idx];
    const auto& gp = g_diag[idx + 1];
    if (gm.size() != g0.size() || gp.size() != g0.size())
        throw DimensionMismatch("inconsistent metric diagonal lengths");

    SecondFundamentalForm out;
    out.entries.resize(g0.size());
    out.residual = 0.0;
    for (std::size_t i = 0; i < g0.size(); ++i) {
        // 3-point derivative, exact for quadratics on nonuniform spacing.
        const double d = (hm * hm * gp[i] - hp * hp * gm[i] +
                          (hp * hp - hm * hm) * g0[i]) /
                         (hm * hp * (hm + hp));
        out.entries[i] = -0.5 * d;
        out.residual = std::max(out.residual, std::abs(out.entries[i]));
    }
    return out;
}

void write_curvature_csv(const std::string& path, const CurvatureReport& r) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "t,ric_tt,ric_circle,ric_sphere,scal_hyp\n";
    char buf[512];
    for (const auto& c : r.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      c.t, c.ric_tt, c.ric_circle, c.ric_sphere, c.scal_hyp);
        out << buf;
    }
}

} // namespace warpcert
