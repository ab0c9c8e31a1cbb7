#include "warpcert/glue.hpp"

#include <algorithm>
#include <cmath>

#include "warpcert/geometry.hpp"
#include "warpcert/ode.hpp"

namespace warpcert {

namespace {

// Smoothstep s with s' proportional to u^q (1-u)^q: the first q derivatives
// vanish at both ends of [0,1]. Evaluated from the expanded polynomial of
// the incomplete beta integral.
struct Smoothstep {
    int q;
    double inv_beta;               // 1 / B(q+1, q+1)
    std::vector<double> coeff;     // s(u) = u^{q+1} * sum_j coeff[j] u^j

    explicit Smoothstep(int q_) : q(q_) {
        double beta = 1.0;
        for (int i = 1; i <= q; ++i) beta *= static_cast<double>(i) / (q + i);
        beta /= (2.0 * q + 1.0);
        inv_beta = 1.0 / beta;

        coeff.resize(static_cast<std::size_t>(q) + 1);
        double binom = 1.0;
        for (int j = 0; j <= q; ++j) {
            if (j > 0) binom *= static_cast<double>(q - j + 1) / j;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            coeff[static_cast<std::size_t>(j)] = sign * binom / (q + j + 1) * inv_beta;
        }
    }

    double value(double u) const {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        double acc = 0.0;
        for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * u + coeff[j];
        return acc * std::pow(u, q + 1);
    }

    double bump(double u) const {   // u^q (1-u)^q, the (unnormalized) s'
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return std::pow(u * (1.0 - u), q);
    }
};

struct CapEval {
    double scale, shift;
    double value(double t) const { return scale * std::sin((t - shift) / scale); }
    double slope(double t) const { return std::cos((t - shift) / scale); }
    double curv(double t) const { return -std::sin((t - shift) / scale) / scale; }
};

// Pointwise pieces of the blended profile inside the window.
struct WindowFormulas {
    const GlueSpec& spec;
    Smoothstep step;
    CapEval cap;
    double a, width;   // left seam, full width

    explicit WindowFormulas(const GlueSpec& s)
        : spec(s), step(s.flat_order + 1), cap{s.cap_scale, s.cap_shift},
          a(s.left_seam()), width(2.0 * s.window) {}

    double u_of(double t) const { return (t - a) / width; }

    double f2_blend(double t, double fsy, double c1, double c2) const {
        const double u = u_of(t);
        const double s = step.value(u);
        const double b1 = step.bump(u) * step.inv_beta / width;
        const double al2 = spec.params.alpha_lambda_sq();
        const double fsy2 = 0.5 * al2 * std::pow(fsy, -spec.params.alpha - 1.0);
        return (1.0 - s) * fsy2 + s * cap.curv(t) + c1 * b1 + c2 * b1 * (1.0 - 2.0 * u);
    }

    double h1_blend(double t, double fsy) const {
        const double s = step.value(u_of(t));
        return (1.0 - s) * std::pow(fsy, -spec.params.alpha - 1.0);
    }

    double h2_blend(double t, double fsy, double fsy1) const {
        const double u = u_of(t);
        const double s = step.value(u);
        const double b1 = step.bump(u) * step.inv_beta / width;
        const double alpha = spec.params.alpha;
        const double h2sy = -(alpha + 1.0) * std::pow(fsy, -alpha - 2.0) * fsy1;
        const double h1sy = std::pow(fsy, -alpha - 1.0);
        return (1.0 - s) * h2sy - b1 * h1sy;
    }
};

// State over the window: (fsy, fsy', F, F', H) where fsy is the unmodified
// source solution, F the blended f, H the blended h.
using WinState = std::array<double, 5>;

void integrate_window(const GlueSpec& spec, double c1, double c2,
                      const WinState& init, std::span<const double> samples,
                      auto&& visit) {
    WindowFormulas wf(spec);
    const double al2 = spec.params.alpha_lambda_sq();
    const double alpha = spec.params.alpha;
    auto rhs = [&](double t, const WinState& y, WinState& dy) {
        dy[0] = y[1];
        dy[1] = 0.5 * al2 * std::pow(y[0], -alpha - 1.0);
        dy[2] = y[3];
        dy[3] = wf.f2_blend(t, y[0], c1, c2);
        dy[4] = wf.h1_blend(t, y[0]);
    };
    OdeOptions opt{spec.params.tol, spec.params.tol};
    integrate_to_samples<5>(rhs, wf.a, init, samples, opt, visit);
}

WinState window_init_from(const WarpProfile& src, std::size_t ia) {
    return {src.f[ia], src.f1[ia], src.f[ia], src.f1[ia], src.h[ia]};
}

GlueResult blend_once(const WarpProfile& source, const ConstructionParams& params,
                      double t1, std::size_t i1, std::size_t cells, int flat_order) {
    const std::size_t ia = i1 - cells;
    const std::size_t ib = i1 + cells;
    const double dt = source.grid[1] - source.grid[0];

    GlueSpec spec;
    spec.params = params;
    spec.t1 = t1;
    spec.window = static_cast<double>(cells) * dt;
    spec.flat_order = flat_order;
    const CapFit fit = fit_cap(source, t1);
    spec.cap_scale = fit.cap_scale;
    spec.cap_shift = fit.cap_shift;

    const double a = source.grid[ia];
    const double b = source.grid[ib];
    const double width = b - a;
    CapEval cap{spec.cap_scale, spec.cap_shift};

    // First pass without corrections measures the seam mismatch; the bump
    // moments are closed-form, so the correction solve is exact.
    WinState at_b{};
    integrate_window(spec, 0.0, 0.0, window_init_from(source, ia),
                     std::array<double, 1>{b},
                     [&](double, const WinState& y) { at_b = y; });
    const double dslope = cap.slope(b) - at_b[3];
    const double dvalue = cap.value(b) - at_b[2];
    const int q = flat_order + 1;
    spec.c1 = dslope;
    spec.c2 = (dvalue - spec.c1 * width / 2.0) * 2.0 * (2.0 * q + 3.0) / width;

    GlueResult out;
    out.spec = spec;
    WarpProfile& prof = out.profile;
    prof = source;   // bitwise copy; [0, ia] stays untouched

    // Second pass fills the open window (ia, ib).
    if (cells >= 1) {
        std::vector<double> inner(source.grid.begin() + static_cast<long>(ia) + 1,
                                  source.grid.begin() + static_cast<long>(ib));
        inner.push_back(b);   // terminal state for the seam residual
        WindowFormulas wf(out.spec);
        std::size_t at = ia + 1;
        integrate_window(out.spec, spec.c1, spec.c2, window_init_from(source, ia), inner,
                         [&](double t, const WinState& y) {
                             if (t >= b - 1e-15 * std::max(1.0, b)) {
                                 out.spec.seam_value_err = std::abs(y[2] - cap.value(b));
                                 out.spec.seam_slope_err = std::abs(y[3] - cap.slope(b));
                                 out.spec.r1_pre = y[4];
                                 return;
                             }
                             prof.f[at] = y[2];
                             prof.f1[at] = y[3];
                             prof.f2[at] = wf.f2_blend(t, y[0], spec.c1, spec.c2);
                             prof.h[at] = y[4];
                             prof.h1[at] = wf.h1_blend(t, y[0]);
                             prof.h2[at] = wf.h2_blend(t, y[0], y[1]);
                             ++at;
                         });
    }

    // Past the right seam: exact cap, exact constant h.
    for (std::size_t i = ib; i < source.size(); ++i) {
        const double t = source.grid[i];
        prof.f[i] = cap.value(t);
        prof.f1[i] = cap.slope(t);
        prof.f2[i] = cap.curv(t);
        prof.h[i] = out.spec.r1_pre;
        prof.h1[i] = 0.0;
        prof.h2[i] = 0.0;
    }
    return out;
}

} // namespace

double find_matching_time(const WarpProfile& p, const ConstructionParams& params,
                          double delta) {
    if (delta <= 0.0) throw Error("matching-time slack delta must be positive");
    const double threshold = std::cos(params.r2) + delta;
    double sup = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sup = std::max(sup, p.f1[i]);
        if (p.f1[i] >= threshold) return p.grid[i];
    }
    throw HorizonTooShort("f' reaches " + std::to_string(sup) + " < cos(r2)+delta = " +
                          std::to_string(threshold) + "; increase T or reduce delta",
                          sup);
}

CapFit fit_cap(const WarpProfile& p, double t1) {
    // t1 must be a grid point (find_matching_time returns one).
    std::size_t i1 = p.size();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (std::abs(p.grid[i] - t1) <= 1e-12 * std::max(1.0, std::abs(t1))) {
            i1 = i;
            break;
        }
    if (i1 == p.size()) throw Error("t1 is not a grid point of the profile");

    const double fv = p.f[i1];
    const double sl = p.f1[i1];
    if (!(sl > 0.0 && sl < 1.0))
        throw SlopeOutOfRange("cap fit needs f'(t1) in (0,1), got " + std::to_string(sl));

    CapFit fit;
    fit.cap_scale = fv / std::sqrt(1.0 - sl * sl);
    fit.cap_shift = t1 - fit.cap_scale * std::acos(sl);

    CapEval cap{fit.cap_scale, fit.cap_shift};
    if (std::abs(cap.value(t1) - fv) > 1e-11 * std::max(1.0, fv) ||
        std::abs(cap.slope(t1) - sl) > 1e-11)
        throw Error("cap fit failed to reproduce value/slope at t1");
    return fit;
}

GlueResult blend_profiles(const WarpProfile& source, const ConstructionParams& params,
                          double t1, double window, int flat_order,
                          double positivity_margin, int retry_budget) {
    source.validate(true);
    if (flat_order < 4) throw Error("flat_order must be >= 4");
    if (!(window > 0.0 && window < t1))
        throw Error("window must lie in (0, t1)");

    const double dt = source.grid[1] - source.grid[0];
    std::size_t i1 = source.size();
    for (std::size_t i = 0; i < source.size(); ++i)
        if (std::abs(source.grid[i] - t1) <= 1e-12 * std::max(1.0, t1)) {
            i1 = i;
            break;
        }
    if (i1 == source.size()) throw Error("t1 is not a grid point of the profile");

    auto cells_of = [&](double w) {
        return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(w / dt - 1e-9)));
    };

    std::size_t cells = cells_of(window);
    if (i1 + cells >= source.size())
        throw Error("blending window extends past the integration horizon");
    if (cells >= i1) throw Error("window must lie in (0, t1)");

    double last_min = 0.0;
    for (int attempt = 0; attempt <= retry_budget; ++attempt) {
        GlueResult res = blend_once(source, params, t1, i1, cells, flat_order);

        // Positivity over [0, t1+window): past the seam the circle component
        // is identically zero (h is exactly constant), matching the ambient
        // product region, so strict positivity is only promised before it.
        const CurvatureReport rep = ricci_doubly_warped(res.profile, params.n);
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < res.profile.size() && i < i1 + cells; ++i) {
            const auto& c = rep.points[i];
            mn = std::min({mn, c.ric_tt, c.ric_circle, c.ric_sphere});
        }
        last_min = mn;
        if (mn > positivity_margin) return res;
        if (cells <= 2) break;
        cells = std::max<std::size_t>(2, cells / 2);
    }
    throw PositivityLost("blended profile lost Ricci positivity (min " +
                         std::to_string(last_min) + ") after retries", last_min);
}

ProfileSamples sample_glued(const GlueSpec& spec, std::span<const double> taus) {
    const double N = spec.cap_scale;
    const double tshift = spec.cap_shift;
    const double a = spec.left_seam();
    const double b = spec.right_seam();
    const double alpha = spec.params.alpha;
    const double al2 = spec.params.alpha_lambda_sq();

    ProfileSamples out;
    const std::size_t count = taus.size();
    out.f.resize(count);
    out.f1.resize(count);
    out.f2.resize(count);
    out.h.resize(count);
    out.h1.resize(count);
    out.h2.resize(count);

    std::vector<double> ts(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0 && !(taus[i] > taus[i - 1]))
            throw Error("sample_glued needs strictly ascending tau values");
        ts[i] = N * taus[i] + tshift;
        if (ts[i] < -1e-12) throw Error("tau below the closure end");
        if (std::abs(ts[i]) < 1e-12) ts[i] = 0.0;   // closure end up to roundoff
    }

    const double c = 2.0 / al2;
    auto store_sy = [&](std::size_t i, double fv, double f1v) {
        const double f2v = 0.5 * al2 * std::pow(fv, -alpha - 1.0);
        out.f[i] = fv / N;
        out.f1[i] = f1v;
        out.f2[i] = N * f2v;
        out.h[i] = c * f1v / N;
        out.h1[i] = c * f2v;
        out.h2[i] = N * (-(alpha + 1.0) * std::pow(fv, -alpha - 2.0) * f1v);
    };

    // Region split: t <= a source ODE, a < t < b blended window, t >= b cap.
    std::size_t n_sy = 0, n_win = 0;
    while (n_sy < count && ts[n_sy] <= a + 1e-14) ++n_sy;
    n_win = n_sy;
    while (n_win < count && ts[n_win] < b - 1e-14) ++n_win;

    OdeOptions opt{spec.params.tol, spec.params.tol};
    const bool need_window = n_win > n_sy;

    std::vector<double> sy_samples(ts.begin(), ts.begin() + static_cast<long>(n_sy));
    if (need_window || n_sy > 0) {
        if (need_window) sy_samples.push_back(a);   // window initial state
        WinState at_a{};
        std::size_t at = 0;
        auto rhs = [&](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
            dy[0] = y[1];
            dy[1] = 0.5 * al2 * std::pow(y[0], -alpha - 1.0);
        };
        integrate_to_samples<2>(rhs, 0.0, {1.0, 0.0}, sy_samples, opt,
                                [&](double, const std::array<double, 2>& y) {
                                    if (at < n_sy) store_sy(at, y[0], y[1]);
                                    at_a = {y[0], y[1], y[0], y[1], c * y[1]};
                                    ++at;
                                });
        if (need_window) {
            WindowFormulas wf(spec);
            std::vector<double> win_samples(ts.begin() + static_cast<long>(n_sy),
                                            ts.begin() + static_cast<long>(n_win));
            std::size_t wi = n_sy;
            integrate_window(spec, spec.c1, spec.c2, at_a, win_samples,
                             [&](double t, const WinState& y) {
                                 out.f[wi] = y[2] / N;
                                 out.f1[wi] = y[3];
                                 out.f2[wi] = N * wf.f2_blend(t, y[0], spec.c1, spec.c2);
                                 out.h[wi] = y[4] / N;
                                 out.h1[wi] = wf.h1_blend(t, y[0]);
                                 out.h2[wi] = N * wf.h2_blend(t, y[0], y[1]);
                                 ++wi;
                             });
        }
    }

    for (std::size_t i = n_win; i < count; ++i) {
        // Cap region in rescaled coordinates: exactly the unit cap.
        out.f[i] = std::sin(taus[i]);
        out.f1[i] = std::cos(taus[i]);
        out.f2[i] = -std::sin(taus[i]);
        out.h[i] = spec.r1_pre / N;
        out.h1[i] = 0.0;
        out.h2[i] = 0.0;
    }
    return out;
}

FinalProfile rescale_and_shift(const GlueResult& glued, const ConstructionParams& params,
                               int grid_points, double cap_margin) {
    if (grid_points < 3) throw DegenerateGrid("final grid needs at least 3 points");
    const GlueSpec& spec = glued.spec;
    const double N = spec.cap_scale;

    FinalProfile fin;
    fin.spec = spec;
    fin.tau0 = -spec.cap_shift / N;
    fin.tau1 = (spec.t1 - spec.cap_shift) / N;
    fin.tau_seam = (spec.right_seam() - spec.cap_shift) / N;
    fin.cap_coverage = params.r2 - fin.tau_seam;
    fin.r1_realized = spec.r1_pre / N;
    if (fin.cap_coverage <= cap_margin)
        throw CapTooShort("cap covers only " + std::to_string(fin.cap_coverage) +
                          " below r2 (required margin " + std::to_string(cap_margin) + ")");

    WarpProfile& prof = fin.profile;
    prof.left_end = LeftEnd::cap_closure;
    prof.right_end = RightEnd::sphere_match;
    const std::size_t count = static_cast<std::size_t>(grid_points);
    prof.grid.resize(count);
    const double dtau = (params.r2 - fin.tau0) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        prof.grid[i] = fin.tau0 + static_cast<double>(i) * dtau;
    prof.grid.back() = params.r2;

    ProfileSamples s = sample_glued(spec, prof.grid);
    prof.f = std::move(s.f);
    prof.f1 = std::move(s.f1);
    prof.f2 = std::move(s.f2);
    prof.h = std::move(s.h);
    prof.h1 = std::move(s.h1);
    prof.h2 = std::move(s.h2);
    prof.validate(true, 1e-8);
    return fin;
}

double BoundaryResiduals::max_residual() const {
    return std::max({h_end_minus_r1, h_end_derivatives, f_cap_deviation,
                     f_slope_left, h_value_left, h_slope_left_minus_1, h_curv_left});
}

BoundaryResiduals verify_boundary_conditions(const FinalProfile& fin,
                                             const ConstructionParams& params) {
    (void)params;
    const WarpProfile& p = fin.profile;
    const std::size_t n = p.size();
    BoundaryResiduals r;

    r.h_end_minus_r1 = std::abs(p.h.back() - fin.r1_realized);
    // Derivatives of h at the outer end: first and second are stored; third
    // and fourth are one-sided differences of the stored h''.
    const double dtau = p.grid[n - 1] - p.grid[n - 2];
    const double d3 = (p.h2[n - 1] - p.h2[n - 2]) / dtau;
    const double d4 = (p.h2[n - 1] - 2.0 * p.h2[n - 2] + p.h2[n - 3]) / (dtau * dtau);
    r.h_end_derivatives = std::max({std::abs(p.h1.back()), std::abs(p.h2.back()),
                                    std::abs(d3), std::abs(d4)});

    for (std::size_t i = 0; i < n; ++i)
        if (p.grid[i] >= fin.tau_seam - 1e-14)
            r.f_cap_deviation = std::max(r.f_cap_deviation,
                                         std::abs(p.f[i] - std::sin(p.grid[i])));
    // The stored cap region is analytic; the real deviation from the unit
    // cap is the measured mismatch where the blend hands over to it.
    r.f_cap_deviation = std::max({r.f_cap_deviation,
                                  fin.spec.seam_value_err / fin.spec.cap_scale,
                                  fin.spec.seam_slope_err});

    r.f_slope_left = std::abs(p.f1.front());
    r.h_value_left = std::abs(p.h.front());
    r.h_slope_left_minus_1 = std::abs(p.h1.front() - 1.0);
    r.h_curv_left = std::abs(p.h2.front());
    return r;
}

} // namespace warpcert
