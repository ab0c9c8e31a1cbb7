#include "warpcert/warp_ode.hpp"

#include <cmath>

#include "warpcert/ode.hpp"

namespace warpcert {

std::vector<std::string> validate_params(const ConstructionParams& p) {
    std::vector<std::string> bad;
    if (p.n < 3)
        bad.push_back("n must be >= 3, got " + std::to_string(p.n));
    if (!(p.r2 > 0.0 && p.r2 < M_PI_2))
        bad.push_back("r2 must lie in (0, pi/2), got " + std::to_string(p.r2));
    if (!(p.r1 > 0.0))
        bad.push_back("r1 must be positive, got " + std::to_string(p.r1));
    if (p.n >= 3 && p.r2 > 0.0 && p.r2 < M_PI_2) {
        const double lo = std::cos(p.r2);
        if (!(p.lambda0 > lo && p.lambda0 < 1.0))
            bad.push_back("lambda0 must lie in (cos(r2), 1) = (" + std::to_string(lo) +
                          ", 1), got " + std::to_string(p.lambda0));
        if (p.lambda0 > 0.0 && p.lambda0 < 1.0) {
            const double a_lo = static_cast<double>(p.n - 2);
            const double a_hi = a_lo / (p.lambda0 * p.lambda0);
            if (!(p.alpha > a_lo && p.alpha < a_hi))
                bad.push_back("alpha must lie in (n-2, (n-2)/lambda0^2) = (" +
                              std::to_string(a_lo) + ", " + std::to_string(a_hi) +
                              "), got " + std::to_string(p.alpha));
            // Certified independently of the window above.
            if (!(p.alpha_lambda_sq() < static_cast<double>(p.n - 2)))
                bad.push_back("alpha*lambda0^2 must be < n-2, got " +
                              std::to_string(p.alpha_lambda_sq()));
        }
    }
    if (!(p.eps > 0.0))
        bad.push_back("eps must be positive, got " + std::to_string(p.eps));
    if (!(p.T > 0.0))
        bad.push_back("T must be positive, got " + std::to_string(p.T));
    if (!(p.tol > 0.0 && p.tol < 1e-2))
        bad.push_back("tol must lie in (0, 1e-2), got " + std::to_string(p.tol));
    if (p.grid_points < 3)
        bad.push_back("grid_points must be >= 3, got " + std::to_string(p.grid_points));
    return bad;
}

WarpProfile solve_sha_yang(const ConstructionParams& p) {
    const auto bad = validate_params(p);
    if (!bad.empty()) throw Error("invalid construction parameters: " + bad.front());

    const double al2 = p.alpha_lambda_sq();
    const std::size_t count = static_cast<std::size_t>(p.grid_points);

    WarpProfile prof;
    prof.left_end = LeftEnd::cap_closure;
    prof.grid.resize(count);
    prof.f.resize(count);
    prof.f1.resize(count);
    prof.f2.resize(count);
    const double dt = p.T / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        prof.grid[i] = static_cast<double>(i) * dt;
    prof.grid.back() = p.T;

    auto rhs = [&](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = 0.5 * al2 * std::pow(y[0], -p.alpha - 1.0);
    };

    std::size_t at = 0;
    OdeOptions opt{p.tol, p.tol};
    integrate_to_samples<2>(rhs, 0.0, {1.0, 0.0}, prof.grid, opt,
                            [&](double, const std::array<double, 2>& y) {
                                prof.f[at] = y[0];
                                prof.f1[at] = y[1];
                                prof.f2[at] = 0.5 * al2 * std::pow(y[0], -p.alpha - 1.0);
                                ++at;
                            });
    return prof;
}

void derive_h(WarpProfile& p, const ConstructionParams& params) {
    if (p.f.empty() || p.f1.empty() || p.f2.empty())
        throw MissingF("derive_h requires a populated f-profile");
    const double c = 2.0 / params.alpha_lambda_sq();
    const std::size_t count = p.size();
    p.h.resize(count);
    p.h1.resize(count);
    p.h2.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        p.h[i] = c * p.f1[i];
        p.h1[i] = c * p.f2[i];
        // From differentiating the ODE: f''' = -(alpha(alpha+1) lambda0^2 / 2) f^{-alpha-2} f'.
        p.h2[i] = -(params.alpha + 1.0) *
                  std::pow(p.f[i], -params.alpha - 2.0) * p.f1[i];
    }
}

WarpProfile solve_profile(const ConstructionParams& p) {
    WarpProfile prof = solve_sha_yang(p);
    derive_h(prof, p);
    return prof;
}

double first_integral_residual(const WarpProfile& p, const ConstructionParams& params) {
    if (p.f.empty() || p.f1.empty())
        throw MissingF("first_integral_residual requires a populated f-profile");
    const double l2 = params.lambda0 * params.lambda0;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p.f1[i] * p.f1[i] -
                         l2 * (1.0 - std::pow(p.f[i], -params.alpha));
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace warpcert
