#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcert/geometry.hpp"
#include "warpcert/warp_ode.hpp"

using namespace warpcert;

namespace {

ConstructionParams defaults() { return ConstructionParams{}; }

} // namespace

TEST_CASE("parameter window validation") {
    SUBCASE("defaults are valid") {
        CHECK(validate_params(defaults()).empty());
        // cos(0.5) ~ 0.8776 < 0.9 and 2 < 2.2 < 2/0.81 ~ 2.469
        CHECK(std::cos(0.5) < 0.9);
        CHECK(2.2 < 2.0 / 0.81);
    }
    SUBCASE("alpha on the lower boundary is rejected") {
        ConstructionParams p = defaults();
        p.alpha = 2.0;
        const auto bad = validate_params(p);
        REQUIRE(!bad.empty());
        CHECK(bad.front().find("alpha") != std::string::npos);
    }
    SUBCASE("n = 3 with its own window") {
        ConstructionParams p = defaults();
        p.n = 3;
        p.alpha = 1.1;   // window (1, 1/0.81 ~ 1.2346)
        CHECK(validate_params(p).empty());
        p.alpha = 1.3;
        CHECK(!validate_params(p).empty());
    }
    SUBCASE("lambda0 below cos(r2) is rejected") {
        ConstructionParams p = defaults();
        p.lambda0 = 0.87;
        const auto bad = validate_params(p);
        REQUIRE(!bad.empty());
        CHECK(bad.front().find("lambda0") != std::string::npos);
    }
    SUBCASE("violation list names every broken window") {
        ConstructionParams p = defaults();
        p.alpha = 5.0;
        p.eps = -1.0;
        CHECK(validate_params(p).size() >= 2);
    }
}

TEST_CASE("profile ODE solution") {
    const ConstructionParams p = defaults();
    const WarpProfile prof = solve_profile(p);

    SUBCASE("initial jet is exact") {
        CHECK(prof.f.front() == 1.0);
        CHECK(prof.f1.front() == 0.0);
        // f''(0) = alpha lambda0^2 / 2 = 0.891 for the default parameters
        CHECK(prof.f2.front() == doctest::Approx(0.891).epsilon(1e-15));
        CHECK(prof.left_end == LeftEnd::cap_closure);
    }

    SUBCASE("first integral certifies the solve") {
        CHECK(first_integral_residual(prof, p) < 1e-9);
    }

    SUBCASE("monotonicity and convexity hold pointwise") {
        for (std::size_t i = 0; i < prof.size(); ++i) {
            CHECK(prof.f[i] >= 1.0 - 1e-12);
            CHECK(prof.f2[i] > 0.0);
            CHECK(prof.f1[i] < p.lambda0);
            CHECK(prof.f1[i] >= 0.0);
            CHECK(prof.h1[i] > 0.0);
            if (i > 0) CHECK(prof.h2[i] < 0.0);
            if (i > 0) CHECK(prof.f1[i] > prof.f1[i - 1]);
        }
    }

    SUBCASE("closure parity at t = 0") {
        CHECK(prof.h.front() == 0.0);
        CHECK(prof.h1.front() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(prof.h2.front() == 0.0);
    }

    SUBCASE("corrupting the slope is detected by the first integral") {
        WarpProfile bad = prof;
        bad.f1[1000] += 1e-3;
        CHECK(first_integral_residual(bad, p) >= 5e-4);
    }
}

TEST_CASE("h'(0) = 1 across the admissible window") {
    for (auto [alpha, lambda0] : {std::pair{2.3, 0.88}, std::pair{2.1, 0.95},
                                  std::pair{2.45, 0.9}}) {
        ConstructionParams p = defaults();
        p.alpha = alpha;
        p.lambda0 = lambda0;
        p.T = 2.0;
        p.grid_points = 201;
        REQUIRE(validate_params(p).empty());
        const WarpProfile prof = solve_profile(p);
        CHECK(prof.h1.front() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(prof.h.front() == 0.0);
    }
}

TEST_CASE("derive_h requires f") {
    WarpProfile empty;
    CHECK_THROWS_AS(derive_h(empty, defaults()), MissingF);
}

TEST_CASE("solved region has positive Ricci curvature") {
    ConstructionParams p = defaults();
    p.T = 3.0;
    p.grid_points = 601;
    const WarpProfile prof = solve_profile(p);
    const CurvatureReport rep = ricci_doubly_warped(prof, p.n);
    CHECK(rep.min_ric > 0.0);
    CHECK(rep.min_scal_hyp > 0.0);
}

TEST_CASE("hypersurface scalar bound holds along the solution") {
    const ConstructionParams p = defaults();
    const WarpProfile prof = solve_profile(p);
    // scal >= (n-1) f^{-alpha-2} (n-2 - alpha lambda0^2) pointwise
    CHECK(scalar_bound_residual(prof, p.n, p.alpha, p.lambda0) >= -1e-10);
}

TEST_CASE("first integral vanishes identically on exact data") {
    // A profile whose slope array is built from the conserved quantity
    // itself has residual zero by construction.
    const ConstructionParams p = defaults();
    WarpProfile prof;
    prof.grid = {0.0, 0.5, 1.0, 1.5};
    prof.f = {1.0, 1.2, 1.9, 2.8};
    prof.f1.resize(4);
    prof.f2.assign(4, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        prof.f1[i] = p.lambda0 * std::sqrt(1.0 - std::pow(prof.f[i], -p.alpha));
    // zero up to the rounding of squaring the stored slope
    CHECK(first_integral_residual(prof, p) < 5e-16);
}

TEST_CASE("every admissible parameter choice yields positive Ricci curvature") {
    // Desk-scale form of the construction's soundness: sample the window,
    // including points close to its corners.
    const std::pair<double, double> samples[] = {
        {2.01, 0.88}, {2.2, 0.9}, {2.45, 0.9}, {2.02, 0.99}, {2.01, 0.995}};
    for (const auto& [alpha, lambda0] : samples) {
        ConstructionParams p = defaults();
        p.alpha = alpha;
        p.lambda0 = lambda0;
        p.T = 4.0;
        p.grid_points = 801;
        CAPTURE(alpha);
        CAPTURE(lambda0);
        REQUIRE(validate_params(p).empty());
        const WarpProfile prof = solve_profile(p);
        const CurvatureReport rep = ricci_doubly_warped(prof, p.n);
        CHECK(rep.min_ric > 0.0);
        CHECK(scalar_bound_residual(prof, p.n, p.alpha, p.lambda0) >= -1e-10);
    }
}

TEST_CASE("ODE solution matches the first-integral quadrature route") {
    // Independent oracle: dt/df = 1/sqrt(lambda0^2 (1 - f^-alpha)) integrated
    // by midpoint quadrature in f gives t(f); compare against the solver's
    // f(t) at the horizon.
    const ConstructionParams p = defaults();
    const WarpProfile prof = solve_profile(p);
    const double f_end = prof.f.back();

    const int steps = 4000000;
    double t_acc = 0.0;
    // Near f = 1 the integrand has an inverse-sqrt singularity; substitute
    // f = 1 + u^2 so du is regular: dt = 2 u du / f'(1 + u^2).
    const double u_end = std::sqrt(f_end - 1.0);
    for (int i = 0; i < steps; ++i) {
        const double u = u_end * (i + 0.5) / steps;
        const double f = 1.0 + u * u;
        const double slope =
            p.lambda0 * std::sqrt(1.0 - std::pow(f, -p.alpha));
        t_acc += 2.0 * u / slope;
    }
    t_acc *= u_end / steps;
    CHECK(t_acc == doctest::Approx(p.T).epsilon(1e-6));
}
