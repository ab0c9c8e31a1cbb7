#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "warpcert/geometry.hpp"

using namespace warpcert;

namespace {

// f = sin, h = cos on a grid inside (0, pi/2): the round unit (n+1)-sphere.
WarpProfile round_sphere_profile(std::size_t points, double a = 0.05,
                                 double b = M_PI_2 - 0.05) {
    WarpProfile p;
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

// f = sin, h = r1: the product of a circle with a round n-sphere cap.
WarpProfile product_profile(std::size_t points, double r1) {
    WarpProfile p = round_sphere_profile(points);
    for (std::size_t i = 0; i < points; ++i) {
        p.h[i] = r1;
        p.h1[i] = 0.0;
        p.h2[i] = 0.0;
    }
    return p;
}

// Generic smooth warpings; no geometric meaning, used for identities that
// hold for arbitrary profiles.
WarpProfile wavy_profile(std::size_t points) {
    WarpProfile p;
    p.grid.resize(points);
    p.f.resize(points);
    p.f1.resize(points);
    p.f2.resize(points);
    p.h.resize(points);
    p.h1.resize(points);
    p.h2.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = 0.2 + 1.7 * static_cast<double>(i) / (points - 1);
        p.grid[i] = t;
        p.f[i] = 2.0 + 0.3 * std::sin(2.0 * t);
        p.f1[i] = 0.6 * std::cos(2.0 * t);
        p.f2[i] = -1.2 * std::sin(2.0 * t);
        p.h[i] = 1.0 + 0.2 * std::cos(t);
        p.h1[i] = -0.2 * std::sin(t);
        p.h2[i] = -0.2 * std::cos(t);
    }
    return p;
}

} // namespace

TEST_CASE("round sphere: every Ricci component equals n") {
    const WarpProfile p = round_sphere_profile(500);
    const CurvatureReport rep = ricci_doubly_warped(p, 4);
    REQUIRE(rep.points.size() == 500);
    for (const auto& c : rep.points) {
        CHECK(c.ric_tt == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(c.ric_circle == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(c.ric_sphere == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(!c.extrapolated);
    }
    CHECK(rep.min_ric == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(rep.consistent());
}

TEST_CASE("circle x sphere product: (n-1, 0, n-1)") {
    const WarpProfile p = product_profile(200, 0.7);
    const CurvatureReport rep = ricci_doubly_warped(p, 4);
    for (const auto& c : rep.points) {
        CHECK(c.ric_tt == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(std::abs(c.ric_circle) < 1e-12);
        CHECK(c.ric_sphere == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("trace identity: component sum equals the ambient scalar formula") {
    for (const WarpProfile& p : {round_sphere_profile(151), wavy_profile(151)}) {
        const CurvatureReport rep = ricci_doubly_warped(p, 4);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto& c = rep.points[i];
            const double sum = c.ric_tt + c.ric_circle + 3.0 * c.ric_sphere;
            const double direct = ambient_scalar_doubly_warped(
                p.f[i], p.f1[i], p.f2[i], p.h[i], p.h1[i], p.h2[i], 4);
            CHECK(sum == doctest::Approx(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("hypersurface scalar curvature closed forms") {
    SUBCASE("f = sin gives the round n-sphere, scal = n(n-1)") {
        const WarpProfile p = round_sphere_profile(301);
        const auto scal = scal_warped_hypersurface(p, 4);
        for (const auto& [t, s] : scal) CHECK(s == doctest::Approx(12.0).epsilon(1e-12));
        // t = pi/4 in particular
        bool saw_quarter = false;
        for (const auto& [t, s] : scal)
            if (std::abs(t - M_PI_4) < 2e-3) {
                saw_quarter = true;
                CHECK(s == doctest::Approx(12.0).epsilon(1e-12));
            }
        CHECK(saw_quarter);
    }
    SUBCASE("f = 1 gives interval x unit sphere, scal = (n-1)(n-2)") {
        WarpProfile p = round_sphere_profile(100);
        for (std::size_t i = 0; i < p.size(); ++i) {
            p.f[i] = 1.0;
            p.f1[i] = 0.0;
            p.f2[i] = 0.0;
        }
        const auto scal = scal_warped_hypersurface(p, 4);
        for (const auto& [t, s] : scal) CHECK(s == doctest::Approx(6.0).epsilon(1e-14));
    }
}

TEST_CASE("normal slice Ricci at a totally geodesic slice") {
    SUBCASE("product metric: g2 = 0 reproduces the fiber Ricci") {
        const ModelFiber s3 = round_sphere_fiber(3);
        const std::vector<double> g2(3, 0.0);
        const auto out = ricci_normal_slice(s3, g2);
        CHECK(out.ric_tt == 0.0);
        for (double v : out.ric_fiber) CHECK(v == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("pure trace term: g2 = -c g gives ric_tt = (dim/2) c") {
        const ModelFiber fb = einstein_product_fiber("S2xS1", {{2, 1.0}, {1, 0.0}});
        CHECK(fb.scal == doctest::Approx(2.0));
        const double c = 0.37;
        std::vector<double> g2(3);
        for (std::size_t i = 0; i < 3; ++i) g2[i] = -c * fb.metric_diag[i];
        const auto out = ricci_normal_slice(fb, g2);
        CHECK(out.ric_tt == doctest::Approx(1.5 * c).epsilon(1e-14));
    }
    SUBCASE("dimension mismatch is rejected") {
        const ModelFiber s3 = round_sphere_fiber(3);
        const std::vector<double> g2(4, 0.0);
        CHECK_THROWS_AS(ricci_normal_slice(s3, g2), DimensionMismatch);
    }
}

TEST_CASE("second fundamental form of sampled metric families") {
    const std::vector<double> ts{-0.2, -0.1, 0.0, 0.1, 0.2};

    SUBCASE("constant family is totally geodesic") {
        const std::vector<std::vector<double>> g(5, {1.0, 2.0, 3.0});
        const auto ii = second_fundamental_form(ts, g, 0.0);
        CHECK(ii.residual == 0.0);
    }
    SUBCASE("g + t^2 h is totally geodesic at t = 0") {
        std::vector<std::vector<double>> g;
        for (double t : ts) g.push_back({1.0 + t * t * 0.4, 1.0 - t * t * 0.7});
        const auto ii = second_fundamental_form(ts, g, 0.0);
        CHECK(ii.residual < 1e-14);
    }
    SUBCASE("(1+t) g has II = -g/2") {
        std::vector<std::vector<double>> g;
        for (double t : ts) g.push_back({(1.0 + t) * 2.0, (1.0 + t) * 5.0});
        const auto ii = second_fundamental_form(ts, g, 0.0);
        CHECK(ii.entries[0] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(ii.entries[1] == doctest::Approx(-2.5).epsilon(1e-13));
    }
    SUBCASE("too few samples bracketing t_star") {
        const std::vector<double> t2{0.0, 0.1};
        const std::vector<std::vector<double>> g(2, {1.0});
        CHECK_THROWS_AS(second_fundamental_form(t2, g, 0.0), GridTooCoarse);
        const std::vector<std::vector<double>> g5(5, {1.0});
        CHECK_THROWS_AS(second_fundamental_form(ts, g5, -0.2), GridTooCoarse);
    }
}

TEST_CASE("closure endpoint is extrapolated and flagged") {
    // f = 1 + t^2/2, h = t - t^3/6: smooth closure at t = 0 with the limits
    // ric_tt = -2, ric_circle = -2, ric_sphere = 0 (by expanding h''/h and
    // h'f'/(hf) as t -> 0).
    const std::size_t count = 401;
    WarpProfile p;
    p.left_end = LeftEnd::cap_closure;
    p.grid.resize(count);
    p.f.resize(count);
    p.f1.resize(count);
    p.f2.resize(count);
    p.h.resize(count);
    p.h1.resize(count);
    p.h2.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = 0.5 * static_cast<double>(i) / (count - 1);
        p.grid[i] = t;
        p.f[i] = 1.0 + 0.5 * t * t;
        p.f1[i] = t;
        p.f2[i] = 1.0;
        p.h[i] = t - t * t * t / 6.0;
        p.h1[i] = 1.0 - 0.5 * t * t;
        p.h2[i] = -t;
    }
    const CurvatureReport rep = ricci_doubly_warped(p, 4);
    CHECK(rep.points.front().extrapolated);
    CHECK(rep.points.front().ric_tt == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(rep.points.front().ric_circle == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(std::abs(rep.points.front().ric_sphere) < 1e-4);
    CHECK(!rep.points[1].extrapolated);
    CHECK(rep.consistent());
}

TEST_CASE("parallel and serial curvature evaluation agree bitwise") {
    for (const WarpProfile& p : {round_sphere_profile(1777), wavy_profile(1234)}) {
        const CurvatureReport a = ricci_doubly_warped(p, 4);
        const CurvatureReport b = ricci_doubly_warped_serial(p, 4);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].ric_tt == b.points[i].ric_tt);
            CHECK(a.points[i].ric_circle == b.points[i].ric_circle);
            CHECK(a.points[i].ric_sphere == b.points[i].ric_sphere);
            CHECK(a.points[i].scal_hyp == b.points[i].scal_hyp);
        }
        CHECK(a.min_ric == b.min_ric);
        CHECK(a.min_scal_hyp == b.min_scal_hyp);
    }
}

TEST_CASE("error paths") {
    SUBCASE("grid too short") {
        WarpProfile p;
        p.grid = {0.0, 1.0};
        p.f = p.f1 = p.f2 = p.h = p.h1 = p.h2 = {1.0, 1.0};
        CHECK_THROWS_AS(ricci_doubly_warped(p, 4), DegenerateGrid);
    }
    SUBCASE("nonpositive f at an interior point") {
        WarpProfile p = round_sphere_profile(50);
        p.f[25] = -0.1;
        CHECK_THROWS_AS(ricci_doubly_warped(p, 4), NonPositiveWarping);
    }
    SUBCASE("n below 3 is rejected") {
        const WarpProfile p = round_sphere_profile(50);
        CHECK_THROWS_AS(ricci_doubly_warped(p, 2), DimensionMismatch);
    }
}
