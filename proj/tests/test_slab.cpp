#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "warpcert/geometry.hpp"
#include "warpcert/slab.hpp"

using namespace warpcert;

namespace {

std::vector<ModelFiber> fleet() {
    return {round_sphere_fiber(2),
            round_sphere_fiber(3),
            round_sphere_fiber(4),
            einstein_product_fiber("S2xS1", {{2, 1.0}, {1, 0.0}}),
            einstein_product_fiber("S2xS2", {{2, 1.0}, {2, 1.0}}),
            einstein_product_fiber("T3", {{3, 0.0}})};
}

} // namespace

TEST_CASE("deformation tensor closed forms") {
    SUBCASE("round S3 at eps = 0.3 contracts by 0.1") {
        const auto h = deformation_tensor(round_sphere_fiber(3), 0.3);
        for (double v : h) CHECK(v == doctest::Approx(-0.1).epsilon(1e-14));
        double tr = 0.0;
        for (double v : h) tr += v;
        CHECK(tr == doctest::Approx(-0.3).epsilon(1e-14));
    }
    SUBCASE("Ricci-flat fiber degenerates to a pure trace term") {
        const ModelFiber t3 = einstein_product_fiber("T3", {{3, 0.0}});
        const auto h = deformation_tensor(t3, 0.6);
        for (double v : h) CHECK(v == doctest::Approx(-0.2).epsilon(1e-15));
    }
    SUBCASE("S2 x S1 at eps = 0.1") {
        const ModelFiber fb = einstein_product_fiber("S2xS1", {{2, 1.0}, {1, 0.0}});
        const auto h = deformation_tensor(fb, 0.1);
        CHECK(h[0] == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(h[1] == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(h[2] == doctest::Approx(-0.7).epsilon(1e-14));
        CHECK(h[0] + h[1] + h[2] == doctest::Approx(-0.1).epsilon(1e-13));
    }
    SUBCASE("negative scalar curvature is rejected") {
        ModelFiber neg;
        neg.dim = 3;
        neg.ricci_diag = {-1.0, 0.2, 0.2};
        neg.metric_diag = {1.0, 1.0, 1.0};
        neg.scal = -0.6;
        CHECK_THROWS_AS(deformation_tensor(neg, 0.1), NegativeScalar);
    }
}

TEST_CASE("slab Ricci at the center") {
    SUBCASE("S3 at eps = 0.3: normal 0.3, fiber 2.1") {
        const SlabMetric slab = make_slab(round_sphere_fiber(3), 0.3);
        const SlabRicci sr = slab_ricci(slab);
        CHECK(sr.ric_tt == 0.3);
        for (double v : sr.ric_fiber) CHECK(v == doctest::Approx(2.1).epsilon(1e-15));
    }
    SUBCASE("S2 x S1: positive even with a flat fiber direction") {
        const ModelFiber fb = einstein_product_fiber("S2xS1", {{2, 1.0}, {1, 0.0}});
        const SlabRicci sr = slab_ricci(make_slab(fb, 0.1));
        for (double v : sr.ric_fiber) CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
    }
    SUBCASE("eps -> 0 limit approaches scal/dim") {
        const SlabRicci sr = slab_ricci(make_slab(round_sphere_fiber(3), 1e-12));
        for (double v : sr.ric_fiber) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("certified slab widths over the fiber fleet") {
    for (const ModelFiber& fb : fleet()) {
        CAPTURE(fb.name);
        double prev = 1e300;
        for (double eps : {0.1, 0.3, 1.0}) {
            const SlabMetric slab = make_slab(fb, eps);
            const double delta = certify_slab_width(slab);
            CHECK(delta > 0.0);
            // larger eps forces a thinner certified slab
            CHECK(delta <= prev + 1e-12);
            prev = delta;

            // at t = 0 the sampled formulas reproduce the closed forms
            const std::size_t n = fb.metric_diag.size();
            std::vector<double> a1(n, 0.0), a2(n);
            for (std::size_t i = 0; i < n; ++i) a2[i] = 2.0 * slab.h_tensor[i];
            const auto cur = diag_family_ricci(fb.ricci_diag, fb.metric_diag, a1, a2);
            const SlabRicci sr = slab_ricci(slab);
            CHECK(cur.ric_tt == doctest::Approx(sr.ric_tt).epsilon(1e-13));
            for (std::size_t i = 0; i < n; ++i)
                CHECK(cur.ric_fiber_unit[i] * fb.metric_diag[i] ==
                      doctest::Approx(sr.ric_fiber[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("undeformed product slab has no positive width") {
    SlabMetric flat;
    flat.fiber = einstein_product_fiber("T3", {{3, 0.0}});
    flat.eps = 0.0;
    flat.h_tensor = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(certify_slab_width(flat), NoPositiveWidth);
}

TEST_CASE("slab slice is totally geodesic at the center") {
    const SlabMetric slab = make_slab(round_sphere_fiber(3), 0.3);
    std::vector<double> ts;
    std::vector<std::vector<double>> family;
    for (int i = -3; i <= 3; ++i) {
        const double t = 0.05 * i;
        ts.push_back(t);
        std::vector<double> g(3);
        for (std::size_t j = 0; j < 3; ++j)
            g[j] = slab.fiber.metric_diag[j] + t * t * slab.h_tensor[j];
        family.push_back(g);
    }
    const auto ii = second_fundamental_form(ts, family, 0.0);
    CHECK(ii.residual < 1e-14);
}

TEST_CASE("necessity direction of the slab construction") {
    SUBCASE("every constructed slab satisfies it") {
        for (const ModelFiber& fb : fleet()) {
            const auto h = deformation_tensor(fb, 0.3);
            std::vector<double> g2(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) g2[i] = 2.0 * h[i];
            CHECK(necessity_check(fb, 0.3, g2));
        }
    }

    ModelFiber neg;
    neg.name = "scal=-1";
    neg.dim = 3;
    neg.ricci_diag = {-1.0 / 3, -1.0 / 3, -1.0 / 3};
    neg.metric_diag = {1.0, 1.0, 1.0};
    neg.scal = -1.0;

    SUBCASE("eps below -scal admits no positively curved slab data") {
        const NecessitySearch s = necessity_search(neg, 0.5, 2000, 20260101);
        CHECK(s.positive_cases == 0);
        CHECK(s.violations == 0);
    }
    SUBCASE("eps above -scal does admit them, and never violates the inequality") {
        const NecessitySearch s = necessity_search(neg, 1.5, 2000, 20260101);
        CHECK(s.positive_cases > 0);
        CHECK(s.violations == 0);

        // the closed-form deformation over the same fiber is one such case
        const double lam = (neg.scal + 1.5) / 3.0;
        std::vector<double> g2(3);
        for (std::size_t i = 0; i < 3; ++i)
            g2[i] = 2.0 * (neg.ricci_diag[i] - lam * neg.metric_diag[i]);
        CHECK(necessity_check(neg, 1.5, g2));
    }
    SUBCASE("deterministic for a fixed seed") {
        const NecessitySearch a = necessity_search(neg, 1.5, 500, 7);
        const NecessitySearch b = necessity_search(neg, 1.5, 500, 7);
        CHECK(a.positive_cases == b.positive_cases);
    }
}

TEST_CASE("normal slice of the constructed slab returns eps") {
    const ModelFiber s3 = round_sphere_fiber(3);
    const auto h = deformation_tensor(s3, 0.1);
    std::vector<double> g2(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) g2[i] = 2.0 * h[i];
    const auto slice = ricci_normal_slice(s3, g2);
    CHECK(slice.ric_tt == doctest::Approx(0.1).epsilon(1e-14));
    for (double v : slice.ric_fiber)
        CHECK(v == doctest::Approx((6.0 + 0.1) / 3.0).epsilon(1e-14));
}

TEST_CASE("jet interpolation from a product jet to the slab jet") {
    const ModelFiber s3 = round_sphere_fiber(3);
    const auto h = deformation_tensor(s3, 0.3);
    std::vector<double> g2_to(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) g2_to[i] = 2.0 * h[i];
    const std::vector<double> g2_from(3, 0.0);   // product metric jet

    SUBCASE("every blend keeps a positive certified width") {
        const JetHomotopy hom = certify_jet_homotopy(s3, g2_from, g2_to, 10);
        CHECK(hom.min_width > 0.0);
        CHECK(hom.min_ric_fiber > 0.0);
        // normal curvature along the path is s * eps; the smallest sampled
        // s is 1/10
        CHECK(hom.min_ric_tt == doctest::Approx(0.03).epsilon(1e-12));
    }
    SUBCASE("a path through nonpositive normal curvature is refused") {
        std::vector<double> bad(3);
        for (std::size_t i = 0; i < 3; ++i) bad[i] = -g2_to[i];   // eps flips sign
        CHECK_THROWS_AS(certify_jet_homotopy(s3, g2_from, bad, 10), NoPositiveWidth);
    }
    SUBCASE("mismatched jet lengths are rejected") {
        const std::vector<double> wrong(4, 0.0);
        CHECK_THROWS_AS(certify_jet_homotopy(s3, wrong, g2_to, 4), DimensionMismatch);
    }
}

TEST_CASE("diagonal slab engine agrees with the doubly warped engine") {
    // Overlap case: fiber S1 x S^{n-1} with a(t) = (h^2, f^2, ...) is the
    // doubly warped metric; on the round profile every component is n.
    for (double t : {0.4, 0.7, 1.1}) {
        const double f = std::sin(t), f1 = std::cos(t), f2 = -std::sin(t);
        const double h = std::cos(t), h1 = -std::sin(t), h2 = -std::cos(t);
        const std::vector<double> ric = {0.0, 2.0, 2.0, 2.0};
        const std::vector<double> a = {h * h, f * f, f * f, f * f};
        const std::vector<double> a1 = {2 * h * h1, 2 * f * f1, 2 * f * f1, 2 * f * f1};
        const double sph2 = 2 * (f * f2 + f1 * f1);
        const std::vector<double> a2 = {2 * (h * h2 + h1 * h1), sph2, sph2, sph2};
        const auto cur = diag_family_ricci(ric, a, a1, a2);
        CHECK(cur.ric_tt == doctest::Approx(4.0).epsilon(1e-13));
        for (double v : cur.ric_fiber_unit) CHECK(v == doctest::Approx(4.0).epsilon(1e-13));
    }
}
