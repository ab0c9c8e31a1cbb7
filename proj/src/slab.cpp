#include "warpcert/slab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "warpcert/geometry.hpp"

namespace warpcert {

std::vector<double> deformation_tensor(const ModelFiber& fiber, double eps) {
    fiber.validate();
    if (fiber.scal < 0.0)
        throw NegativeScalar("slab deformation requires scal(g_N) >= 0, got " +
                             std::to_string(fiber.scal));
    if (!(eps > 0.0)) throw Error("eps must be positive");

    const double lam = (fiber.scal + eps) / static_cast<double>(fiber.dim);
    std::vector<double> h(fiber.ricci_diag.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = fiber.ricci_diag[i] - lam * fiber.metric_diag[i];
    return h;
}

SlabMetric make_slab(const ModelFiber& fiber, double eps) {
    SlabMetric slab;
    slab.fiber = fiber;
    slab.eps = eps;
    slab.h_tensor = deformation_tensor(fiber, eps);
    return slab;
}

SlabRicci slab_ricci(const SlabMetric& slab) {
    const double lam = (slab.fiber.scal + slab.eps) / static_cast<double>(slab.fiber.dim);
    SlabRicci out;
    out.ric_tt = slab.eps;
    out.ric_fiber.resize(slab.fiber.metric_diag.size());
    for (std::size_t i = 0; i < out.ric_fiber.size(); ++i)
        out.ric_fiber[i] = lam * slab.fiber.metric_diag[i];
    return out;
}

DiagSlabCurvature diag_family_ricci(std::span<const double> ricci_diag,
                                    std::span<const double> a,
                                    std::span<const double> a1,
                                    std::span<const double> a2) {
    const std::size_t n = ricci_diag.size();
    if (a.size() != n || a1.size() != n || a2.size() != n)
        throw DimensionMismatch("diag_family_ricci: inconsistent array lengths");

    double tr_ratio = 0.0;     // sum a'/a
    double ric_tt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] <= 0.0) throw NonPositiveWarping("metric family not positive definite");
        const double ratio = a1[i] / a[i];
        tr_ratio += ratio;
        ric_tt += -0.5 * a2[i] / a[i] + 0.25 * ratio * ratio;
    }

    DiagSlabCurvature out;
    out.ric_tt = ric_tt;
    out.ric_fiber_unit.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double comp = ricci_diag[i] - 0.5 * a2[i] +
                            0.5 * a1[i] * a1[i] / a[i] -
                            0.25 * tr_ratio * a1[i];
        out.ric_fiber_unit[i] = comp / a[i];
    }
    return out;
}

namespace {

bool slab_positive_at(const SlabMetric& slab, double t) {
    const std::size_t n = slab.fiber.metric_diag.size();
    std::vector<double> a(n), a1(n), a2(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = slab.fiber.metric_diag[i] + t * t * slab.h_tensor[i];
        if (a[i] <= 0.0) return false;
        a1[i] = 2.0 * t * slab.h_tensor[i];
        a2[i] = 2.0 * slab.h_tensor[i];
    }
    const auto cur = diag_family_ricci(slab.fiber.ricci_diag, a, a1, a2);
    if (!(cur.ric_tt > 0.0)) return false;
    for (double v : cur.ric_fiber_unit)
        if (!(v > 0.0)) return false;
    return true;
}

} // namespace

double certify_slab_width(const SlabMetric& slab, int t_samples) {
    if (t_samples < 2) throw Error("certify_slab_width needs at least 2 samples");

    // Start just inside the positive-definiteness bound of g_N + t^2 h.
    double pd_bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slab.h_tensor.size(); ++i)
        if (slab.h_tensor[i] < 0.0)
            pd_bound = std::min(pd_bound,
                                std::sqrt(-slab.fiber.metric_diag[i] / slab.h_tensor[i]));
    double delta = std::isfinite(pd_bound) ? 0.9 * pd_bound : 1.0;

    constexpr int max_halvings = 60;
    for (int k = 0; k < max_halvings; ++k, delta *= 0.5) {
        if (!slab_positive_at(slab, 0.0)) break;   // eps <= 0 or degenerate input
        bool ok = true;
        for (int j = 1; j <= t_samples && ok; ++j) {
            const double t = delta * static_cast<double>(j) / t_samples;
            ok = slab_positive_at(slab, t);
        }
        if (ok) return delta;
    }
    throw NoPositiveWidth("no sampled slab width keeps Ricci positive");
}

bool necessity_check(const ModelFiber& fiber, double eps, std::span<const double> g2,
                     double tol) {
    const auto slice = ricci_normal_slice(fiber, g2);
    if (std::abs(slice.ric_tt - eps) > tol * std::max(1.0, std::abs(eps)))
        return false;
    for (double v : slice.ric_fiber)
        if (!(v > 0.0)) return false;
    return eps > -fiber.scal;
}

JetHomotopy certify_jet_homotopy(const ModelFiber& fiber,
                                 std::span<const double> g2_from,
                                 std::span<const double> g2_to,
                                 int path_samples, int t_samples) {
    const std::size_t n = fiber.metric_diag.size();
    if (g2_from.size() != n || g2_to.size() != n)
        throw DimensionMismatch("jet homotopy: g2 lengths must match the fiber");
    if (path_samples < 1) throw Error("need at least one path sample");

    JetHomotopy out{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    SlabMetric slab;
    slab.fiber = fiber;
    slab.h_tensor.resize(n);
    std::vector<double> g2_s(n);
    for (int j = 1; j <= path_samples; ++j) {
        const double s = static_cast<double>(j) / path_samples;
        for (std::size_t i = 0; i < n; ++i) {
            g2_s[i] = (1.0 - s) * g2_from[i] + s * g2_to[i];
            slab.h_tensor[i] = 0.5 * g2_s[i];
        }
        // Center values of a general jet, not the deformation closed form.
        const NormalSliceRicci center = ricci_normal_slice(fiber, g2_s);
        slab.eps = center.ric_tt;
        if (!(slab.eps > 0.0))
            throw NoPositiveWidth("blended jet has nonpositive normal curvature at s=" +
                                  std::to_string(s));
        const double width = certify_slab_width(slab, t_samples);
        out.min_width = std::min(out.min_width, width);
        out.min_ric_tt = std::min(out.min_ric_tt, center.ric_tt);
        for (std::size_t i = 0; i < n; ++i)
            out.min_ric_fiber =
                std::min(out.min_ric_fiber, center.ric_fiber[i] / fiber.metric_diag[i]);
    }
    return out;
}

NecessitySearch necessity_search(const ModelFiber& fiber, double eps, int trials,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = fiber.metric_diag.size();

    NecessitySearch out;
    std::vector<double> g2(n);
    for (int trial = 0; trial < trials; ++trial) {
        // Random symmetric data with the trace pinned to -2 eps, so the
        // normal Ricci curvature is exactly eps.
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            g2[i] = gauss(rng) * fiber.metric_diag[i];
            tr += g2[i] / fiber.metric_diag[i];
        }
        const double shift = (tr + 2.0 * eps) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) g2[i] -= shift * fiber.metric_diag[i];

        const auto slice = ricci_normal_slice(fiber, g2);
        bool positive = true;
        for (double v : slice.ric_fiber)
            if (!(v > 0.0)) positive = false;
        if (positive) {
            ++out.positive_cases;
            if (!(eps > -fiber.scal)) ++out.violations;
        }
    }
    return out;
}

} // namespace warpcert
