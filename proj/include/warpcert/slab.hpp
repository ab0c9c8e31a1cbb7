#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "warpcert/warp_profile.hpp"

namespace warpcert {

/// Slab metric dt^2 + g_t on (-delta, delta) x N with g_t = g_N + t^2 h,
/// where h is chosen so that Ric(dt,dt) = eps at t = 0 while the slice
/// {0} x N stays totally geodesic. Requires scal(g_N) >= 0.
struct SlabMetric {
    ModelFiber fiber;
    double eps = 0.0;
    std::vector<double> h_tensor;   ///< deformation tensor, fiber eigenbasis
    double delta = 0.0;             ///< certified half-width (0 until certified)
};

/// h = Ric^{g_N} - ((scal + eps)/dim) g_N in the fiber eigenbasis; its
/// metric trace is -eps by construction. Throws NegativeScalar if the
/// fiber has scal < 0.
std::vector<double> deformation_tensor(const ModelFiber& fiber, double eps);

/// deformation_tensor packaged as a SlabMetric (delta not yet certified).
SlabMetric make_slab(const ModelFiber& fiber, double eps);

/// Closed-form Ricci data of the slab at t = 0:
///   ric_tt = eps,   Ric_ii = ((scal + eps)/dim) * metric_diag_i .
struct SlabRicci {
    double ric_tt;
    std::vector<double> ric_fiber;   ///< (0,2) components
};
SlabRicci slab_ricci(const SlabMetric& slab);

/// Curvature of dt^2 + g_t for a diagonal family a_i(t) whose fiber Ricci
/// components r_i stay constant (uniform scaling of Einstein factors):
///   ric_tt = -1/2 sum a''/a + 1/4 sum (a'/a)^2
///   Ric_ii = r_i - a_i''/2 + a_i'^2/(2 a_i) - (1/4)(sum a'/a) a_i'
/// Unit-direction fiber values are Ric_ii / a_i.
struct DiagSlabCurvature {
    double ric_tt;
    std::vector<double> ric_fiber_unit;
};
DiagSlabCurvature diag_family_ricci(std::span<const double> ricci_diag,
                                    std::span<const double> a,
                                    std::span<const double> a1,
                                    std::span<const double> a2);

/// Largest half-width delta from a geometric sequence (factor 1/2, starting
/// just inside the positive-definiteness bound) such that g_t is positive
/// definite and all Ricci components are strictly positive at t_samples
/// sample points of (0, delta], plus t = 0. Throws NoPositiveWidth when
/// even the smallest width in the budget fails.
double certify_slab_width(const SlabMetric& slab, int t_samples = 64);

/// Necessity direction of the slab construction: returns true iff the data
/// (g_0 = fiber, g_0' = 0, g_0'' = g2) has all ambient fiber Ricci
/// components positive, the normal curvature -1/2 tr g2 agrees with eps,
/// and eps > -scal(g_N). For consistent positively-curved data the
/// inequality always holds; random consistent data over a fiber with
/// eps <= -scal can never be positively curved.
bool necessity_check(const ModelFiber& fiber, double eps, std::span<const double> g2,
                     double tol = 1e-9);

/// Seeded random search for a counterexample to the necessity inequality:
/// draws `trials` trace-constrained tensors g2 and returns how many produce
/// positively-curved data (all of which must satisfy eps > -scal).
struct NecessitySearch {
    int positive_cases = 0;
    int violations = 0;     ///< positively-curved cases with eps <= -scal
};
NecessitySearch necessity_search(const ModelFiber& fiber, double eps, int trials,
                                 std::uint64_t seed);

/// Convex interpolation between two second jets over the same fiber (both
/// with g_0' = 0): certifies that every blended slab g_N + (t^2/2) g2(s),
/// g2(s) = (1-s) g2_from + s g2_to, keeps Ricci positive on a positive
/// width. The center values are linear in s, so positive endpoints make the
/// whole path positive there; the width is certified sample by sample over
/// s in (0, 1]. Throws NoPositiveWidth if any sample fails.
struct JetHomotopy {
    double min_width;       ///< smallest certified half-width along the path
    double min_ric_tt;      ///< smallest center normal curvature along the path
    double min_ric_fiber;   ///< smallest center fiber component along the path
};
JetHomotopy certify_jet_homotopy(const ModelFiber& fiber,
                                 std::span<const double> g2_from,
                                 std::span<const double> g2_to,
                                 int path_samples = 10, int t_samples = 64);

} // namespace warpcert
