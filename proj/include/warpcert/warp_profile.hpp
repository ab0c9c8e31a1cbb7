#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "warpcert/errors.hpp"

namespace warpcert {

enum class LeftEnd { cap_closure, free_end };
enum class RightEnd { sphere_match, free_end };

/// Sampled warping functions of a doubly warped metric
///   dt^2 + h(t)^2 ds_1^2 + f(t)^2 ds_{n-1}^2
/// with exact first and second derivatives carried alongside the values.
/// Derivatives are analytic (from the defining ODE and its differentiated
/// forms), never finite differences of the sampled values.
struct WarpProfile {
    std::vector<double> grid;          ///< strictly increasing, length >= 3
    std::vector<double> f, f1, f2;     ///< f, f', f''
    std::vector<double> h, h1, h2;     ///< h, h', h''
    LeftEnd left_end = LeftEnd::free_end;
    RightEnd right_end = RightEnd::free_end;

    std::size_t size() const { return grid.size(); }
    bool has_h() const { return !h.empty(); }

    /// Checks grid shape, array lengths, positivity of f away from the ends,
    /// and the smooth-closure values (h=0, h'=1, f'=0) when the left end is
    /// a cap closure. Throws DegenerateGrid / NonPositiveWarping /
    /// DimensionMismatch on violation.
    void validate(bool require_h = true, double closure_tol = 1e-8) const;
};

/// Closed Riemannian fiber summarized by diagonal Ricci data in a fixed
/// eigenbasis. Covers Einstein fibers and products of Einstein factors,
/// which is all the slab machinery consumes.
struct ModelFiber {
    std::string name;
    int dim = 0;
    std::vector<double> ricci_diag;    ///< principal Ricci values, (0,2) components
    std::vector<double> metric_diag;   ///< positive metric coefficients, same basis
    double scal = 0.0;

    /// Metric trace of ricci_diag; must equal scal.
    double trace_ricci() const;
    void validate(double tol = 1e-9) const;
};

/// Unit round sphere S^m: Ric = (m-1) g, scal = m(m-1).
ModelFiber round_sphere_fiber(int m);

/// Product of Einstein factors; each factor contributes `dim` copies of
/// `ricci` (per unit metric coefficient).
struct EinsteinFactor {
    int dim;
    double ricci;
};
ModelFiber einstein_product_fiber(const std::string& name,
                                  const std::vector<EinsteinFactor>& factors);

/// Writes columns t,f,f1,f2,h,h1,h2 with 17 significant digits.
void write_profile_csv(const std::string& path, const WarpProfile& p);

} // namespace warpcert
