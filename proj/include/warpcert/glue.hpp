#pragma once

#include <span>
#include <vector>

#include "warpcert/warp_ode.hpp"
#include "warpcert/warp_profile.hpp"

namespace warpcert {

/// Resolved plan of the cap-and-flatten modification near the matching time.
/// The profile is modified on [t1-window, t1+window]; to the left it is the
/// unmodified source, to the right f is exactly the spherical cap
///   f(t) = cap_scale * sin((t - cap_shift)/cap_scale)
/// and h is exactly the constant r1_pre.
struct GlueSpec {
    double t1 = 0.0;          ///< matching time, a grid point with f'(t1) > cos(r2)
    double window = 0.0;      ///< half-width of the blending window
    int flat_order = 4;       ///< derivatives of h certified to vanish at the seam
    double cap_scale = 1.0;   ///< the cap radius (paper's rescaling constant)
    double cap_shift = 0.0;   ///< domain shift placing the cap
    double c1 = 0.0;          ///< seam-matching corrections added to the
    double c2 = 0.0;          ///<   blended f'' (see blend_profiles)
    double r1_pre = 0.0;      ///< constant value of h past the right seam
    double seam_value_err = 0.0;  ///< |f - cap| at the right seam after blending
    double seam_slope_err = 0.0;  ///< |f' - cap'| at the right seam
    ConstructionParams params;

    double left_seam() const { return t1 - window; }
    double right_seam() const { return t1 + window; }
};

/// Smallest grid time with f'(t1) >= cos(r2) + delta. Throws HorizonTooShort
/// (carrying sup f') if the slope never reaches the threshold.
double find_matching_time(const WarpProfile& p, const ConstructionParams& params,
                          double delta);

struct CapFit {
    double cap_scale;
    double cap_shift;
};

/// C^1 cap match at t1: cap_scale = f(t1)/sqrt(1 - f'(t1)^2) and cap_shift
/// chosen so the cap reproduces f(t1), f'(t1) exactly. Throws SlopeOutOfRange
/// unless f'(t1) lies in (0, 1).
CapFit fit_cap(const WarpProfile& p, double t1);

struct GlueResult {
    WarpProfile profile;   ///< on the source grid; cap + constant h past the seam
    GlueSpec spec;
};

/// Blends f'' from the source profile to the cap with a smoothstep whose
/// first flat_order+1 derivatives vanish at the seams, and h' to zero with
/// the same transition; f and h are recovered by integrating the blended
/// derivatives, with two compactly supported bump corrections (coefficients
/// c1, c2 solved from closed-form moments) making the right-seam value and
/// slope match the cap exactly up to ODE tolerance. The window half-width is
/// rounded up to a whole number of grid cells so the seams are grid points;
/// outside the window the source arrays are copied verbatim. If the Ricci
/// minimum over [0, t1+window) is not strictly positive the window is halved
/// and the blend retried, up to retry_budget; then PositivityLost.
GlueResult blend_profiles(const WarpProfile& source, const ConstructionParams& params,
                          double t1, double window, int flat_order,
                          double positivity_margin = 0.0, int retry_budget = 6);

/// Final profile in the rescaled coordinate tau = (t - cap_shift)/cap_scale:
/// metric and warpings divided by cap_scale, so f(tau) = sin(tau) on the cap
/// region and the right end sits exactly at tau = r2.
struct FinalProfile {
    WarpProfile profile;
    GlueSpec spec;
    double r1_realized = 0.0;  ///< constant circle radius at the boundary
    double tau0 = 0.0;         ///< left (closure) end
    double tau1 = 0.0;         ///< image of the matching time
    double tau_seam = 0.0;     ///< image of the right seam
    double cap_coverage = 0.0; ///< r2 - tau_seam, the surviving cap length
};

/// Samples the fully glued, rescaled profile at the given ascending tau
/// values by re-integrating each region to the mapped points (no
/// interpolation). Valid for tau in [tau0, pi); tau >= tau_seam is analytic.
struct ProfileSamples {
    std::vector<double> f, f1, f2, h, h1, h2;
};
ProfileSamples sample_glued(const GlueSpec& spec, std::span<const double> taus);

/// Builds the final profile on a uniform grid over [tau0, r2]. Throws
/// CapTooShort if the cap region past the seam covers less than cap_margin
/// below r2.
FinalProfile rescale_and_shift(const GlueResult& glued, const ConstructionParams& params,
                               int grid_points, double cap_margin = 0.0);

/// Residuals of the boundary conditions: h equals r1 with flat derivatives
/// at the outer end, f equals sin on the cap region, and the smooth-closure
/// values at the left end (f' = 0; h = 0, h' = 1, h'' = 0).
struct BoundaryResiduals {
    double h_end_minus_r1 = 0.0;
    double h_end_derivatives = 0.0;  ///< max |h^(k)|, k = 1..flat_order, at the end
    double f_cap_deviation = 0.0;    ///< sup |f - sin| over the cap region
    double f_slope_left = 0.0;
    double h_value_left = 0.0;
    double h_slope_left_minus_1 = 0.0;
    double h_curv_left = 0.0;

    double max_residual() const;
};
BoundaryResiduals verify_boundary_conditions(const FinalProfile& fin,
                                             const ConstructionParams& params);

} // namespace warpcert
