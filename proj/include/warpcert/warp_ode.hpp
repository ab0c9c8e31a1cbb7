#pragma once

#include <string>
#include <vector>

#include "warpcert/warp_profile.hpp"

namespace warpcert {

/// Parameters of the doubly warped construction. The admissible window is
///   lambda0 in (cos(r2), 1),  alpha in (n-2, (n-2)/lambda0^2),
/// which in particular forces alpha*lambda0^2 < n-2.
struct ConstructionParams {
    int n = 4;               ///< hypersurface dimension; ambient is n+1
    double r2 = 0.5;         ///< geodesic disc radius, in (0, pi/2)
    double r1 = 0.12;        ///< target circle radius at the outer boundary
    double alpha = 2.2;      ///< exponent of the profile ODE
    double lambda0 = 0.9;    ///< asymptotic slope of f
    double eps = 0.1;        ///< normal Ricci target for the index normalization
    double T = 10.0;         ///< integration horizon
    double tol = 1e-10;      ///< ODE tolerance (absolute and relative)
    int grid_points = 2001;

    double alpha_lambda_sq() const { return alpha * lambda0 * lambda0; }
};

/// Names every violated parameter window; empty means valid. Never throws.
std::vector<std::string> validate_params(const ConstructionParams& p);

/// Solves  f(0)=1, f'(0)=0, f'' = (alpha lambda0^2 / 2) f^{-alpha-1}  on
/// [0, T] with grid_points uniform output points. f'' is stored from the
/// ODE right-hand side; h-fields are left empty (see derive_h). The
/// returned profile has cap_closure at t=0 and satisfies f'' > 0, f >= 1,
/// 0 <= f' < lambda0.
WarpProfile solve_sha_yang(const ConstructionParams& p);

/// Fills h = (2 / (alpha lambda0^2)) f' together with
///   h'  = (2 / (alpha lambda0^2)) f''      ( = f^{-alpha-1} )
///   h'' = -(alpha+1) f^{-alpha-2} f'
/// so that h(0)=0 and h'(0)=1 exactly. Throws MissingF if f is absent.
void derive_h(WarpProfile& p, const ConstructionParams& params);

/// Convenience: solve_sha_yang followed by derive_h.
WarpProfile solve_profile(const ConstructionParams& p);

/// max over the grid of |f'^2 - lambda0^2 (1 - f^{-alpha})|, the first
/// integral of the profile ODE; an a posteriori accuracy certificate.
double first_integral_residual(const WarpProfile& p, const ConstructionParams& params);

} // namespace warpcert
