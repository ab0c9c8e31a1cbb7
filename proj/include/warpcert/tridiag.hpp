#pragma once

#include <span>
#include <vector>

namespace warpcert {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x, by the Sturm sequence of LDL^T pivots.
int sturm_count_below(std::span<const double> diag, std::span<const double> off,
                      double x);

/// The `count` smallest eigenvalues, ascending, each located by bisection on
/// the Sturm count inside the Gershgorin interval. Robust for clustered
/// eigenvalues; accuracy ~1e-12 relative to the spectral radius.
std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                       std::span<const double> off, int count);

/// Eigenvector for an isolated eigenvalue by shifted inverse iteration
/// (tridiagonal LU with partial pivoting). Normalized to unit 2-norm.
std::vector<double> inverse_iteration(std::span<const double> diag,
                                      std::span<const double> off, double lambda);

} // namespace warpcert
