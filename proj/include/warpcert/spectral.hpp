#pragma once

#include <span>
#include <string>
#include <vector>

#include "warpcert/errors.hpp"

namespace warpcert {

enum class Bc { neumann, dirichlet };

struct SpectralMode {
    double eigenvalue;   ///< curvature units (inverse length squared)
    int k;               ///< spherical-harmonic degree
    int radial_index;    ///< index within the degree-k radial problem
    int multiplicity;    ///< harmonic multiplicity of degree k on S^m
};

/// Laplace spectrum of a model hypersurface, sorted ascending by
/// (eigenvalue, k, radial index). Counting functions (Morse index) weight
/// each mode by its multiplicity.
struct SpectrumResult {
    std::vector<SpectralMode> modes;
    Bc bc = Bc::neumann;
    int fiber_dim = 0;
    double error_estimate = 0.0;   ///< eigenvalue uncertainty; 0 for closed forms

    /// Smallest eigenvalue above zero_tol.
    double lambda1(double zero_tol = 1e-6) const;
};

/// dim of degree-k spherical harmonics on S^m.
int sphere_harmonic_multiplicity(int m, int k);

/// Closed-form spectrum of the unit round S^m: k(k+m-1) for k = 0..k_max.
SpectrumResult sphere_spectrum(int m, int k_max);

/// Self-adjoint second-order discretization of the degree-k radial problem
///   -f^{-m} (f^m phi')' + (mu / f^2) phi = lambda phi
/// on cell centers of a uniform grid over [-half_width, half_width], in the
/// similarity-transformed (symmetric tridiagonal) frame. Fluxes vanish at
/// the walls for Neumann; Dirichlet uses a half-cell wall flux.
struct RadialOperator {
    std::vector<double> diag;
    std::vector<double> off;        ///< length n-1
    std::vector<double> sqrt_rho;   ///< similarity weights, phi_i = x_i / sqrt_rho_i
    double dx;
};
RadialOperator assemble_radial_operator(std::span<const double> f_cells,
                                        double half_width, int m, Bc bc, double mu);

/// Spectrum of the Laplacian on dt^2 + f(t)^2 ds_m^2 over [-T, T] by
/// separation into spherical degrees k = 0..k_max, with modes_per_k radial
/// eigenvalues per degree; f_cells holds f at the n cell centers (f > 0,
/// even profile). Throws GridTooCoarse when the request reaches into the
/// top third of the discrete spectrum. Degrees solve in parallel.
SpectrumResult warped_interval_spectrum(std::span<const double> f_cells,
                                        double half_width, int m, Bc bc,
                                        int k_max, int modes_per_k);

/// Plain-loop reference; must agree bitwise with the parallel version.
SpectrumResult warped_interval_spectrum_serial(std::span<const double> f_cells,
                                               double half_width, int m, Bc bc,
                                               int k_max, int modes_per_k);

/// Morse index of L = Laplacian + eps: the multiplicity-weighted count of
/// eigenvalues strictly below eps. Throws UnresolvedGap when eps is within
/// max(1e-9, error_estimate) of a computed eigenvalue.
int morse_index(const SpectrumResult& spectrum, double eps);

/// Interval (0, lambda1 - error_estimate) of eps values certified to give
/// Morse index one. Throws NoGap when the bound does not separate from 0.
struct EpsWindow {
    double lo;
    double hi;
};
EpsWindow certify_index_one(const SpectrumResult& spectrum);

void write_spectrum_csv(const std::string& path, const SpectrumResult& s);

} // namespace warpcert
