#include "warpcert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "warpcert/tridiag.hpp"

namespace warpcert {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

void sort_modes(std::vector<SpectralMode>& modes) {
    std::sort(modes.begin(), modes.end(), [](const SpectralMode& a, const SpectralMode& b) {
        if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
        if (a.k != b.k) return a.k < b.k;
        return a.radial_index < b.radial_index;
    });
}

template <bool Parallel>
SpectrumResult warped_spectrum_impl(std::span<const double> f_cells, double half_width,
                                    int m, Bc bc, int k_max, int modes_per_k) {
    const std::size_t n = f_cells.size();
    if (m < 1) throw DimensionMismatch("fiber dimension must be >= 1");
    if (k_max < 0 || modes_per_k < 1) throw Error("k_max >= 0 and modes_per_k >= 1 required");
    if (!(half_width > 0.0)) throw Error("half_width must be positive");
    if (n < 9) throw GridTooCoarse("need at least 9 cells");
    for (double f : f_cells)
        if (!(f > 0.0)) throw NonPositiveWarping("f must be positive on the interval");
    // The top third of a discrete spectrum is discretization junk.
    if (static_cast<std::size_t>(modes_per_k) > (2 * n) / 3)
        throw GridTooCoarse("requested " + std::to_string(modes_per_k) +
                            " modes exceeds two thirds of " + std::to_string(n) +
                            " grid cells");

    const int kcount = k_max + 1;
    std::vector<std::vector<double>> per_k(static_cast<std::size_t>(kcount));

    auto solve_k = [&](int k) {
        const double mu = static_cast<double>(k) * (k + m - 1);
        const RadialOperator op = assemble_radial_operator(f_cells, half_width, m, bc, mu);
        per_k[static_cast<std::size_t>(k)] =
            lowest_eigenvalues(op.diag, op.off, modes_per_k);
    };

    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < kcount; ++k) solve_k(k);
    } else {
        for (int k = 0; k < kcount; ++k) solve_k(k);
    }

    SpectrumResult out;
    out.bc = bc;
    out.fiber_dim = m;
    for (int k = 0; k < kcount; ++k) {
        const int mult = sphere_harmonic_multiplicity(m, k);
        const auto& evs = per_k[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < evs.size(); ++j)
            out.modes.push_back({evs[j], k, static_cast<int>(j), mult});
    }
    sort_modes(out.modes);
    return out;
}

} // namespace

double SpectrumResult::lambda1(double zero_tol) const {
    for (const auto& mode : modes)
        if (mode.eigenvalue > zero_tol) return mode.eigenvalue;
    throw NoGap("no eigenvalue above " + std::to_string(zero_tol));
}

int sphere_harmonic_multiplicity(int m, int k) {
    if (k < 0) throw Error("degree k must be >= 0");
    if (k == 0) return 1;
    const double v = binomial(m + k, k) - binomial(m + k - 2, k - 2);
    return static_cast<int>(v + 0.5);
}

SpectrumResult sphere_spectrum(int m, int k_max) {
    if (m < 1) throw DimensionMismatch("sphere dimension must be >= 1");
    SpectrumResult out;
    out.bc = Bc::neumann;
    out.fiber_dim = m;
    for (int k = 0; k <= k_max; ++k)
        out.modes.push_back({static_cast<double>(k) * (k + m - 1), k, 0,
                             sphere_harmonic_multiplicity(m, k)});
    sort_modes(out.modes);
    return out;
}

RadialOperator assemble_radial_operator(std::span<const double> f_cells,
                                        double half_width, int m, Bc bc, double mu) {
    const std::size_t n = f_cells.size();
    RadialOperator op;
    op.dx = 2.0 * half_width / static_cast<double>(n);
    const double inv_dx2 = 1.0 / (op.dx * op.dx);

    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i)
        rho[i] = std::pow(f_cells[i], static_cast<double>(m));
    op.sqrt_rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) op.sqrt_rho[i] = std::sqrt(rho[i]);

    // Interior face weights; the measure f^m is sampled at cell centers and
    // averaged onto faces (second order).
    std::vector<double> w(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) w[i] = 0.5 * (rho[i] + rho[i + 1]);

    op.diag.assign(n, 0.0);
    op.off.assign(n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        if (i > 0) d += w[i - 1];
        if (i + 1 < n) d += w[i];
        op.diag[i] = d * inv_dx2 / rho[i] + mu / (f_cells[i] * f_cells[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        op.off[i] = -w[i] * inv_dx2 / (op.sqrt_rho[i] * op.sqrt_rho[i + 1]);

    if (bc == Bc::dirichlet) {
        // Wall flux across a half cell; wall weight from linear extrapolation
        // of f to the boundary face.
        const double fl = std::max(0.5 * (3.0 * f_cells[0] - f_cells[1]), 1e-12);
        const double fr = std::max(0.5 * (3.0 * f_cells[n - 1] - f_cells[n - 2]), 1e-12);
        op.diag[0] += 2.0 * std::pow(fl, m) * inv_dx2 / rho[0];
        op.diag[n - 1] += 2.0 * std::pow(fr, m) * inv_dx2 / rho[n - 1];
    }
    return op;
}

SpectrumResult warped_interval_spectrum(std::span<const double> f_cells,
                                        double half_width, int m, Bc bc,
                                        int k_max, int modes_per_k) {
    return warped_spectrum_impl<true>(f_cells, half_width, m, bc, k_max, modes_per_k);
}

SpectrumResult warped_interval_spectrum_serial(std::span<const double> f_cells,
                                               double half_width, int m, Bc bc,
                                               int k_max, int modes_per_k) {
    return warped_spectrum_impl<false>(f_cells, half_width, m, bc, k_max, modes_per_k);
}

int morse_index(const SpectrumResult& spectrum, double eps) {
    if (!(eps > 0.0)) throw Error("eps must be positive");
    const double gap_tol = std::max(1e-9, spectrum.error_estimate);
    int count = 0;
    for (const auto& mode : spectrum.modes) {
        if (std::abs(mode.eigenvalue - eps) <= gap_tol)
            throw UnresolvedGap("eigenvalue " + std::to_string(mode.eigenvalue) +
                                " within tolerance " + std::to_string(gap_tol) +
                                " of eps = " + std::to_string(eps));
        if (mode.eigenvalue < eps) count += mode.multiplicity;
    }
    return count;
}

EpsWindow certify_index_one(const SpectrumResult& spectrum) {
    const double zero_tol = std::max(1e-6, 10.0 * spectrum.error_estimate);
    double l1 = 0.0;
    try {
        l1 = spectrum.lambda1(zero_tol);
    } catch (const NoGap&) {
        throw NoGap("spectrum has no eigenvalue separated from 0");
    }
    const double lb = l1 - spectrum.error_estimate;
    if (!(lb > zero_tol))
        throw NoGap("lambda1 estimate " + std::to_string(l1) +
                    " not separated from 0 after subtracting the error estimate");
    return {0.0, lb};
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& s) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "eigenvalue,k,radial_index,multiplicity\n";
    char buf[256];
    for (const auto& mode : s.modes) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%d\n", mode.eigenvalue, mode.k,
                      mode.radial_index, mode.multiplicity);
        out << buf;
    }
}

} // namespace warpcert
