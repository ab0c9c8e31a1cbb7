#include "warpcert/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace warpcert {

namespace {

double pivot_floor(std::span<const double> off) {
    double m = 0.0;
    for (double e : off) m = std::max(m, e * e);
    return std::max(m, 1.0) * std::numeric_limits<double>::min() * 64.0;
}

} // namespace

int sturm_count_below(std::span<const double> diag, std::span<const double> off,
                      double x) {
    const double pmin = pivot_floor(off);
    int count = 0;
    double q = diag[0] - x;
    if (std::abs(q) < pmin) q = -pmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (std::abs(q) < pmin) q = -pmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                       std::span<const double> off, int count) {
    const std::size_t n = diag.size();
    if (off.size() + 1 != n) throw std::invalid_argument("off must have length n-1");
    if (count < 1 || static_cast<std::size_t>(count) > n)
        throw std::invalid_argument("eigenvalue count out of range");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        // Tolerance relative to the root, not the spectral radius, so small
        // eigenvalues of stiff discretizations still come out sharp.
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (sturm_count_below(diag, off, mid) <= k)
                a = mid;
            else
                b = mid;
            if (b - a < 1e-13 * std::max(1.0, std::abs(mid))) break;
        }
        out[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    }
    return out;
}

std::vector<double> inverse_iteration(std::span<const double> diag,
                                      std::span<const double> off, double lambda) {
    const std::size_t n = diag.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
    for (double e : off) scale = std::max(scale, std::abs(e));
    const double shift = lambda + 1e-12 * std::max(scale, 1.0);

    // Pivoted LU of (T - shift I), dgttrf-style; U gains a second
    // superdiagonal. Factored once, reused for every iteration.
    std::vector<double> dl(off.begin(), off.end());
    std::vector<double> d(n), du(n, 0.0), du2(n, 0.0);
    std::vector<char> swap_row(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) du[i] = off[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = 1e-300;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            swap_row[i] = 1;
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> b(n);
    for (int pass = 0; pass < 3; ++pass) {
        b = x;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swap_row[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        x[n - 1] = b[n - 1] / d[n - 1];
        if (n >= 2) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        for (std::size_t i = n - 1; i-- > 1;) {
            const std::size_t j = i - 1;
            x[j] = (b[j] - du[j] * x[j + 1] - du2[j] * x[j + 2]) / d[j];
        }
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : x) v /= nrm;
    }
    return x;
}

} // namespace warpcert
