#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "warpcert/errors.hpp"

namespace warpcert {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double h_init = 0.0;      // 0 = choose from first sample distance
    long max_steps = 4000000;
};

/// Dormand-Prince 5(4) with adaptive step control. Instead of dense output,
/// the step size is clamped so that the integration lands exactly on every
/// requested sample point; `visit(t, y)` fires at each one. Sample points
/// must be ascending and start at or after t0. Deterministic for fixed
/// inputs. Throws OdeToleranceNotMet if the step size underflows.
template <std::size_t Dim, typename Rhs, typename Visit>
void integrate_to_samples(Rhs&& rhs, double t0, std::array<double, Dim> y,
                          std::span<const double> samples,
                          const OdeOptions& opt, Visit&& visit) {
    using State = std::array<double, Dim>;

    if (samples.empty()) return;

    std::size_t next = 0;
    double t = t0;
    // Samples coinciding with t0 are emitted without stepping.
    while (next < samples.size() && samples[next] <= t0) {
        visit(samples[next], y);
        ++next;
    }
    if (next == samples.size()) return;

    State k1;
    rhs(t, y, k1);

    // Controller step; the attempted step may be shorter to hit a sample.
    double h_ctrl = opt.h_init > 0 ? opt.h_init
                                   : std::min(1e-2, (samples[next] - t) * 0.5);
    if (h_ctrl <= 0) h_ctrl = 1e-6;

    auto weighted_sum = [&](double hh, const auto&... terms) {
        State out;
        for (std::size_t i = 0; i < Dim; ++i) {
            double acc = 0.0;
            ((acc += terms.second * (*terms.first)[i]), ...);
            out[i] = y[i] + hh * acc;
        }
        return out;
    };
    using P = std::pair<const State*, double>;

    for (long step = 0; step < opt.max_steps && next < samples.size(); ++step) {
        if (h_ctrl < 1e-14 * std::max(1.0, std::abs(t)))
            throw OdeToleranceNotMet("step size underflow at t=" + std::to_string(t));

        const double target = samples[next];
        const bool clamped = t + h_ctrl >= target;
        const double h = clamped ? target - t : h_ctrl;

        State k2, k3, k4, k5, k6, k7, yt, y5;
        yt = weighted_sum(h, P{&k1, 1.0 / 5.0});
        rhs(t + h / 5.0, yt, k2);
        yt = weighted_sum(h, P{&k1, 3.0 / 40.0}, P{&k2, 9.0 / 40.0});
        rhs(t + 3.0 * h / 10.0, yt, k3);
        yt = weighted_sum(h, P{&k1, 44.0 / 45.0}, P{&k2, -56.0 / 15.0},
                          P{&k3, 32.0 / 9.0});
        rhs(t + 4.0 * h / 5.0, yt, k4);
        yt = weighted_sum(h, P{&k1, 19372.0 / 6561.0}, P{&k2, -25360.0 / 2187.0},
                          P{&k3, 64448.0 / 6561.0}, P{&k4, -212.0 / 729.0});
        rhs(t + 8.0 * h / 9.0, yt, k5);
        yt = weighted_sum(h, P{&k1, 9017.0 / 3168.0}, P{&k2, -355.0 / 33.0},
                          P{&k3, 46732.0 / 5247.0}, P{&k4, 49.0 / 176.0},
                          P{&k5, -5103.0 / 18656.0});
        rhs(t + h, yt, k6);
        y5 = weighted_sum(h, P{&k1, 35.0 / 384.0}, P{&k3, 500.0 / 1113.0},
                          P{&k4, 125.0 / 192.0}, P{&k5, -2187.0 / 6784.0},
                          P{&k6, 11.0 / 84.0});
        rhs(t + h, y5, k7);

        // Embedded 4th-order error estimate.
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                         e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                         e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
        double err = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(Dim));

        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));

        if (err <= 1.0) {
            t = clamped ? target : t + h;
            y = y5;
            k1 = k7;
            while (next < samples.size() && samples[next] <= t) {
                visit(samples[next], y);
                ++next;
            }
            // A clamped step says nothing about the controller's preferred
            // size; keep the larger of the two.
            h_ctrl = clamped ? std::max(h_ctrl, h * fac) : h * fac;
        } else {
            h_ctrl = h * std::min(fac, 0.9);
        }
    }

    if (next < samples.size())
        throw OdeToleranceNotMet("max step count exceeded");
}

} // namespace warpcert
