#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems, with
// the classic continuous extension used for event location and resampling.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "starlab/errors.hpp"
#include "starlab/roots.hpp"

namespace starlab {

template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    struct Step {
        double x0 = 0.0, h = 0.0;
        std::array<std::array<double, 5>, N> rcont{};  // dense-output coefficients
    };

    Dopri5(Rhs rhs, double rtol, double atol) : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    /// Integrates from (x0, y0) until component `event_index` crosses zero
    /// from above, or until x_max. Returns true when the event fired; the
    /// crossing is refined on the dense output to |y_event| <= event_tol.
    bool integrate_until_zero(double x0, const State& y0, double x_max, int event_index,
                              double event_tol, double& x_event, State& y_event) {
        steps_.clear();
        x_ = x0;
        y_ = y0;
        rhs_(x_, y_, k_[0]);
        double h = initial_step(x_max - x0);
        long total_steps = 0;
        while (x_ < x_max) {
            h = std::min(h, x_max - x_);
            if (!(h > std::abs(x_) * 1e-15 + 1e-300))
                throw StiffnessError("ode: step size underflow");
            if (++total_steps > kMaxSteps)
                throw StiffnessError("ode: step budget exceeded");
            State y_new;
            double err = try_step(h, y_new);
            if (err <= 1.0) {
                steps_.push_back(make_dense(h, y_new));
                const double y_ev_old = y_[event_index];
                x_ += h;
                y_ = y_new;
                k_[0] = k_[6];  // FSAL
                if (y_[event_index] <= 0.0 && y_ev_old > 0.0) {
                    locate_event(steps_.back(), event_index, event_tol, x_event, y_event);
                    accepted_steps_ = total_steps;
                    return true;
                }
            }
            const double safety = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(safety, 0.2, 5.0);
        }
        accepted_steps_ = total_steps;
        return false;
    }

    /// Dense-output evaluation; x must lie inside the integrated span.
    State evaluate(double x) const {
        const Step& s = locate_step(x);
        const double theta = (x - s.x0) / s.h;
        State y;
        for (std::size_t i = 0; i < N; ++i) y[i] = eval_component(s, i, theta);
        return y;
    }

    double start() const { return steps_.empty() ? x_ : steps_.front().x0; }
    double end() const { return x_; }
    long accepted_steps() const { return accepted_steps_; }

    /// Left endpoints of the accepted steps (the raw adaptive mesh).
    std::vector<double> step_points() const {
        std::vector<double> out;
        out.reserve(steps_.size());
        for (const Step& s : steps_) out.push_back(s.x0);
        return out;
    }

private:
    static constexpr long kMaxSteps = 20'000'000;

    double initial_step(double span) const {
        double scale = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            scale = std::max(scale, std::abs(k_[0][i]) / (atol_ + rtol_ * std::abs(y_[i])));
        double h = (scale > 0.0) ? 0.01 / scale : span / 100.0;
        return std::min(h, span / 10.0);
    }

    // One trial step of size h; returns the scaled error norm and fills y_new.
    double try_step(double h, State& y_new) {
        static constexpr double a21 = 1.0 / 5.0;
        static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                                a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
        static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                                a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                                a65 = -5103.0 / 18656.0;
        static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                                b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
        static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
        static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                                e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
        State yt;
        for (std::size_t i = 0; i < N; ++i) yt[i] = y_[i] + h * a21 * k_[0][i];
        rhs_(x_ + c2 * h, yt, k_[1]);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
        rhs_(x_ + c3 * h, yt, k_[2]);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]);
        rhs_(x_ + c4 * h, yt, k_[3]);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i]);
        rhs_(x_ + c5 * h, yt, k_[4]);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] +
                                 a64 * k_[3][i] + a65 * k_[4][i]);
        rhs_(x_ + h, yt, k_[5]);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y_[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] +
                                    b5 * k_[4][i] + b6 * k_[5][i]);
        rhs_(x_ + h, y_new, k_[6]);
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y_new[i]));
            const double e = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                                  e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
            err += (e / sk) * (e / sk);
        }
        return std::sqrt(err / N);
    }

    Step make_dense(double h, const State& y_new) const {
        static constexpr double d1 = -12715105075.0 / 11282082432.0,
                                d3 = 87487479700.0 / 32700410799.0,
                                d4 = -10690763975.0 / 1880347072.0,
                                d5 = 701980252875.0 / 199316789632.0,
                                d6 = -1453857185.0 / 822651844.0,
                                d7 = 69997945.0 / 29380423.0;
        Step s;
        s.x0 = x_;
        s.h = h;
        for (std::size_t i = 0; i < N; ++i) {
            const double dy = y_new[i] - y_[i];
            const double bspl = h * k_[0][i] - dy;
            s.rcont[i][0] = y_[i];
            s.rcont[i][1] = dy;
            s.rcont[i][2] = bspl;
            s.rcont[i][3] = dy - h * k_[6][i] - bspl;
            s.rcont[i][4] = h * (d1 * k_[0][i] + d3 * k_[2][i] + d4 * k_[3][i] +
                                 d5 * k_[4][i] + d6 * k_[5][i] + d7 * k_[6][i]);
        }
        return s;
    }

    static double eval_component(const Step& s, std::size_t i, double theta) {
        const auto& r = s.rcont[i];
        const double t1 = 1.0 - theta;
        return r[0] + theta * (r[1] + t1 * (r[2] + theta * (r[3] + t1 * r[4])));
    }

    const Step& locate_step(double x) const {
        std::size_t lo = 0, hi = steps_.size();
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (steps_[mid].x0 <= x)
                lo = mid;
            else
                hi = mid;
        }
        return steps_[lo];
    }

    void locate_event(const Step& s, int idx, double event_tol, double& x_event,
                      State& y_event) const {
        auto u = [&](double theta) { return eval_component(s, idx, theta); };
        double theta = 1.0;
        if (u(1.0) < 0.0)
            theta = find_root(u, 0.0, 1.0, 0.0, 1e-15, 200);
        // refine until the event component is within tolerance
        for (int i = 0; i < 4 && std::abs(u(theta)) > event_tol; ++i) {
            const double lo = std::max(0.0, theta - 1e-6), hi = std::min(1.0, theta + 1e-6);
            if (u(lo) > 0.0 && u(hi) <= 0.0) theta = find_root(u, lo, hi, 0.0, 1e-16, 200);
        }
        x_event = s.x0 + theta * s.h;
        for (std::size_t i = 0; i < N; ++i) y_event[i] = eval_component(s, i, theta);
    }

    Rhs rhs_;
    double rtol_, atol_;
    double x_ = 0.0;
    State y_{};
    std::array<State, 7> k_{};
    std::vector<Step> steps_;
    long accepted_steps_ = 0;
};

}  // namespace starlab
