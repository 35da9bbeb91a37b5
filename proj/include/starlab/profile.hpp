#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starlab/params.hpp"
#include "starlab/quadrature.hpp"

namespace starlab {

/// Radial density profile on a uniform grid r_0 = 0 < r_1 < ... < r_M.
/// Values are nonnegative and nonincreasing, vanish for r >= support_radius,
/// and the stored mass is the Simpson quadrature of the stored values.
class DensityProfile {
public:
    DensityProfile() = default;

    /// Validates and adopts the samples. support_radius may sit between grid
    /// nodes (free-boundary location from event detection); pass a negative
    /// value to use the largest grid point with a positive sample.
    DensityProfile(std::vector<double> grid, std::vector<double> values,
                   double support_radius = -1.0)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (grid_.size() != values_.size())
            throw std::invalid_argument("DensityProfile: grid/value size mismatch");
        if (grid_.size() < 5)
            throw std::invalid_argument("DensityProfile: need at least 5 nodes");
        if (grid_.front() != 0.0)
            throw std::invalid_argument("DensityProfile: grid must start at r = 0");
        h_ = grid_[1] - grid_[0];
        if (!(h_ > 0.0))
            throw std::invalid_argument("DensityProfile: grid must be strictly increasing");
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            const double step = grid_[i] - grid_[i - 1];
            if (!(step > 0.0) || std::abs(step - h_) > 1e-9 * h_)
                throw std::invalid_argument("DensityProfile: grid must be uniform and increasing");
        }
        double vmax = 0.0;
        for (double v : values_) vmax = std::max(vmax, v);
        const double slack = 1e-12 * vmax;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
                throw std::invalid_argument("DensityProfile: values must be finite and >= 0");
            if (i > 0 && values_[i] > values_[i - 1] + slack)
                throw std::invalid_argument("DensityProfile: values must be nonincreasing");
        }
        if (support_radius < 0.0) {
            support_radius_ = 0.0;
            for (std::size_t i = 0; i < grid_.size(); ++i)
                if (values_[i] > 0.0) support_radius_ = grid_[i];
        } else {
            support_radius_ = support_radius;
            for (std::size_t i = 0; i < grid_.size(); ++i)
                if (grid_[i] >= support_radius_ * (1.0 + 1e-14) && values_[i] != 0.0)
                    throw std::invalid_argument(
                        "DensityProfile: values must vanish beyond the support radius");
        }
        mass_ = integrate([](double rho, double) { return rho; });
    }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double spacing() const { return h_; }
    double support_radius() const { return support_radius_; }
    double mass() const { return mass_; }
    double sup_density() const { return values_.empty() ? 0.0 : values_.front(); }
    std::size_t size() const { return grid_.size(); }

    /// 4 pi Int f(rho(r), r) r^2 dr by composite Simpson on the stored grid.
    double integrate(const std::function<double(double, double)>& f) const {
        std::vector<double> g(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i)
            g[i] = f(values_[i], grid_[i]) * grid_[i] * grid_[i];
        return 4.0 * kPi * simpson(g, h_);
    }

    /// Density at an arbitrary radius. Interpolates rho^(2/3), which is a
    /// smooth function of the local potential and exactly linear at the free
    /// boundary where rho itself is only C^1. Stencils never cross the
    /// boundary kink: the last interior stretch is closed linearly against
    /// the known support radius.
    double value_at(double r) const {
        if (r < 0.0) throw std::domain_error("DensityProfile::value_at: r must be >= 0");
        if (r >= support_radius_) return 0.0;
        if (r <= grid_.front()) return values_.front();
        const std::size_t n = grid_.size();
        std::size_t last = n - 1;  // last node strictly inside the support
        while (last > 0 && grid_[last] >= support_radius_) --last;
        auto w_of = [&](std::size_t i) { return std::cbrt(values_[i] * values_[i]); };

        std::size_t i = std::min(static_cast<std::size_t>(r / h_), n - 2);
        double w_interp;
        if (i >= last || last < 3) {
            // close the profile linearly through (grid[last], w) and (R, 0)
            w_interp = w_of(last) * (support_radius_ - r) / (support_radius_ - grid_[last]);
        } else {
            std::size_t lo = (i == 0) ? 0 : i - 1;
            if (lo + 3 > last) lo = last - 3;
            const double x = (r - grid_[lo]) / h_;
            const double l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
            const double l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
            const double l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
            const double l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
            w_interp = w_of(lo) * l0 + w_of(lo + 1) * l1 + w_of(lo + 2) * l2 + w_of(lo + 3) * l3;
        }
        w_interp = std::max(0.0, w_interp);
        return w_interp * std::sqrt(w_interp);
    }

    /// Exact mass-preserving dilation rho(x) -> beta^2 rho(beta^(1/3) x),
    /// carrying mass N0 to beta * N0. Grid stays uniform.
    DensityProfile dilated(double beta) const {
        if (!(beta > 0.0)) throw std::domain_error("DensityProfile::dilated: beta must be > 0");
        const double rscale = std::pow(beta, -1.0 / 3.0);
        const double vscale = beta * beta;
        std::vector<double> g(grid_.size()), v(values_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            g[i] = grid_[i] * rscale;
            v[i] = values_[i] * vscale;
        }
        return DensityProfile(std::move(g), std::move(v), support_radius_ * rscale);
    }

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    double h_ = 0.0;
    double support_radius_ = 0.0;
    double mass_ = 0.0;
};

/// Uniform ball of the given mass and radius, sampled on `nodes` grid points
/// with the support ending exactly at the last node.
inline DensityProfile uniform_ball(double mass, double radius, std::size_t nodes = 2001) {
    if (!(mass > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("uniform_ball: mass and radius must be > 0");
    const double rho0 = 3.0 * mass / (4.0 * kPi * radius * radius * radius);
    std::vector<double> g(nodes), v(nodes, rho0);
    for (std::size_t i = 0; i < nodes; ++i)
        g[i] = radius * static_cast<double>(i) / static_cast<double>(nodes - 1);
    return DensityProfile(std::move(g), std::move(v), radius);
}

}  // namespace starlab
