#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "starlab/profile.hpp"
#include "starlab/quadrature.hpp"

namespace starlab {

/// Newtonian potential V = |x|^{-1} * rho of a radial density, sampled on the
/// profile grid. Newton's theorem reduces the convolution to two cumulative
/// quadratures: V(r) = M(r)/r + S(R) - S(r) with M(r) = 4 pi Int_0^r rho s^2 ds
/// and S(r) = 4 pi Int_0^r rho s ds. Beyond the support V(r) = mass / r.
struct RadialPotential {
    std::vector<double> values;  ///< V(r_i) on the profile grid
    double mass = 0.0;           ///< exterior-law coefficient: V(r) = mass / r for r >= R

    /// Potential at an arbitrary radius >= the grid end (exterior law).
    double exterior(double r) const { return mass / r; }
};

inline RadialPotential newton_potential(std::span<const double> r, std::span<const double> rho,
                                        double h) {
    const std::size_t n = r.size();
    if (n < 5 || rho.size() != n)
        throw std::domain_error("newton_potential: need matching grids of at least 5 nodes");

    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = rho[i] * r[i] * r[i];
    std::vector<double> m_in = cumulative_integral(f, h);

    for (std::size_t i = 0; i < n; ++i) f[i] = rho[i] * r[i];
    std::vector<double> s_out = cumulative_integral(f, h);

    const double four_pi = 4.0 * kPi;
    const double s_total = four_pi * s_out.back();
    RadialPotential pot;
    pot.values.resize(n);
    pot.values[0] = s_total;
    for (std::size_t i = 1; i < n; ++i)
        pot.values[i] = four_pi * m_in[i] / r[i] + (s_total - four_pi * s_out[i]);
    pot.mass = four_pi * m_in.back();
    return pot;
}

inline RadialPotential newton_potential(const DensityProfile& profile) {
    return newton_potential(profile.grid(), profile.values(), profile.spacing());
}

/// Coulomb self-energy D(rho, rho) = 1/2 Int Int rho(x) rho(y)/|x-y|,
/// evaluated on the diagonal as 1/2 Int V rho.
inline double coulomb_energy(const DensityProfile& profile) {
    const RadialPotential pot = newton_potential(profile);
    const auto& r = profile.grid();
    const auto& rho = profile.values();
    std::vector<double> g(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) g[i] = pot.values[i] * rho[i] * r[i] * r[i];
    return 0.5 * 4.0 * kPi * simpson(g, profile.spacing());
}

}  // namespace starlab
