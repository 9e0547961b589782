#include "iontide/fock.hpp"

#include <cmath>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/trap.hpp"

namespace iontide {

std::vector<std::complex<double>> fock_amplitudes(const Wavefunction& psi,
                                                  const PotentialSpec& well,
                                                  const IonSpecies& species, std::size_t n_max) {
    const double a0 = ground_state_extent(species, well.omega0());
    const double ell = a0 * std::sqrt(2.0); // standard oscillator length
    const GridSpec& grid = psi.grid;

    // Resolution guards: the n-th eigenfunction oscillates at k_n and extends
    // to the classical turning point of level n.
    const double k_n = std::sqrt(2.0 * static_cast<double>(n_max) + 1.0) / ell;
    const double k_grid = constants::pi / grid.dz();
    if (!(k_n < 0.5 * k_grid))
        throw GridError("grid spacing cannot resolve the requested Fock state");
    const double extent = std::sqrt(2.0 * static_cast<double>(n_max) + 1.0) * ell;
    if (well.center - extent < grid.z_min || well.center + extent > grid.z_max)
        throw GridError("grid extent cannot hold the requested Fock state");

    // phi_0(y) = pi^-1/4 exp(-y^2/2),  phi_{n+1} = sqrt(2/(n+1)) y phi_n
    //                                             - sqrt(n/(n+1)) phi_{n-1},
    // y = (z - center)/ell, normalized against dz via 1/sqrt(ell).
    const double dz = grid.dz();
    const double norm0 = std::pow(constants::pi, -0.25) / std::sqrt(ell);
    std::vector<std::complex<double>> amps(n_max + 1, 0.0);
    std::vector<double> prev(grid.points), cur(grid.points), next(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double y = (grid.z(i) - well.center) / ell;
        cur[i] = norm0 * std::exp(-0.5 * y * y);
    }
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < grid.points; ++i) s += cur[i] * psi.amplitudes[i];
        amps[n] = s * dz;
        if (n == n_max) break;
        const double c1 = std::sqrt(2.0 / static_cast<double>(n + 1));
        const double c2 = (n == 0) ? 0.0
                                   : std::sqrt(static_cast<double>(n) /
                                               static_cast<double>(n + 1));
        for (std::size_t i = 0; i < grid.points; ++i) {
            const double y = (grid.z(i) - well.center) / ell;
            next[i] = c1 * y * cur[i] - c2 * prev[i];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return amps;
}

double fock_overlap(const Wavefunction& psi, const PotentialSpec& well,
                    const IonSpecies& species, std::size_t n) {
    return std::norm(fock_amplitudes(psi, well, species, n).back());
}

} // namespace iontide
