#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "iontide/species.hpp"
#include "iontide/wavefunction.hpp"

namespace iontide {

/// Amplitudes <n|psi> for n = 0..n_max against the harmonic eigenfunctions of
/// the reference well (f_z and center of `well`; anharmonic terms ignored).
/// Uses the normalized Hermite-function recurrence, numerically stable for
/// every n the grid can resolve.
std::vector<std::complex<double>> fock_amplitudes(const Wavefunction& psi,
                                                  const PotentialSpec& well,
                                                  const IonSpecies& species, std::size_t n_max);

/// |<n|psi>|^2 for a single n.
double fock_overlap(const Wavefunction& psi, const PotentialSpec& well,
                    const IonSpecies& species, std::size_t n);

} // namespace iontide
