#pragma once

#include <complex>

#include "iontide/potential.hpp"
#include "iontide/species.hpp"

namespace iontide {

// Switch-timing and finite-switching-time error budgets for throw-catch
// transport. Throughout, T is the catch start time measured from the throw
// start, tau and tau_p are the throw/catch ramp durations, and overlaps are
// probabilities |<0|...>|^2.

/// Ground-state overlap after a catch mistimed by delta_t,
/// P_O = exp(-(alpha0 w dt)^2). Small-angle form, valid for |w dt| << 1.
double timing_overlap(double alpha0, double omega, double delta_t);

/// Exact coherent-state inner product for the same mistiming,
/// P_O = exp(-4 alpha0^2 sin^2(w dt / 2)).
double timing_overlap_exact(double alpha0, double omega, double delta_t);

/// Inverse of timing_overlap: the mistiming budget for a target overlap,
/// delta_t = sqrt(-ln P_O) / (|alpha0| w).
double timing_tolerance(double alpha0, double omega, double overlap);

struct ResidualExcitation {
    std::complex<double> alpha; // final coherent amplitude in the catch frame
    double overlap;             // exp(-|alpha|^2)
};

struct MinimizedResidual {
    double t_min; // catch start in [0, 2 pi/w) minimizing |alpha|
    std::complex<double> alpha;
    double overlap;
};

/// Residual coherent amplitude left by a full throw-catch program,
///   alpha = -sqrt(m w / 2 hbar) e^{-i w t_end} Int_0^{t_end) ds/dt e^{i w t} dt,
/// evaluated by adaptive quadrature (relative tolerance 1e-10) over both
/// ramps. Instantaneous ramps contribute nothing.
std::complex<double> residual_alpha_general(const TransportProtocol& protocol,
                                            const IonSpecies& species, double omega);

/// Closed forms for linear ramps with slopes z0/tau and z0/tau_p. These are
/// the exact integrals; the second-order expansions from the error-budget
/// literature are kept separately below for cross-checks.
ResidualExcitation residual_alpha_linear(double z0, double omega, double tau, double tau_p,
                                         double T, const IonSpecies& species);

/// Closed forms for half-cosine ramps.
ResidualExcitation residual_alpha_sinusoidal(double z0, double omega, double tau, double tau_p,
                                             double T, const IonSpecies& species);

/// Catch start minimizing the exact |alpha| for linear ramps, with the
/// minimized amplitude.
MinimizedResidual minimal_residual_linear(double z0, double omega, double tau, double tau_p,
                                          const IonSpecies& species);
MinimizedResidual minimal_residual_sinusoidal(double z0, double omega, double tau, double tau_p,
                                              const IonSpecies& species);

// Second-order (w tau << 1) forms. They drift from the exact integrals at
// w tau ~ 0.1 and are retained only as documented cross-checks of published
// curves; the exact forms above are authoritative.
std::complex<double> f_lin_approx(double omega, double tau, double tau_p, double T);
std::complex<double> f_cos_approx(double omega, double tau, double tau_p, double T);
ResidualExcitation residual_alpha_linear_approx(double z0, double omega, double tau, double tau_p,
                                                double T, const IonSpecies& species);

/// Catch start minimizing |f_lin_approx|, mapped into [0, 2 pi/w). Reduces
/// to pi/w for tau' = tau; the general correction is (tau - tau')/2.
double optimal_hold_linear(double omega, double tau, double tau_p);
/// Catch start minimizing |f_cos_approx|.
double optimal_hold_sinusoidal(double omega, double tau, double tau_p);

} // namespace iontide
