#pragma once

#include "fockse/exppoly.hpp"
#include "fockse/rates.hpp"

namespace fockse {

// One-photon detection kernel. For a single spontaneously emitted photon
// seen through a Lorentzian filter, the (unnormalized) detection-time
// density is
//
//   rho(t) = gamma_a (Gamma/Gamma_-)^2 (e^{-Gamma t/2} - e^{-gamma_a t/2})^2
//
// with total mass Gamma/Gamma_+ (the single-photon detection probability at
// infinite time, xi = 1), and tail(t) = integral_t^inf rho. The N-photon
// joint pdf is N! * prod rho(t_i) on the ordered cone, so every distribution
// and moment in the library is built from these two functions.
//
// The Gamma = gamma_a point is a removable singularity; both the exact and
// the floating-point forms below evaluate it directly (density
// gamma^3 t^2 e^{-gamma t} / 4).

struct ExactKernel {
    ExpPolynomial tail;     // tail(t), tail(0) = total
    ExpPolynomial density;  // rho(t) = -tail'(t)
    Rational total;         // Gamma/Gamma_+ (1 when unfiltered)
};

ExactKernel exact_kernel(const RateSetQ& rates);

// Floating-point evaluations, cancellation-safe for all Gamma including the
// confluent point and its neighborhood.
double detection_density(const RateSet& rates, double t);
double detection_tail(const RateSet& rates, double t);
double detection_total(const RateSet& rates);

// Real envelope u(t) = (Gamma/Gamma_-)(e^{-gamma t/2} - e^{-Gamma t/2}) of
// the filter response; rho = gamma u^2.
double filter_envelope(const RateSet& rates, double t);

}  // namespace fockse
