#pragma once

#include "fockse/exppoly.hpp"
#include "fockse/rates.hpp"

namespace fockse {

// Waiting-time distributions: the gap between successive detections for a
// filtered two-photon bundle, and for the bare thermal field.

// Normalized biphoton wtd w_2(tau) = int_0^inf phi^(2)(t, t+tau) dt / P(2,2),
// exact at every Gamma including the confluent point and the unfiltered
// limit gamma e^{-gamma tau}.
ExpPolynomial wtd_biphoton_exact(const RateSetQ& rates);

// Printed tri-exponential closed form (requires Gamma != gamma_a); kept as a
// cross-check against the cancellation-safe regrouping used by
// wtd_biphoton, which is valid at every Gamma.
double wtd_biphoton_closed_form(const RateSet& rates, double tau);

double wtd_biphoton(const RateSet& rates, double tau);

// <tau>_2: mean two-photon bundle length,
//   1/Gamma + 1/gamma + 2/(gamma+Gamma) - 9/(4(3Gamma+gamma)) - 9/(4(Gamma+3gamma)).
Rational mean_wtd_biphoton_exact(const RateSetQ& rates);
double mean_wtd_biphoton(const RateSet& rates);

// Thermal-field wtd (bare field; cosh/sinh closed form from the inverse
// Laplace transform). Rejects P_a = 0 (no photons, degenerate).
double wtd_thermal(const ThermalParams& params, double tau);

// Closed-form Laplace transform (1 + 1/(gamma n_a g2~(s)))^{-1} used by the
// wtd identity tests.
double wtd_thermal_laplace(const ThermalParams& params, double s);

// Average of the thermal multiphoton peak: the large-bandwidth value
// (gamma - P)/(P^2 + gamma^2 + Q) for unfiltered params, and the printed
// small-Gamma asymptote <tau_inf>(1 - theta)/Gamma (gamma_a units) for
// filtered ones.
double thermal_peak_average(const ThermalParams& params);

}  // namespace fockse
