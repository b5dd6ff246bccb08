#pragma once

#include "fockse/rates.hpp"

namespace fockse {

// Observables of an incoherently pumped cavity field seen through a
// Lorentzian filter. The filtered field keeps the thermal density matrix
// but is not a thermal field: its spectrum is a product of Lorentzians and
// its correlation dynamics differ.

// Normalized power spectrum of the filtered thermal field,
//   (pi/2) S_th(w) S_Gamma(w) (Gamma + gamma - P); integrates to 1.
double spectrum_thermal(const ThermalParams& params, double omega);

// Bare normalized Lorentzians entering the product.
double spectrum_bare(const ThermalParams& params, double omega);    // width gamma - P
double spectrum_filter(const ThermalParams& params, double omega);  // width Gamma

// g2 of the filtered thermal field; exactly 2 at tau = 0 for every Gamma,
// including the removable Gamma = gamma - P point.
double g2_thermal_filtered(const ThermalParams& params, double tau);

// Gamma -> inf limit, 1 + e^{-(gamma-P) tau}.
double g2_thermal_unfiltered(const ThermalParams& params, double tau);

// Steady-state photon-number distribution (1-theta) theta^n.
double thermal_number_distribution(const ThermalParams& params, int n);

// Population-ratio effective temperature of the filtered field,
//   P gamma / (P^2 + (gamma + Gamma)(gamma - P));
// exceeds theta = P/gamma exactly when Gamma < P.
double filtered_temperature(const ThermalParams& params);

// Emission rate of the filtered field, gamma P Gamma /
// ((gamma - P + Gamma)(gamma - P)); strictly below the unfiltered rate.
double filtered_intensity(const ThermalParams& params);
double unfiltered_intensity(const ThermalParams& params);

}  // namespace fockse
