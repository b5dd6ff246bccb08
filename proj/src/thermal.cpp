#include "fockse/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace fockse {

namespace {

double lorentzian(double half_width, double omega) {
    return (1.0 / M_PI) * half_width / (half_width * half_width + omega * omega);
}

double sinhc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

}  // namespace

double spectrum_bare(const ThermalParams& params, double omega) {
    params.validate();
    return lorentzian((params.gamma_a - params.pump) / 2, omega);
}

double spectrum_filter(const ThermalParams& params, double omega) {
    params.validate();
    if (!params.filtered) throw std::invalid_argument("spectrum_filter: unfiltered params");
    return lorentzian(params.Gamma / 2, omega);
}

double spectrum_thermal(const ThermalParams& params, double omega) {
    params.validate();
    if (!params.filtered) return spectrum_bare(params, omega);
    return (M_PI / 2) * spectrum_bare(params, omega) * spectrum_filter(params, omega) *
           (params.Gamma + params.gamma_a - params.pump);
}

double g2_thermal_filtered(const ThermalParams& params, double tau) {
    params.validate();
    if (!params.filtered) return g2_thermal_unfiltered(params, tau);
    if (tau < 0) tau = -tau;  // correlations are symmetric in the delay
    const double a = params.gamma_a - params.pump;
    const double G = params.Gamma;
    // Bracket is a perfect square: ((G e^{-a tau/2} - a e^{-G tau/2})/(G-a))^2.
    // The sinhc rewrite keeps the removable G = a point exact.
    const double s = 0.5 * (G + a);
    const double d = G - a;
    double v;
    if (std::abs(d) * tau > 4.0) {
        v = (G * std::exp(-a * tau / 2) - a * std::exp(-G * tau / 2)) / d;
    } else {
        v = std::exp(-s * tau / 2) * (s * tau / 2 * sinhc(d * tau / 4) + std::cosh(d * tau / 4));
    }
    return 1.0 + v * v;
}

double g2_thermal_unfiltered(const ThermalParams& params, double tau) {
    params.validate();
    return 1.0 + std::exp(-(params.gamma_a - params.pump) * std::abs(tau));
}

double thermal_number_distribution(const ThermalParams& params, int n) {
    params.validate();
    if (n < 0) throw std::invalid_argument("thermal_number_distribution: n must be >= 0");
    const double theta = params.theta();
    if (theta == 0) return n == 0 ? 1.0 : 0.0;
    return (1.0 - theta) * std::pow(theta, n);
}

double filtered_temperature(const ThermalParams& params) {
    params.validate();
    if (!params.filtered) return params.theta();
    const double p = params.pump, g = params.gamma_a;
    return p * g / (p * p + (g + params.Gamma) * (g - p));
}

double unfiltered_intensity(const ThermalParams& params) {
    params.validate();
    return params.gamma_a * params.pump / (params.gamma_a - params.pump);
}

double filtered_intensity(const ThermalParams& params) {
    params.validate();
    if (!params.filtered) return unfiltered_intensity(params);
    const double p = params.pump, g = params.gamma_a, G = params.Gamma;
    return g * p * G / ((g - p + G) * (g - p));
}

}  // namespace fockse
