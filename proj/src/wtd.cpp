#include "fockse/wtd.hpp"

#include <cmath>
#include <stdexcept>

#include "fockse/kernel.hpp"

namespace fockse {

ExpPolynomial wtd_biphoton_exact(const RateSetQ& rates) {
    rates.validate();
    const ExactKernel kern = exact_kernel(rates);
    ExpPolynomial w = ExpPolynomial::correlate(kern.density, kern.density);
    w *= Rational(2) / (kern.total * kern.total);
    return w;
}

double wtd_biphoton_closed_form(const RateSet& rates, double tau) {
    rates.validate();
    if (tau < 0) return 0.0;
    const double g = rates.gamma_a;
    if (!rates.filtered) return g * std::exp(-g * tau);
    const double G = rates.Gamma;
    if (G == g) throw std::domain_error("wtd_biphoton_closed_form: singular at Gamma == gamma_a");
    const double gm = G - g;
    const double pre = G * g * (G + g) / (gm * gm * (3 * G + g) * (G + 3 * g));
    return pre * (G * (3 * G + g) * std::exp(-g * tau) + g * (G + 3 * g) * std::exp(-G * tau) -
                  8 * G * g * std::exp(-(G + g) * tau / 2));
}

namespace {

double sinhc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

}  // namespace

double wtd_biphoton(const RateSet& rates, double tau) {
    rates.validate();
    if (tau < 0) return 0.0;
    const double g = rates.gamma_a;
    if (!rates.filtered) return g * std::exp(-g * tau);
    const double G = rates.Gamma;
    const double d = G - g;
    if (std::abs(d) * tau > 4.0) return wtd_biphoton_closed_form(rates, tau);
    // Cancellation-safe regrouping of the tri-exponential, exact at the
    // confluent point: K e^{-s tau} [3 + (S tau^2/4) sinhc^2(d tau/4)
    //                                  + 3 s tau sinhc(d tau/2)].
    const double s = 0.5 * (g + G);
    const double K = G * g * (G + g) / ((3 * G + g) * (G + 3 * g));
    const double S = (3 * G * G + 2 * g * G + 3 * g * g) / 2;
    if (s * tau > 1500.0) return 0.0;
    const double sc2 = sinhc(d * tau / 4);
    const double sc1 = sinhc(d * tau / 2);
    return K * std::exp(-s * tau) * (3.0 + S * tau * tau / 4 * sc2 * sc2 + 3 * s * tau * sc1);
}

Rational mean_wtd_biphoton_exact(const RateSetQ& rates) {
    rates.validate();
    const Rational& g = rates.gamma_a;
    if (!rates.filtered) return Rational(1) / g;
    const Rational& G = rates.Gamma;
    return Rational(1) / G + Rational(1) / g + Rational(2) / (g + G) -
           Rational(9, 4) / (3 * G + g) - Rational(9, 4) / (G + 3 * g);
}

double mean_wtd_biphoton(const RateSet& rates) {
    return to_double(mean_wtd_biphoton_exact(to_exact(rates)));
}

double wtd_thermal(const ThermalParams& params, double tau) {
    params.validate();
    if (params.pump == 0)
        throw std::invalid_argument("wtd_thermal: P_a = 0 has no photons to wait for");
    if (tau < 0) return 0.0;
    const double p = params.pump, g = params.gamma_a;
    const double q = params.q_factor();
    const double denom = 2 * (g - p);
    const double decay = (g * g + p * p) / denom;
    const double osc = q / denom;
    // Split into the two exponentials; avoids cosh/sinh overflow at large tau.
    const double slow = 0.5 * (q - 2 * p * g) * std::exp(-(decay - osc) * tau);
    const double fast = 0.5 * (q + 2 * p * g) * std::exp(-(decay + osc) * tau);
    return (2 * p * g / (q * (g - p))) * (slow + fast);
}

double wtd_thermal_laplace(const ThermalParams& params, double s) {
    params.validate();
    if (params.pump == 0)
        throw std::invalid_argument("wtd_thermal_laplace: P_a = 0 is degenerate");
    if (!(s > 0)) throw std::invalid_argument("wtd_thermal_laplace: s must be > 0");
    const double g = params.gamma_a;
    const double n = params.mean_photons();
    const double g2_laplace = 1.0 / s + 1.0 / (s + g - params.pump);
    return 1.0 / (1.0 + 1.0 / (g * n * g2_laplace));
}

double thermal_peak_average(const ThermalParams& params) {
    params.validate();
    const double p = params.pump, g = params.gamma_a;
    const double wide = (g - p) / (p * p + g * g + params.q_factor());
    if (!params.filtered) return wide;
    // Printed small-Gamma asymptote, gamma_a <tau_0> = <tau_inf>(1-theta)/Gamma
    // with Gamma in gamma_a units.
    return wide * (1.0 - params.theta()) / (params.Gamma / g) / g;
}

}  // namespace fockse
