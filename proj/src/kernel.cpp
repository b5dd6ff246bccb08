#include "fockse/kernel.hpp"

#include <cmath>

namespace fockse {

namespace {

double sinhc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

}  // namespace

ExactKernel exact_kernel(const RateSetQ& rates) {
    rates.validate();
    const Rational& g = rates.gamma_a;
    ExactKernel k;
    if (!rates.filtered) {
        k.tail = ExpPolynomial::term(Rational(1), 0, g);
        k.density = ExpPolynomial::term(g, 0, g);
        k.total = Rational(1);
        return k;
    }
    const Rational& G = rates.Gamma;
    if (rates.confluent()) {
        // tail(t) = e^{-gt} (g^2 t^2 + 2 g t + 2) / 4
        k.tail = ExpPolynomial::term(g * g / 4, 2, g) + ExpPolynomial::term(g / 2, 1, g) +
                 ExpPolynomial::term(Rational(1, 2), 0, g);
        k.density = ExpPolynomial::term(g * g * g / 4, 2, g);
        k.total = Rational(1, 2);
        return k;
    }
    const Rational gp = rates.gamma_plus();
    const Rational gm2 = rates.gamma_minus() * rates.gamma_minus();
    k.tail = ExpPolynomial::term(G * G / gm2, 0, g) + ExpPolynomial::term(g * G / gm2, 0, G) +
             ExpPolynomial::term(Rational(-4) * g * G * G / (gm2 * gp), 0, gp / 2);
    k.density = -k.tail.derivative();
    k.total = G / gp;
    return k;
}

double detection_total(const RateSet& rates) {
    rates.validate();
    if (!rates.filtered) return 1.0;
    return rates.Gamma / rates.gamma_plus();
}

double filter_envelope(const RateSet& rates, double t) {
    rates.validate();
    if (t < 0) return 0.0;
    const double g = rates.gamma_a;
    if (!rates.filtered) return std::exp(-g * t / 2);
    const double G = rates.Gamma;
    const double s = 0.5 * (g + G);
    const double d = G - g;
    if (std::abs(d) * t > 4.0)
        return G * (std::exp(-g * t / 2) - std::exp(-G * t / 2)) / d;
    // near-coincident rates: u = G e^{-st/2} (t/2) sinhc(dt/4); within this
    // branch the envelope is bounded by e^{-(s t - 2)/2}
    if (s * t > 1500.0) return 0.0;
    return G * std::exp(-s * t / 2) * (t / 2) * sinhc(d * t / 4);
}

double detection_density(const RateSet& rates, double t) {
    rates.validate();
    if (t < 0) return 0.0;
    const double g = rates.gamma_a;
    if (!rates.filtered) return g * std::exp(-g * t);
    const double u = filter_envelope(rates, t);
    return g * u * u;
}

double detection_tail(const RateSet& rates, double t) {
    rates.validate();
    const double g = rates.gamma_a;
    if (t <= 0) return detection_total(rates);
    if (!rates.filtered) return std::exp(-g * t);
    const double G = rates.Gamma;
    const double s = 0.5 * (g + G);
    const double d = G - g;
    if (std::abs(d) * t > 4.0) {
        const double a = std::exp(-g * t);
        const double b = std::exp(-G * t);
        const double m = std::exp(-s * t);
        return (G / (d * d)) * (G * a + g * b - (2.0 * g * G / s) * m);
    }
    if (s * t > 1500.0) return 0.0;
    const double sc2 = sinhc(d * t / 4);
    const double sc1 = sinhc(d * t / 2);
    return G * std::exp(-s * t) * (s * t * t / 4 * sc2 * sc2 + t / 2 * sc1 + 1.0 / (2.0 * s));
}

}  // namespace fockse
