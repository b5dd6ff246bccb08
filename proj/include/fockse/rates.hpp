#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fockse/rational.hpp"

namespace fockse {

// Physical parameters of a filtered spontaneous-emission source. Gamma is
// the Lorentzian detector bandwidth; `filtered == false` is the distinguished
// unfiltered state (an ideal broadband detector), not a large-Gamma stand-in.
// Derived combinations are recomputed on demand, never stored.
//
// Times everywhere are in units of 1/gamma_a (gamma_a defaults to 1).
template <class T>
struct BasicRates {
    T gamma_a{1};
    T Gamma{0};
    T xi{1};
    double omega_a = 0.0;  // enters complex-valued observables only
    bool filtered = true;

    T gamma_plus() const { return Gamma + gamma_a; }
    T gamma_minus() const { return Gamma - gamma_a; }
    bool confluent() const { return filtered && Gamma == gamma_a; }

    void validate() const {
        if (!(gamma_a > 0)) throw std::invalid_argument("rates: gamma_a must be > 0");
        if (filtered && !(Gamma > 0)) throw std::invalid_argument("rates: Gamma must be > 0");
        if (xi < 0 || xi > 1) throw std::invalid_argument("rates: xi must lie in [0,1]");
    }
};

using RateSet = BasicRates<double>;
using RateSetQ = BasicRates<Rational>;

inline RateSet unfiltered_rates(double gamma_a = 1.0, double xi = 1.0, double omega_a = 0.0) {
    RateSet r{gamma_a, 0.0, xi, omega_a, false};
    r.validate();
    return r;
}

inline RateSet filtered_rates(double Gamma, double gamma_a = 1.0, double xi = 1.0,
                              double omega_a = 0.0) {
    RateSet r{gamma_a, Gamma, xi, omega_a, true};
    r.validate();
    return r;
}

inline RateSetQ unfiltered_rates_q(const Rational& gamma_a = Rational(1),
                                   const Rational& xi = Rational(1)) {
    RateSetQ r{gamma_a, Rational(0), xi, 0.0, false};
    r.validate();
    return r;
}

inline RateSetQ filtered_rates_q(const Rational& Gamma, const Rational& gamma_a = Rational(1),
                                 const Rational& xi = Rational(1)) {
    RateSetQ r{gamma_a, Gamma, xi, 0.0, true};
    r.validate();
    return r;
}

// Exact rationalization of a double-precision rate set (doubles are dyadic).
inline RateSetQ to_exact(const RateSet& r) {
    RateSetQ q{rational_from_double(r.gamma_a),
               r.filtered ? rational_from_double(r.Gamma) : Rational(0),
               rational_from_double(r.xi), r.omega_a, r.filtered};
    q.validate();
    return q;
}

inline RateSet to_double_rates(const RateSetQ& q) {
    RateSet r{to_double(q.gamma_a), q.filtered ? to_double(q.Gamma) : 0.0, to_double(q.xi),
              q.omega_a, q.filtered};
    r.validate();
    return r;
}

// Initial Fock state |N><N|.
struct BundleSpec {
    int photons = 1;
    static constexpr int kDefaultCap = 10;

    explicit BundleSpec(int n, int cap = kDefaultCap) : photons(n) {
        if (n < 1 || n > cap) throw std::invalid_argument("BundleSpec: N out of range");
    }
};

// Incoherently pumped cavity (thermal source) seen through a filter of
// bandwidth Gamma; `filtered == false` means the bare field.
struct ThermalParams {
    double pump = 0.0;     // P_a
    double gamma_a = 1.0;  // decay
    double Gamma = 0.0;    // filter bandwidth when filtered
    bool filtered = true;

    double theta() const { return pump / gamma_a; }
    double mean_photons() const { return pump / (gamma_a - pump); }
    // Q_a^2 = P^4 - 4P^3 g + 10 P^2 g^2 - 4 P g^3 + g^4 (always positive).
    double q_factor() const {
        const double p = pump, g = gamma_a;
        return std::sqrt(p * p * p * p - 4 * p * p * p * g + 10 * p * p * g * g - 4 * p * g * g * g +
                         g * g * g * g);
    }

    void validate() const {
        if (!(gamma_a > 0)) throw std::invalid_argument("thermal: gamma_a must be > 0");
        if (pump < 0 || pump >= gamma_a)
            throw std::invalid_argument("thermal: need 0 <= P_a < gamma_a for a steady state");
        if (filtered && !(Gamma > 0)) throw std::invalid_argument("thermal: Gamma must be > 0");
    }
};

inline ThermalParams thermal_params(double pump, double gamma_a, double Gamma) {
    ThermalParams p{pump, gamma_a, Gamma, true};
    p.validate();
    return p;
}

inline ThermalParams thermal_params_unfiltered(double pump, double gamma_a = 1.0) {
    ThermalParams p{pump, gamma_a, 0.0, false};
    p.validate();
    return p;
}

}  // namespace fockse
