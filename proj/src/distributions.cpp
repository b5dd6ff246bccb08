#include "fockse/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockse/combinatorics.hpp"

namespace fockse {

namespace {

void check_bundle(int N) {
    if (N < 1) throw std::invalid_argument("bundle size N must be >= 1");
}

void check_photon_index(int N, int k) {
    check_bundle(N);
    if (k < 1 || k > N) throw std::out_of_range("photon index k out of 1..N");
}

double binom_d(int n, int k) { return to_double(Rational(binomial(n, k))); }

}  // namespace

double efficiency_unfiltered(const RateSet& rates, double T) {
    rates.validate();
    if (T < 0) throw std::invalid_argument("efficiency: negative time window");
    return rates.xi * -std::expm1(-rates.gamma_a * T);
}

double efficiency_filtered(const RateSet& rates, double T) {
    rates.validate();
    if (!rates.filtered) throw std::invalid_argument("efficiency_filtered: rates are unfiltered");
    if (T < 0) throw std::invalid_argument("efficiency: negative time window");
    // gamma xi int_0^T |Xi|^2 = xi (tail(0) - tail(T)); monotone by construction.
    if (std::isinf(T)) return rates.xi * detection_total(rates);
    return rates.xi * (detection_total(rates) - detection_tail(rates, T));
}

double efficiency(const RateSet& rates, double T) {
    return rates.filtered ? efficiency_filtered(rates, T) : efficiency_unfiltered(rates, T);
}

std::vector<double> counting_distribution(const RateSet& rates, int N, double T) {
    check_bundle(N);
    const double p = efficiency(rates, T);
    std::vector<double> out(N + 1);
    for (int n = 0; n <= N; ++n)
        out[n] = binom_d(N, n) * std::pow(p, n) * std::pow(1.0 - p, N - n);
    return out;
}

std::vector<Rational> counting_distribution_exact(const Rational& success, int N) {
    check_bundle(N);
    if (success < 0 || success > 1)
        throw std::invalid_argument("counting: success probability outside [0,1]");
    std::vector<Rational> out(N + 1);
    for (int n = 0; n <= N; ++n)
        out[n] = Rational(binomial(N, n)) * rational_pow(success, n) *
                 rational_pow(Rational(1) - success, N - n);
    return out;
}

Rational counting_mandel_series_exact(const Rational& success, int N, int n) {
    check_bundle(N);
    if (n < 0 || n > N) throw std::out_of_range("counting: n out of 0..N");
    // Terms vanish past k = N because <:Omega^k:> annihilates |N>.
    Rational sum(0);
    for (int k = n; k <= N; ++k) {
        Rational term = rational_pow(success, k) * Rational(factorial(N)) /
                        Rational(factorial(N - k));
        term /= Rational(factorial(n)) * Rational(factorial(k - n));
        if ((n + k) % 2 != 0) term = -term;
        sum += term;
    }
    return sum;
}

double counting_mandel_series(const RateSet& rates, int N, double T, int n) {
    return to_double(counting_mandel_series_exact(rational_from_double(efficiency(rates, T)), N, n));
}

Rational detect_probability_exact(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_bundle(N);
    if (k < 0 || k > N) throw std::out_of_range("detect_probability: k out of 0..N");
    if (!rates.filtered) return k == N ? Rational(1) : Rational(0);
    const Rational gp = rates.gamma_plus();
    return Rational(binomial(N, k)) * rational_pow(rates.gamma_a, N - k) *
           rational_pow(rates.Gamma, k) * rational_pow(gp, -N);
}

double detect_probability(const RateSet& rates, int N, int k) {
    return to_double(detect_probability_exact(to_exact(rates), N, k));
}

Rational detected_fraction_exact(const RateSetQ& rates, int N, int n) {
    rates.validate();
    check_photon_index(N, n);
    if (!rates.filtered) return Rational(1);
    Rational direct(0);
    for (int k = n; k <= N; ++k) direct += detect_probability_exact(rates, N, k);
    const Rational x = -rates.Gamma / rates.gamma_a;
    Rational hyp = rational_pow(rates.Gamma, n) * rational_pow(rates.gamma_a, N - n) *
                   rational_pow(rates.gamma_plus(), -N) * Rational(binomial(N, n)) *
                   hyp2f1_terminating(n - N, n + 1, x);
    if (hyp != direct)
        throw std::logic_error("detected_fraction: hypergeometric and direct sums disagree");
    return direct;
}

double detected_fraction(const RateSet& rates, int N, int n) {
    return to_double(detected_fraction_exact(to_exact(rates), N, n));
}

KernelPair kernel_pair(const RateSet& rates, double t) {
    rates.validate();
    if (t < 0) throw std::invalid_argument("kernel_pair: negative time");
    const double g = rates.gamma_a;
    if (!rates.filtered) {
        const double e = std::exp(-g * t);
        return {e / g, -e};
    }
    if (rates.Gamma == g) {
        // Scaled confluent limit: the raw pair vanishes identically.
        const double rho = g * g * g * t * t * std::exp(-g * t) / 4;
        return {detection_tail(rates, t), -rho};
    }
    const double G = rates.Gamma;
    const double gp = g + G;
    const double a = std::exp(-g * t), b = std::exp(-G * t);
    const double value = a / g + b / G - 4 * std::exp(-gp * t / 2) / gp;
    const double da = std::exp(-G * t / 2) - std::exp(-g * t / 2);
    return {value, -da * da};
}

double joint_density(const RateSet& rates, std::span<const double> times) {
    rates.validate();
    const int N = static_cast<int>(times.size());
    check_bundle(N);
    double prev = 0.0;
    for (double t : times) {
        if (t < prev) return 0.0;  // off the ordered cone
        prev = t;
    }
    if (times.front() < 0) return 0.0;
    double out = to_double(Rational(factorial(N)));
    for (double t : times) out *= detection_density(rates, t);
    return out;
}

double marginal_density(const RateSet& rates, int N, int k, double t) {
    rates.validate();
    check_photon_index(N, k);
    if (t < 0) return 0.0;
    const double tail = detection_tail(rates, t);
    const double head = detection_total(rates) - tail;
    return k * binom_d(N, k) * std::pow(tail, N - k) * std::pow(head, k - 1) *
           detection_density(rates, t);
}

double marginal_density_broken(const RateSet& rates, int N, int n, double t) {
    rates.validate();
    check_photon_index(N, n);
    if (!rates.filtered) return marginal_density(rates, N, n, t);
    if (t < 0) return 0.0;
    const double loss = rates.gamma_a / rates.gamma_plus();
    double sum = 0.0;
    for (int k = n; k <= N; ++k)
        sum += binom_d(N, k) * std::pow(loss, N - k) * marginal_density(rates, k, n, t);
    return sum;
}

ExpPolynomial marginal_exact(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_photon_index(N, k);
    const ExactKernel kern = exact_kernel(rates);
    const ExpPolynomial head = ExpPolynomial::constant(kern.total) - kern.tail;
    ExpPolynomial out = kern.tail.pow(N - k) * head.pow(k - 1) * kern.density;
    out *= Rational(k) * Rational(binomial(N, k));
    return out;
}

ExpPolynomial marginal_broken_exact(const RateSetQ& rates, int N, int n) {
    rates.validate();
    check_photon_index(N, n);
    if (!rates.filtered) return marginal_exact(rates, N, n);
    const Rational loss = rates.gamma_a / rates.gamma_plus();
    ExpPolynomial out;
    for (int k = n; k <= N; ++k)
        out += Rational(binomial(N, k)) * rational_pow(loss, N - k) * marginal_exact(rates, k, n);
    return out;
}

double first_last_density(const RateSet& rates, int N, double t1, double tN) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("first_last_density: N must be >= 2");
    if (t1 < 0 || t1 > tN) return 0.0;
    const double between = detection_tail(rates, t1) - detection_tail(rates, tN);
    double out = to_double(Rational(factorial(N)) / Rational(factorial(N - 2)));
    out *= detection_density(rates, t1) * detection_density(rates, tN);
    return out * std::pow(between, N - 2);
}

double first_last_density_sum(const RateSet& rates, int N, double t1, double tN) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("first_last_density: N must be >= 2");
    if (!rates.filtered)
        throw std::invalid_argument("first_last_density_sum: needs a finite filter");
    if (rates.Gamma == rates.gamma_a)
        throw std::domain_error("first_last_density_sum: singular at Gamma == gamma_a");
    if (t1 < 0 || t1 > tN) return 0.0;
    const double g = rates.gamma_a, G = rates.Gamma;
    const double gp = g + G, gm = G - g;
    double total = 0.0;
    for_each_composition(N - 2, 6, [&](const std::vector<unsigned>& a) {
        const unsigned k1 = a[0], k2 = a[1], k3 = a[2], k4 = a[3], k5 = a[4], k6 = a[5];
        for_each_composition(2, 4, [&](const std::vector<unsigned>& b) {
            const unsigned k7 = b[0], k8 = b[1], k9 = b[2], k10 = b[3];
            double fac = 1.0;
            for (unsigned kj : {k1, k2, k3, k4, k5, k6, k7, k8, k9, k10})
                fac /= to_double(Rational(factorial(kj)));
            const double rate_last = g * (2 * k1 + k7 + k8) + G * (2 * k2 + k9 + k10) + gp * k3;
            const double rate_first = g * (2 * k4 + k7 + k9) + G * (2 * k5 + k8 + k10) + gp * k6;
            double term = fac * std::exp(-tN * rate_last / 2 - t1 * rate_first / 2);
            term /= std::pow(g, k1 + k4) * std::pow(G, k2 + k5) * std::pow(gp / 4, k3 + k6);
            if ((k3 + k4 + k5 + k8 + k9) % 2 != 0) term = -term;
            total += term;
        });
    });
    double pref = 2.0 * to_double(Rational(factorial(N))) * std::pow(G / gm, 2 * N);
    pref *= std::pow(-g, N);
    return pref * total;
}

std::complex<double> filter_response(const RateSet& rates, double t) {
    rates.validate();
    if (!rates.filtered) throw std::invalid_argument("filter_response: rates are unfiltered");
    if (t < 0) return {0.0, 0.0};
    // Global phase e^{-i omega_a t}; |Xi|^2 is omega_a-independent.
    const std::complex<double> phase = std::polar(1.0, -rates.omega_a * t);
    return phase * filter_envelope(rates, t);
}

CorrelatorResult fock_correlator(const RateSet& rates, int N, std::span<const double> primed,
                                 std::span<const double> unprimed) {
    rates.validate();
    check_bundle(N);
    if (primed.size() != unprimed.size())
        throw std::invalid_argument("fock_correlator: operator lists differ in length");
    const int m = static_cast<int>(primed.size());
    if (m > N) return {{0.0, 0.0}, true};
    const double g = rates.gamma_a, w = rates.omega_a;
    std::complex<double> out = to_double(Rational(factorial(N)) / Rational(factorial(N - m)));
    for (double tp : primed) out *= std::exp(std::complex<double>(-g / 2 * tp, w * tp));
    for (double t : unprimed) out *= std::exp(std::complex<double>(-g / 2 * t, -w * t));
    return {out, false};
}

}  // namespace fockse
