#include "fockse/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "fockse/combinatorics.hpp"
#include "fockse/distributions.hpp"

namespace fockse {

namespace {

void check_pair(int N, int k) {
    if (N < 1) throw std::invalid_argument("moments: N must be >= 1");
    if (k < 1 || k > N) throw std::out_of_range("moments: k out of 1..N");
}

Rational p_nn(const RateSetQ& rates, int N) {
    if (!rates.filtered) return Rational(1);
    return rational_pow(rates.Gamma / rates.gamma_plus(), N);
}

// Shared body of the Eq.-style triple composition sums for <t_k^j>,
// j = 1 (denominator power 2, prefactor 2 N!) or j = 2 (power 3, 4 N!).
Rational composition_moment_sum(const RateSetQ& rates, int N, int k, int denom_power) {
    const Rational& g = rates.gamma_a;
    const Rational& G = rates.Gamma;
    const Rational gp = rates.gamma_plus();
    const Rational quarter_gp = gp / 4;
    Rational total(0);
    for_each_composition(N - k, 3, [&](const std::vector<unsigned>& a) {
        const unsigned k1 = a[0], k2 = a[1], k3 = a[2];
        for_each_composition(k - 1, 6, [&](const std::vector<unsigned>& b) {
            const unsigned k4 = b[0], k5 = b[1], k6 = b[2], k7 = b[3], k8 = b[4], k9 = b[5];
            for_each_composition(2, 2, [&](const std::vector<unsigned>& c) {
                const unsigned k10 = c[0], k11 = c[1];
                Rational fac(1);
                for (unsigned kj : {k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11})
                    fac /= Rational(factorial(kj));
                // twice the decay rate of the term, kept integer-weighted
                const Rational rate =
                    (g * (2 * (k1 + k7) + k11) + G * (2 * (k2 + k8) + k10) + gp * (k3 + k9)) / 2;
                Rational term = fac * rational_pow(g, -static_cast<long>(k1 + k4 + k7)) *
                                rational_pow(G, -static_cast<long>(k2 + k5 + k8)) *
                                rational_pow(quarter_gp, -static_cast<long>(k3 + k6 + k9)) *
                                rational_pow(rate, -denom_power);
                if ((k3 + k6 + k7 + k8 + k11) % 2 != 0) term = -term;
                total += term;
            });
        });
    });
    const Rational pref = rational_pow(g * G * gp / (rates.gamma_minus() * rates.gamma_minus()),
                                       N) *
                          Rational(factorial(N));
    return (denom_power == 2 ? 2 : 4) * pref * total;
}

Rational exp_poly_moment(const RateSetQ& rates, int N, int k, unsigned j) {
    return marginal_exact(rates, N, k).moment(j) / p_nn(rates, N);
}

Rational cross_moment_exp_poly(const RateSetQ& rates, int N) {
    // <t1 tN> = (N!/(N-2)!)/P(N,N) * int tN rho(tN) int_0^{tN} t1 rho(t1)
    //           (tail(t1) - tail(tN))^{N-2} dt1 dtN, binomially expanded so
    //           the inner integral is a head integral in tN.
    const ExactKernel kern = exact_kernel(rates);
    Rational total(0);
    for (int j = 0; j <= N - 2; ++j) {
        ExpPolynomial inner =
            (kern.density * kern.tail.pow(j)).multiplied_by_power(1).head_integral();
        ExpPolynomial outer = kern.density * kern.tail.pow(N - 2 - j) * inner;
        Rational piece = Rational(binomial(N - 2, j)) * outer.moment(1);
        if ((N - 2 - j) % 2 != 0) piece = -piece;
        total += piece;
    }
    total *= Rational(factorial(N)) / Rational(factorial(N - 2));
    return total / p_nn(rates, N);
}

}  // namespace

MomentResult make_moment(Rational exact, MomentPipeline pipeline) {
    MomentResult m;
    m.value = to_double(exact);
    m.exact = std::move(exact);
    m.pipeline = pipeline;
    return m;
}

MomentResult mean_time_exact(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_pair(N, k);
    return make_moment(exp_poly_moment(rates, N, k, 1), MomentPipeline::exp_poly);
}

MomentResult mean_time_sum(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_pair(N, k);
    if (!rates.filtered || rates.confluent()) return mean_time_exact(rates, N, k);
    return make_moment(composition_moment_sum(rates, N, k, 2), MomentPipeline::combinatorial_sum);
}

MomentResult second_moment_exact(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_pair(N, k);
    return make_moment(exp_poly_moment(rates, N, k, 2), MomentPipeline::exp_poly);
}

MomentResult second_moment_sum(const RateSetQ& rates, int N, int k) {
    rates.validate();
    check_pair(N, k);
    if (!rates.filtered || rates.confluent()) return second_moment_exact(rates, N, k);
    return make_moment(composition_moment_sum(rates, N, k, 3), MomentPipeline::combinatorial_sum);
}

Rational time_power_moment(const RateSetQ& rates, int N, int k, unsigned j) {
    rates.validate();
    check_pair(N, k);
    return exp_poly_moment(rates, N, k, j);
}

Rational variance_exact(const RateSetQ& rates, int N, int k) {
    const Rational mean = exp_poly_moment(rates, N, k, 1);
    Rational var = exp_poly_moment(rates, N, k, 2) - mean * mean;
    if (var < 0)
        throw std::logic_error("variance_exact: negative variance (internal inconsistency)");
    return var;
}

double std_dev(const RateSetQ& rates, int N, int k) {
    return std::sqrt(to_double(variance_exact(rates, N, k)));
}

MomentResult cross_moment_first_last(const RateSetQ& rates, int N) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("cross_moment_first_last: N must be >= 2");
    return make_moment(cross_moment_exp_poly(rates, N), MomentPipeline::exp_poly);
}

MomentResult cross_moment_first_last_sum(const RateSetQ& rates, int N) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("cross_moment_first_last: N must be >= 2");
    if (!rates.filtered || rates.confluent()) return cross_moment_first_last(rates, N);
    const Rational& g = rates.gamma_a;
    const Rational& G = rates.Gamma;
    const Rational gp = rates.gamma_plus();
    const Rational quarter_gp = gp / 4;
    Rational total(0);
    for_each_composition(N - 2, 6, [&](const std::vector<unsigned>& a) {
        const unsigned k1 = a[0], k2 = a[1], k3 = a[2], k4 = a[3], k5 = a[4], k6 = a[5];
        for_each_composition(2, 4, [&](const std::vector<unsigned>& b) {
            const unsigned k7 = b[0], k8 = b[1], k9 = b[2], k10 = b[3];
            Rational fac(1);
            for (unsigned kj : {k1, k2, k3, k4, k5, k6, k7, k8, k9, k10})
                fac /= Rational(factorial(kj));
            const Rational num = g * (6 * k1 + 2 * k4 + 4 * k7 + 3 * k8 + k9) +
                                 G * (6 * k2 + 2 * k5 + k8 + 3 * k9 + 4 * k10) +
                                 gp * (3 * k3 + k6);
            const Rational rate_last = g * (2 * k1 + k7 + k8) + G * (2 * k2 + k9 + k10) + gp * k3;
            const Rational rate_both = g * (2 * (k1 + k4 + k7) + k8 + k9) +
                                       G * (2 * (k2 + k5 + k10) + k8 + k9) + gp * (k3 + k6);
            Rational term = fac * num * rational_pow(g, -static_cast<long>(k1 + k4)) *
                            rational_pow(G, -static_cast<long>(k2 + k5)) *
                            rational_pow(quarter_gp, -static_cast<long>(k3 + k6)) *
                            rational_pow(rate_last, -2) * rational_pow(rate_both, -3);
            if ((k3 + k4 + k5 + k8 + k9) % 2 != 0) term = -term;
            total += term;
        });
    });
    Rational pref = rational_pow(-g * G * gp / (rates.gamma_minus() * rates.gamma_minus()), N);
    pref *= 32 * Rational(factorial(N));
    return make_moment(pref * total, MomentPipeline::combinatorial_sum);
}

Rational pearson_squared_exact(const RateSetQ& rates, int N) {
    const Rational m1 = exp_poly_moment(rates, N, 1, 1);
    const Rational mN = exp_poly_moment(rates, N, N, 1);
    const Rational cov = cross_moment_first_last(rates, N).exact - m1 * mN;
    const Rational v1 = variance_exact(rates, N, 1);
    const Rational vN = variance_exact(rates, N, N);
    return cov * cov / (v1 * vN);
}

Rational reflective_squared_exact(const RateSetQ& rates, int N) {
    const Rational cross = cross_moment_first_last(rates, N).exact;
    return cross * cross / (exp_poly_moment(rates, N, 1, 2) * exp_poly_moment(rates, N, N, 2));
}

double pearson(const RateSetQ& rates, int N) {
    const Rational m1 = exp_poly_moment(rates, N, 1, 1);
    const Rational mN = exp_poly_moment(rates, N, N, 1);
    const Rational cov = cross_moment_first_last(rates, N).exact - m1 * mN;
    const double denom =
        std::sqrt(to_double(variance_exact(rates, N, 1) * variance_exact(rates, N, N)));
    return to_double(cov) / denom;
}

double reflective(const RateSetQ& rates, int N) {
    const Rational cross = cross_moment_first_last(rates, N).exact;
    const double denom =
        std::sqrt(to_double(exp_poly_moment(rates, N, 1, 2) * exp_poly_moment(rates, N, N, 2)));
    return to_double(cross) / denom;
}

LengthStats bundle_length_stats(const RateSetQ& rates, int N) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("bundle_length_stats: N must be >= 2");
    const Rational m1 = exp_poly_moment(rates, N, 1, 1);
    const Rational mN = exp_poly_moment(rates, N, N, 1);
    const Rational cross = cross_moment_exp_poly(rates, N);
    Rational var = variance_exact(rates, N, 1) + variance_exact(rates, N, N) + 2 * (m1 * mN - cross);
    if (var < 0)
        throw std::logic_error("bundle_length_stats: negative variance (internal inconsistency)");
    LengthStats out;
    out.mean_exact = mN - m1;
    out.variance_exact = var;
    out.mean = to_double(out.mean_exact);
    out.stddev = std::sqrt(to_double(var));
    return out;
}

Rational mean_time_broken(const RateSetQ& rates, int N, int n) {
    rates.validate();
    check_pair(N, n);
    const ExpPolynomial marg = marginal_broken_exact(rates, N, n);
    return marg.moment(1) / detected_fraction_exact(rates, N, n);
}

Rational unfiltered_mean(int N, int k) {
    check_pair(N, k);
    return harmonic(N) - harmonic(N - k);
}

Rational unfiltered_mean_alternating(int N, int k) {
    check_pair(N, k);
    Rational sum(0);
    for (int l = 0; l <= k - 1; ++l) {
        Rational term = Rational(binomial(k - 1, l)) / Rational((N - l) * (N - l));
        if ((k - 1 - l) % 2 != 0) term = -term;
        sum += term;
    }
    return Rational(k) * Rational(binomial(N, k)) * sum;
}

Rational unfiltered_variance(int N, int k) {
    check_pair(N, k);
    return harmonic(N, 2) - harmonic(N - k, 2);
}

Rational unfiltered_second_moment(int N, int k) {
    const Rational mean = unfiltered_mean(N, k);
    return unfiltered_variance(N, k) + mean * mean;
}

Rational unfiltered_second_moment_alternating(int N, int k) {
    check_pair(N, k);
    Rational sum(0);
    for (int l = 0; l <= k - 1; ++l) {
        long d = N - l;
        Rational term = Rational(binomial(k - 1, l)) / Rational(d * d * d);
        if ((k - 1 - l) % 2 != 0) term = -term;
        sum += term;
    }
    return 2 * Rational(k) * Rational(binomial(N, k)) * sum;
}

double unfiltered_std(int N, int k) { return std::sqrt(to_double(unfiltered_variance(N, k))); }

Rational unfiltered_cross_moment(int N) {
    if (N < 2) throw std::invalid_argument("unfiltered_cross_moment: N must be >= 2");
    return harmonic(N) / N + Rational(1, static_cast<long>(N) * N);
}

Rational unfiltered_cross_moment_alternating(int N) {
    if (N < 2) throw std::invalid_argument("unfiltered_cross_moment: N must be >= 2");
    Rational sum(0);
    for (int l = 0; l <= N - 2; ++l) {
        Rational term = Rational(binomial(N - 2, l)) * Rational(N + 2 * l + 2) /
                        Rational(static_cast<long>(N) * N * (l + 1) * (l + 1));
        if (l % 2 != 0) term = -term;
        sum += term;
    }
    return Rational(N - 1) * sum;
}

std::pair<Rational, Rational> length_asymptotes(int N) {
    if (N < 2) throw std::invalid_argument("length_asymptotes: N must be >= 2");
    const Rational h = harmonic(N - 1);
    return {h, h};
}

Rational peak_average_weighted_exact(const RateSetQ& rates, int N) {
    rates.validate();
    if (N < 2) throw std::invalid_argument("peak_average_weighted: N must be >= 2");
    if (!rates.filtered) return harmonic(N - 1) / Rational(N - 1) / rates.gamma_a;
    // Detected sub-bundles of size k are distributed as full k-bundles, so
    // each contributes its own length per gap, weighted by P(k, N).
    Rational num(0), den(0);
    for (int k = 2; k <= N; ++k) {
        const Rational pk = detect_probability_exact(rates, N, k);
        const Rational tau_k =
            exp_poly_moment(rates, k, k, 1) - exp_poly_moment(rates, k, 1, 1);
        num += tau_k / Rational(k - 1) * pk;
        den += pk;
    }
    return num / den;
}

double peak_average_weighted(const RateSetQ& rates, int N) {
    return to_double(peak_average_weighted_exact(rates, N));
}

}  // namespace fockse
