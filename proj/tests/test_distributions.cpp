#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "fockse/distributions.hpp"
#include "fockse/quadrature.hpp"
#include "testutil.hpp"

using namespace fockse;
using testutil::Q;
using testutil::close_abs;
using testutil::close_rel;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("unfiltered efficiency") {
    const RateSet r = unfiltered_rates();
    CHECK(efficiency_unfiltered(r, 0.0) == 0.0);
    CHECK(efficiency_unfiltered(r, kInf) == 1.0);
    CHECK(close_rel(efficiency_unfiltered(r, std::log(2.0)), 0.5, 1e-14));
    CHECK_THROWS(efficiency_unfiltered(r, -1.0));

    const RateSet half = unfiltered_rates(1.0, 0.5);
    CHECK(close_rel(efficiency_unfiltered(half, kInf), 0.5, 1e-14));
}

TEST_CASE("filtered efficiency") {
    const RateSet confluent = filtered_rates(1.0);
    CHECK(efficiency_filtered(confluent, 0.0) == 0.0);
    CHECK(close_rel(efficiency_filtered(confluent, kInf), 0.5, 1e-14));

    // wide filter recovers the unfiltered law
    const RateSet wide = filtered_rates(1e6);
    CHECK(close_abs(efficiency_filtered(wide, 1.0), efficiency_unfiltered(wide, 1.0), 1e-5));

    // direct three-term form away from confluence (the printed expression
    // itself cancels heavily at small T, hence the absolute tolerance)
    const RateSet r = filtered_rates(2.0);
    const double g = 1.0, G = 2.0, gp = 3.0, gm2 = 1.0;
    for (double T : {0.1, 0.7, 2.5, 9.0}) {
        const double direct = G / gp - (G * G * std::exp(-g * T) + G * g * std::exp(-G * T)) / gm2 +
                              4 * G * G * g * std::exp(-gp * T / 2) / (gm2 * gp);
        CHECK(close_abs(efficiency_filtered(r, T), direct, 1e-13));
    }

    // xi multiplies the whole expression
    RateSet dim = filtered_rates(2.0, 1.0, 0.25);
    CHECK(close_rel(efficiency_filtered(dim, 1.3), 0.25 * efficiency_filtered(r, 1.3), 1e-14));

    // monotone nondecreasing in T and in Gamma
    double prev = 0.0;
    for (double T = 0.0; T <= 10.0; T += 1e-2) {
        const double v = efficiency_filtered(r, T);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    prev = 0.0;
    for (double G2 = 0.05; G2 <= 20.0; G2 += 1e-2) {
        const double v = efficiency_filtered(filtered_rates(G2), 1.0);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }

    // limit consistency at the spec's grid
    for (double ratio : {1e3, 1e4}) {
        const RateSet w = filtered_rates(ratio);
        const double rel = std::abs(efficiency_filtered(w, 1.0) / efficiency_unfiltered(w, 1.0) - 1);
        CHECK(rel < 10.0 / ratio);
    }
}

TEST_CASE("counting distribution is the binomial law") {
    const auto fair = counting_distribution_exact(Q(1, 2), 2);
    CHECK(fair == std::vector<Rational>{Q(1, 4), Q(1, 2), Q(1, 4)});

    // T -> inf at the confluent point: success 1/2, p(5) = 1/32
    const RateSet r = filtered_rates(1.0);
    const auto p = counting_distribution(r, 5, kInf);
    CHECK(close_rel(p[5], 1.0 / 32.0, 1e-12));

    // exact normalization for all N <= 10 at a lopsided rational success
    for (int N = 1; N <= 10; ++N) {
        Rational sum(0);
        for (const auto& v : counting_distribution_exact(Q(3, 7), N)) sum += v;
        CHECK(sum == Rational(1));
    }
}

TEST_CASE("Mandel series oracle") {
    CHECK(counting_mandel_series_exact(Q(3, 5), 4, 4) == rational_pow(Q(3, 5), 4));
    CHECK(counting_mandel_series_exact(Q(1, 1), 3, 0) == Rational(0));

    // N = 4, success 0.3: equals C(4,2) 0.3^2 0.7^2
    const Rational p = Q(3, 10);
    CHECK(counting_mandel_series_exact(p, 4, 2) ==
          Rational(6) * p * p * (1 - p) * (1 - p));

    // series == binomial across the spec grid
    for (int N = 1; N <= 5; ++N) {
        for (double T : {0.1, 1.0, 10.0}) {
            for (const RateSet& r : {unfiltered_rates(), filtered_rates(2.0)}) {
                const auto binom = counting_distribution(r, N, T);
                for (int n = 0; n <= N; ++n)
                    CHECK(close_abs(binom[n], counting_mandel_series(r, N, T, n), 1e-10));
            }
        }
    }
}

TEST_CASE("detection probability P(k, N)") {
    CHECK(detect_probability_exact(filtered_rates_q(Q(1, 1)), 5, 4) == Q(5, 32));
    CHECK(detect_probability_exact(unfiltered_rates_q(), 3, 3) == Rational(1));
    CHECK(detect_probability_exact(filtered_rates_q(Q(2, 1)), 2, 2) == Q(4, 9));
    for (const auto& G : {Q(1, 3), Q(1, 1), Q(7, 2)}) {
        for (int N = 1; N <= 6; ++N) {
            Rational sum(0);
            for (int k = 0; k <= N; ++k) sum += detect_probability_exact(filtered_rates_q(G), N, k);
            CHECK(sum == Rational(1));
        }
    }
}

TEST_CASE("detected fraction and its hypergeometric form") {
    const RateSetQ conf = filtered_rates_q(Q(1, 1));
    CHECK(detected_fraction_exact(conf, 5, 2) == Q(26, 32));
    CHECK(detected_fraction_exact(conf, 5, 5) == Q(1, 32));

    // n = 1 complement identity for a few rate ratios
    for (const auto& G : {Q(1, 5), Q(1, 1), Q(5, 1)}) {
        const RateSetQ r = filtered_rates_q(G);
        for (int N = 1; N <= 5; ++N) {
            const Rational loss = r.gamma_a / r.gamma_plus();
            CHECK(detected_fraction_exact(r, N, 1) == Rational(1) - rational_pow(loss, N));
            // the hypergeometric/direct-sum cross assertion runs inside for every n
            for (int n = 1; n <= N; ++n) (void)detected_fraction_exact(r, N, n);
            CHECK(detected_fraction_exact(r, N, N) ==
                  detect_probability_exact(r, N, N));
        }
    }
}

TEST_CASE("kernel pair") {
    const RateSet r = filtered_rates(2.0);
    const double g = 1.0, G = 2.0;
    // g(0) = Gamma_-^2 / (gamma Gamma Gamma_+)
    CHECK(close_rel(kernel_pair(r, 0.0).value, 1.0 / (g * G * 3.0), 1e-13));
    CHECK(close_abs(kernel_pair(r, 60.0).value, 0.0, 1e-20));
    for (double t = 0.0; t < 8.0; t += 0.25) CHECK(kernel_pair(r, t).derivative <= 0.0);

    // finite-difference check on the derivative
    const double h = 1e-5;
    for (double t : {0.2, 1.0, 3.7}) {
        const double fd = (kernel_pair(r, t + h).value - kernel_pair(r, t - h).value) / (2 * h);
        CHECK(close_rel(fd, kernel_pair(r, t).derivative, 1e-7));
    }

    // confluent point returns the scaled limit pair
    const RateSet c = filtered_rates(1.0);
    for (double t : {0.0, 0.5, 2.0}) {
        const auto [value, derivative] = kernel_pair(c, t);
        CHECK(close_rel(value, std::exp(-t) * (t * t + 2 * t + 2) / 4, 1e-13));
        CHECK(close_abs(derivative, -t * t * std::exp(-t) / 4, 1e-14));
    }
}

TEST_CASE("joint density") {
    const RateSet r = filtered_rates(2.0);
    CHECK(joint_density(r, std::array{1.0, 0.5}) == 0.0);  // unordered
    CHECK(joint_density(r, std::array{-0.5, 0.5}) == 0.0);

    // N = 2 closed form 2 gamma^2 (Gamma/Gamma_-)^4 g'(t1) g'(t2)
    for (double t1 : {0.1, 0.8}) {
        for (double t2 : {1.0, 2.5}) {
            const double expect = 2.0 * std::pow(2.0 / 1.0, 4) *
                                  kernel_pair(r, t1).derivative * kernel_pair(r, t2).derivative;
            CHECK(close_rel(joint_density(r, std::array{t1, t2}), expect, 1e-12));
        }
    }

    // N = 3 cone integral equals P(3,3) = (2/3)^3
    const double cone = integrate_half_line([&](double t1) {
        return integrate_half_line([&](double u2) {
            return integrate_half_line([&](double u3) {
                return joint_density(r, std::array{t1, t1 + u2, t1 + u2 + u3});
            });
        });
    });
    CHECK(close_abs(cone, std::pow(2.0 / 3.0, 3), 1e-8));

    // unfiltered: N! gamma^N e^{-gamma sum}
    const RateSet u = unfiltered_rates();
    CHECK(close_rel(joint_density(u, std::array{0.2, 0.4, 1.0}), 6.0 * std::exp(-1.6), 1e-13));
}

TEST_CASE("marginal densities") {
    // single unfiltered photon
    const RateSet u = unfiltered_rates();
    for (double t : {0.1, 1.0, 4.0})
        CHECK(close_rel(marginal_density(u, 1, 1, t), std::exp(-t), 1e-13));

    // exact normalization at the confluent point: every k integrates to 1/32
    const RateSetQ conf = filtered_rates_q(Q(1, 1));
    for (int k = 1; k <= 5; ++k) CHECK(marginal_exact(conf, 5, k).integral() == Q(1, 32));

    // float marginals match the exact expansion pointwise (absolute floor:
    // the exact form evaluates as a sum of O(1) exponentials, so its own
    // rounding dominates where the function nearly vanishes)
    for (double G : {0.2, 1.0, 5.0}) {
        const RateSet r = filtered_rates(G);
        const ExpPolynomial exact = marginal_exact(to_exact(r), 4, 2);
        for (double t : {0.05, 0.6, 2.2, 7.0}) {
            const double e = exact(t);
            CHECK(close_abs(marginal_density(r, 4, 2, t), e, 1e-11 * (1.0 + std::abs(e))));
        }
    }

    // continuity across the confluent point: float evaluation right next to
    // Gamma = gamma matches the exact confluent branch
    const ExpPolynomial conf_marg = marginal_exact(filtered_rates_q(Q(1, 1)), 4, 2);
    for (double eps : {1e-7, -1e-7}) {
        const RateSet near = filtered_rates(1.0 + eps);
        for (double t : {0.3, 1.1, 4.0})
            CHECK(close_rel(marginal_density(near, 4, 2, t), conf_marg(t), 1e-5));
    }

    // quadrature normalization across the spec grid
    for (double G : {0.2, 1.0, 5.0}) {
        const RateSet r = filtered_rates(G);
        for (int N = 1; N <= 5; ++N) {
            const double pnn = std::pow(G / (G + 1.0), N);
            for (int k = 1; k <= N; ++k) {
                const double mass =
                    integrate_half_line([&](double t) { return marginal_density(r, N, k, t); });
                CHECK(close_abs(mass, pnn, 1e-8));
            }
        }
    }
}

TEST_CASE("broken-bundle marginals") {
    const RateSetQ conf = filtered_rates_q(Q(1, 1));
    // n = N: same object as the full marginal
    CHECK(marginal_broken_exact(conf, 5, 5) == marginal_exact(conf, 5, 5));
    // integrates to N(n, N)
    CHECK(marginal_broken_exact(conf, 5, 2).integral() == Q(26, 32));
    for (const auto& G : {Q(1, 5), Q(1, 1), Q(5, 1)}) {
        const RateSetQ r = filtered_rates_q(G);
        for (int N = 1; N <= 5; ++N)
            for (int n = 1; n <= N; ++n)
                CHECK(marginal_broken_exact(r, N, n).integral() ==
                      detected_fraction_exact(r, N, n));
    }
    // float evaluation agrees with the exact expansion
    const RateSet r = filtered_rates(1.0);
    const ExpPolynomial exact = marginal_broken_exact(conf, 5, 2);
    for (double t : {0.1, 0.9, 3.0})
        CHECK(close_rel(marginal_density_broken(r, 5, 2, t), exact(t), 1e-11));
}

TEST_CASE("first and last photon joint density") {
    const RateSet r = filtered_rates(2.0);
    CHECK(first_last_density(r, 3, 2.0, 1.0) == 0.0);
    CHECK_THROWS(first_last_density(r, 1, 0.1, 0.2));

    // N = 2 coincides with the joint pdf
    for (double t1 : {0.2, 0.9})
        for (double t2 : {1.1, 3.0})
            CHECK(close_rel(first_last_density(r, 2, t1, t2),
                            joint_density(r, std::array{t1, t2}), 1e-12));

    // compact kernel form == printed ten-index sum
    for (int N : {2, 3, 4, 5}) {
        for (double t1 : {0.15, 0.8}) {
            for (double t2 : {1.2, 2.6}) {
                CHECK(close_rel(first_last_density(r, N, t1, t2),
                                first_last_density_sum(r, N, t1, t2), 1e-9));
            }
        }
    }

    // marginalizing over t1 recovers the k = N marginal
    for (double tN : {0.8, 1.6, 3.2}) {
        const double marg =
            integrate_finite([&](double t1) { return first_last_density(r, 3, t1, tN); }, 0.0, tN);
        CHECK(close_rel(marg, marginal_density(r, 3, 3, tN), 1e-8));
    }
}

TEST_CASE("filter response") {
    const RateSet r = filtered_rates(2.0, 1.0, 1.0, 5.0);
    CHECK(filter_response(r, -0.3) == std::complex<double>(0.0, 0.0));

    // gamma int |Xi|^2 = Gamma/Gamma_+ regardless of omega_a
    const double mass =
        integrate_half_line([&](double t) { return std::norm(filter_response(r, t)); });
    CHECK(close_abs(1.0 * mass, 2.0 / 3.0, 1e-10));

    // finite-window version reproduces the filtered efficiency
    for (double T : {0.4, 1.5, 6.0}) {
        const double eff =
            integrate_finite([&](double t) { return std::norm(filter_response(r, t)); }, 0.0, T);
        CHECK(close_abs(eff, efficiency_filtered(r, T), 1e-10));
    }

    // modulus is omega-independent
    const RateSet r0 = filtered_rates(2.0, 1.0, 1.0, 0.0);
    for (double t : {0.3, 1.4})
        CHECK(close_rel(std::abs(filter_response(r, t)), std::abs(filter_response(r0, t)), 1e-13));

    // confluent limit |Xi|^2 -> (gamma t/2)^2 e^{-gamma t}
    for (double eps : {1e-6, -1e-6}) {
        const RateSet near = filtered_rates(1.0 + eps);
        for (double t : {0.5, 2.0}) {
            const double limit = (t / 2) * (t / 2) * std::exp(-t);
            CHECK(close_rel(std::norm(filter_response(near, t)), limit, 1e-5));
        }
    }
    const RateSet exact_conf = filtered_rates(1.0);
    for (double t : {0.5, 2.0})
        CHECK(close_rel(std::norm(filter_response(exact_conf, t)),
                        (t / 2) * (t / 2) * std::exp(-t), 1e-13));
}

TEST_CASE("Fock correlators") {
    const RateSet r = filtered_rates(2.0, 1.0, 1.0, 3.0);
    // population decay <a^dag a>(t) = N e^{-gamma t}
    for (double t : {0.0, 0.7, 2.0}) {
        const auto c = fock_correlator(r, 4, std::array{t}, std::array{t});
        CHECK_FALSE(c.past_fock_cutoff);
        CHECK(close_rel(c.value.real(), 4.0 * std::exp(-t), 1e-13));
        CHECK(close_abs(c.value.imag(), 0.0, 1e-13));
    }
    // annihilating past the Fock state
    const auto zero = fock_correlator(r, 2, std::array{0.1, 0.2, 0.3}, std::array{0.1, 0.2, 0.3});
    CHECK(zero.past_fock_cutoff);
    CHECK(zero.value == std::complex<double>(0.0, 0.0));
    // m = 2, N = 3, all times zero: N!/(N-m)! = 6
    const auto six = fock_correlator(r, 3, std::array{0.0, 0.0}, std::array{0.0, 0.0});
    CHECK(close_rel(six.value.real(), 6.0, 1e-14));
}
