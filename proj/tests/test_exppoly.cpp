#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fockse/combinatorics.hpp"
#include "fockse/exppoly.hpp"
#include "fockse/montecarlo.hpp"
#include "testutil.hpp"

using namespace fockse;
using testutil::Q;

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0, 1) == Rational(0));
    CHECK(harmonic(4, 1) == Q(25, 12));
    CHECK(harmonic(3, 2) == Q(49, 36));  // 1 + 1/4 + 1/9
    CHECK(harmonic(5, 1) == Q(137, 60));
    CHECK(harmonic(2, 2) == Q(5, 4));
    CHECK(harmonic(4, 2) == Q(205, 144));
    for (unsigned n = 1; n <= 50; ++n)
        CHECK(harmonic(n, 1) - harmonic(n - 1, 1) == Rational(1, n));
    CHECK_THROWS(harmonic(3, 0));
}

TEST_CASE("multinomial coefficients") {
    CHECK(multinomial({1, 1, 0}) == 2);
    CHECK(multinomial({2, 0, 0}) == 1);
    CHECK(multinomial({3, 2, 1}) == 60);  // 6!/(3!2!1!)

    // Sum over all compositions of N into 3 parts is 3^N.
    for (unsigned n = 1; n <= 8; ++n) {
        Integer sum(0);
        for (const auto& c : compositions(n, 3)) sum += multinomial(c);
        Integer expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), 3, n);
        CHECK(sum == expect);
    }
}

TEST_CASE("composition enumeration is lexicographic and exhaustive") {
    const auto all = compositions(3, 3);
    CHECK(all.size() == 10);  // C(5,2)
    std::set<std::vector<unsigned>> seen;
    std::vector<unsigned> prev;
    for (const auto& c : all) {
        CHECK(c.total() == 3);
        if (!prev.empty()) CHECK(prev < c.parts());
        prev = c.parts();
        seen.insert(c.parts());
    }
    CHECK(seen.size() == all.size());
    CHECK(all.front().parts() == std::vector<unsigned>{0, 0, 3});
    CHECK(all.back().parts() == std::vector<unsigned>{3, 0, 0});
}

TEST_CASE("terminating 2F1") {
    CHECK(hyp2f1_terminating(0, 3, Q(-7, 1)) == Rational(1));
    CHECK(hyp2f1_terminating(-3, 3, Q(-1, 1)) == Q(13, 5));
    // b = -1, c = 2: 1 - x/2
    for (long num = -3; num <= 3; ++num) {
        const Rational x = Q(num, 2);
        CHECK(hyp2f1_terminating(-1, 2, x) == Rational(1) - x / 2);
    }
    CHECK_THROWS_AS(hyp2f1_terminating(-2, 0, Q(1, 2)), std::domain_error);
    CHECK_THROWS(hyp2f1_terminating(1, 2, Q(1, 2)));
}

namespace {

// g(t) for gamma = 1, Gamma = 2: e^{-t} + e^{-2t}/2 - (4/3)e^{-3t/2}
ExpPolynomial sample_kernel() {
    return ExpPolynomial::term(Q(1, 1), 0, Q(1, 1)) + ExpPolynomial::term(Q(1, 2), 0, Q(2, 1)) +
           ExpPolynomial::term(Q(-4, 3), 0, Q(3, 2));
}

ExpPolynomial random_exppoly(CounterRng& rng) {
    ExpPolynomial f;
    const int terms = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int i = 0; i < terms; ++i) {
        const long num = static_cast<long>(rng.next_u64() % 9) - 4;
        const unsigned m = static_cast<unsigned>(rng.next_u64() % 3);
        const long rnum = 1 + static_cast<long>(rng.next_u64() % 6);
        const long rden = 1 + static_cast<long>(rng.next_u64() % 3);
        f += ExpPolynomial::term(Q(num == 0 ? 1 : num, 2), m, Q(rnum, rden));
    }
    return f;
}

double quad_integral(const ExpPolynomial& f) {
    return integrate_half_line([&](double t) { return f(t); });
}

}  // namespace

TEST_CASE("definite integrals over the half line") {
    CHECK(ExpPolynomial::term(Q(1, 1), 0, Q(1, 1)).integral() == Rational(1));
    CHECK(ExpPolynomial::term(Q(1, 1), 2, Q(2, 1)).integral() == Q(1, 4));  // 2!/2^3
    CHECK(sample_kernel().integral() == Q(13, 36));
    CHECK(testutil::close_rel(quad_integral(sample_kernel()), 13.0 / 36.0, 1e-12));

    ExpPolynomial divergent = ExpPolynomial::constant(Q(1, 1));
    CHECK_THROWS_AS(divergent.integral(), std::domain_error);
    CHECK_THROWS_AS((divergent * sample_kernel() + divergent).integral(), std::domain_error);
}

TEST_CASE("antiderivatives") {
    const ExpPolynomial e = ExpPolynomial::term(Q(1, 1), 0, Q(1, 1));
    CHECK(e.tail_integral() == e);  // int_x^inf e^{-t} = e^{-x}

    // int_x^inf g' = -g for the filtered kernel derivative
    const ExpPolynomial g = sample_kernel();
    CHECK(g.derivative().tail_integral() == -g);

    // int_0^x t e^{-t} = 1 - (1+x)e^{-x}
    const ExpPolynomial te = ExpPolynomial::term(Q(1, 1), 1, Q(1, 1));
    ExpPolynomial expect = ExpPolynomial::constant(Q(1, 1)) -
                           ExpPolynomial::term(Q(1, 1), 0, Q(1, 1)) -
                           ExpPolynomial::term(Q(1, 1), 1, Q(1, 1));
    CHECK(te.head_integral() == expect);
}

TEST_CASE("algebra properties on random exp-polynomials") {
    RngSpec spec{20240811u, 0};
    for (std::uint64_t rep = 0; rep < 40; ++rep) {
        CounterRng rng(spec, rep);
        const ExpPolynomial f = random_exppoly(rng);
        const ExpPolynomial h = random_exppoly(rng);

        // linearity of the integral
        CHECK((f + h).integral() == f.integral() + h.integral());

        // product integral against adaptive quadrature
        const ExpPolynomial fh = f * h;
        CHECK(testutil::close_rel(to_double(fh.integral()), quad_integral(fh), 1e-10));

        // derivative inverts the tail integral
        CHECK(f.tail_integral().derivative() == -f);

        // head + tail partition the full integral
        const ExpPolynomial sum = f.head_integral() + f.tail_integral();
        const ExpPolynomial full = ExpPolynomial::constant(f.integral());
        CHECK(sum == full);

        // pointwise evaluation against naive reconstruction
        for (double t : {0.0, 0.3, 1.7}) {
            double naive = 0;
            for (const auto& term : f.terms())
                naive += to_double(term.coeff) * std::pow(t, term.power) *
                         std::exp(-to_double(term.rate) * t);
            CHECK(testutil::close_rel(f(t), naive, 1e-12));
        }
    }
}

TEST_CASE("moments and power shifts") {
    const ExpPolynomial g = sample_kernel();
    CHECK(g.moment(1) == g.multiplied_by_power(1).integral());
    CHECK(testutil::close_rel(to_double(g.moment(2)),
                              integrate_half_line([&](double t) { return t * t * g(t); }), 1e-10));
}

TEST_CASE("correlation integral") {
    RngSpec spec{77u, 1};
    for (std::uint64_t rep = 0; rep < 12; ++rep) {
        CounterRng rng(spec, rep);
        const ExpPolynomial f = random_exppoly(rng);
        const ExpPolynomial h = random_exppoly(rng);
        const ExpPolynomial c = ExpPolynomial::correlate(f, h);
        for (double tau : {0.0, 0.4, 1.3}) {
            const double direct = integrate_half_line([&](double t) { return f(t) * h(t + tau); });
            CHECK(testutil::close_abs(c(tau), direct, 1e-9 * (1 + std::abs(direct))));
        }
    }
}
