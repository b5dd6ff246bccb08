#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fockse/rational.hpp"

namespace fockse {

// Exact finite sum  f(t) = sum_j c_j t^{m_j} e^{-r_j t}  with rational c_j
// and rates r_j >= 0. Closed under +, -, *, integer powers, differentiation
// and definite integration, which is what makes every moment of the emission
// marginals an exact rational.
//
// Canonical form: terms are merged on exactly equal (power, rate) and zero
// coefficients are dropped; the zero function has no terms.
class ExpPolynomial {
public:
    struct Term {
        unsigned power;
        Rational rate;
        Rational coeff;
    };

    ExpPolynomial() = default;

    static ExpPolynomial constant(const Rational& c) { return term(c, 0, Rational(0)); }
    static ExpPolynomial term(const Rational& coeff, unsigned power, const Rational& rate);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::vector<Term> terms() const;  // sorted by (power, rate)

    ExpPolynomial& operator+=(const ExpPolynomial& other);
    ExpPolynomial& operator-=(const ExpPolynomial& other);
    ExpPolynomial& operator*=(const ExpPolynomial& other);
    ExpPolynomial& operator*=(const Rational& scale);
    ExpPolynomial operator-() const;

    friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) { return a += b; }
    friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) { return a -= b; }
    friend ExpPolynomial operator*(ExpPolynomial a, const ExpPolynomial& b) { return a *= b; }
    friend ExpPolynomial operator*(ExpPolynomial a, const Rational& s) { return a *= s; }
    friend ExpPolynomial operator*(const Rational& s, ExpPolynomial a) { return a *= s; }
    bool operator==(const ExpPolynomial& other) const { return terms_ == other.terms_; }

    ExpPolynomial pow(unsigned n) const;
    ExpPolynomial derivative() const;

    // t^j * f(t); moments reduce to plain integrals through this.
    ExpPolynomial multiplied_by_power(unsigned j) const;

    // Exact f(0) (only power-0 terms survive).
    Rational at_zero() const;

    // integral_0^inf f(t) dt = sum c_j m_j! / r_j^{m_j+1}.
    // Throws std::domain_error("divergent integral") if some term has r = 0.
    Rational integral() const;

    // integral_0^inf t^j f(t) dt.
    Rational moment(unsigned j) const;

    // x |-> integral_x^inf f(t) dt (requires all rates > 0).
    ExpPolynomial tail_integral() const;

    // x |-> integral_0^x f(t) dt (rate-0 terms integrate to x^{m+1}/(m+1)).
    ExpPolynomial head_integral() const;

    // tau |-> integral_0^inf f(t) g(t + tau) dt. Needs r_f + r_g > 0 for
    // every term pair. Turns the two-point kernel products of the joint pdf
    // into closed-form waiting-time distributions.
    static ExpPolynomial correlate(const ExpPolynomial& f, const ExpPolynomial& g);

    // Floating-point evaluation.
    double operator()(double t) const;

private:
    using Key = std::pair<unsigned, Rational>;
    std::map<Key, Rational> terms_;

    void add_term(unsigned power, const Rational& rate, const Rational& coeff);
};

}  // namespace fockse
