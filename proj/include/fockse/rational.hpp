#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fockse {

// Exact arithmetic backing the whole analytic pipeline. mpq_class keeps
// values reduced with positive denominator, which is exactly the invariant
// the rest of the library relies on.
using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(unsigned n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return Integer(0);
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// base^exp with negative exponents allowed (base must be nonzero then).
inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    Rational out;
    const auto n = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), n);
    if (exp < 0) {
        out = Rational(out.get_den(), out.get_num());
        out.canonicalize();
    }
    return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// "num/den", or just "num" for integers.
inline std::string to_fraction_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Exact value of a finite double (doubles are dyadic rationals).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    return Rational(x);
}

// Accepts "3/4", "-2", "0.125", "2.5e-3". Decimal inputs convert exactly.
Rational rational_from_string(const std::string& text);

}  // namespace fockse
