#include "fockse/exppoly.hpp"

#include <cmath>
#include <stdexcept>

namespace fockse {

void ExpPolynomial::add_term(unsigned power, const Rational& rate, const Rational& coeff) {
    if (coeff == 0) return;
    if (rate < 0) throw std::invalid_argument("ExpPolynomial: negative rate");
    Key key(power, rate);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

ExpPolynomial ExpPolynomial::term(const Rational& coeff, unsigned power, const Rational& rate) {
    ExpPolynomial f;
    f.add_term(power, rate, coeff);
    return f;
}

std::vector<ExpPolynomial::Term> ExpPolynomial::terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [key, coeff] : terms_) out.push_back({key.first, key.second, coeff});
    return out;
}

ExpPolynomial& ExpPolynomial::operator+=(const ExpPolynomial& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key.first, key.second, coeff);
    return *this;
}

ExpPolynomial& ExpPolynomial::operator-=(const ExpPolynomial& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key.first, key.second, -coeff);
    return *this;
}

ExpPolynomial& ExpPolynomial::operator*=(const ExpPolynomial& other) {
    ExpPolynomial out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : other.terms_)
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    terms_ = std::move(out.terms_);
    return *this;
}

ExpPolynomial& ExpPolynomial::operator*=(const Rational& scale) {
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= scale;
    return *this;
}

ExpPolynomial ExpPolynomial::operator-() const {
    ExpPolynomial out(*this);
    for (auto& [key, coeff] : out.terms_) coeff = -coeff;
    return out;
}

ExpPolynomial ExpPolynomial::pow(unsigned n) const {
    ExpPolynomial out = constant(Rational(1));
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
}

ExpPolynomial ExpPolynomial::derivative() const {
    ExpPolynomial out;
    for (const auto& [key, coeff] : terms_) {
        const auto& [m, r] = key;
        if (m > 0) out.add_term(m - 1, r, coeff * Rational(m));
        out.add_term(m, r, -coeff * r);
    }
    return out;
}

ExpPolynomial ExpPolynomial::multiplied_by_power(unsigned j) const {
    ExpPolynomial out;
    for (const auto& [key, coeff] : terms_) out.add_term(key.first + j, key.second, coeff);
    return out;
}

Rational ExpPolynomial::at_zero() const {
    Rational v(0);
    for (const auto& [key, coeff] : terms_)
        if (key.first == 0) v += coeff;
    return v;
}

Rational ExpPolynomial::integral() const {
    Rational sum(0);
    for (const auto& [key, coeff] : terms_) {
        const auto& [m, r] = key;
        if (r == 0) throw std::domain_error("divergent integral: term with zero rate");
        sum += coeff * Rational(factorial(m)) * rational_pow(r, -static_cast<long>(m) - 1);
    }
    return sum;
}

Rational ExpPolynomial::moment(unsigned j) const { return multiplied_by_power(j).integral(); }

ExpPolynomial ExpPolynomial::tail_integral() const {
    // integral_x^inf t^m e^{-rt} dt = e^{-rx} sum_{j=0..m} (m!/j!) x^j / r^{m+1-j}
    ExpPolynomial out;
    for (const auto& [key, coeff] : terms_) {
        const auto& [m, r] = key;
        if (r == 0) throw std::domain_error("divergent integral: term with zero rate");
        for (unsigned j = 0; j <= m; ++j) {
            Rational c = coeff * Rational(factorial(m)) / Rational(factorial(j));
            c *= rational_pow(r, -static_cast<long>(m + 1 - j));
            out.add_term(j, r, c);
        }
    }
    return out;
}

ExpPolynomial ExpPolynomial::head_integral() const {
    ExpPolynomial out;
    for (const auto& [key, coeff] : terms_) {
        const auto& [m, r] = key;
        if (r == 0) {
            out.add_term(m + 1, Rational(0), coeff / Rational(m + 1));
            continue;
        }
        // integral_0^x = integral_0^inf - integral_x^inf
        Rational full = coeff * Rational(factorial(m)) * rational_pow(r, -static_cast<long>(m) - 1);
        out.add_term(0, Rational(0), full);
        for (unsigned j = 0; j <= m; ++j) {
            Rational c = coeff * Rational(factorial(m)) / Rational(factorial(j));
            c *= rational_pow(r, -static_cast<long>(m + 1 - j));
            out.add_term(j, r, -c);
        }
    }
    return out;
}

ExpPolynomial ExpPolynomial::correlate(const ExpPolynomial& f, const ExpPolynomial& g) {
    ExpPolynomial out;
    for (const auto& [kf, cf] : f.terms_) {
        const auto& [mf, rf] = kf;
        for (const auto& [kg, cg] : g.terms_) {
            const auto& [mg, rg] = kg;
            const Rational rsum = rf + rg;
            if (rsum == 0) throw std::domain_error("divergent integral: term with zero rate");
            // (t+tau)^{mg} expanded binomially; the t part integrates to a factorial.
            for (unsigned i = 0; i <= mg; ++i) {
                Rational c = cf * cg * Rational(binomial(mg, i));
                c *= Rational(factorial(mf + i)) * rational_pow(rsum, -static_cast<long>(mf + i) - 1);
                out.add_term(mg - i, rg, c);
            }
        }
    }
    return out;
}

double ExpPolynomial::operator()(double t) const {
    double sum = 0.0;
    for (const auto& [key, coeff] : terms_) {
        const auto& [m, r] = key;
        double v = to_double(coeff) * std::exp(-to_double(r) * t);
        for (unsigned i = 0; i < m; ++i) v *= t;
        sum += v;
    }
    return sum;
}

}  // namespace fockse
