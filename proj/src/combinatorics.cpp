#include "fockse/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace fockse {

Composition::Composition(std::vector<unsigned> parts)
    : parts_(std::move(parts)), total_(std::accumulate(parts_.begin(), parts_.end(), 0u)) {}

std::vector<Composition> compositions(unsigned total, unsigned slots) {
    std::vector<Composition> out;
    for_each_composition(total, slots, [&](const std::vector<unsigned>& parts) {
        out.emplace_back(parts);
    });
    return out;
}

Integer multinomial(const std::vector<unsigned>& parts) {
    unsigned total = std::accumulate(parts.begin(), parts.end(), 0u);
    Integer out = factorial(total);
    for (unsigned p : parts) out /= factorial(p);
    return out;
}

Integer multinomial(const Composition& index) { return multinomial(index.parts()); }

Rational harmonic(unsigned n, unsigned order) {
    if (order == 0) throw std::invalid_argument("harmonic: order must be >= 1");
    Rational sum(0);
    for (unsigned k = 1; k <= n; ++k) {
        Rational term(1, k);
        sum += rational_pow(term, static_cast<long>(order));
    }
    return sum;
}

Rational hyp2f1_terminating(long b, long c, const Rational& x) {
    if (b > 0) throw std::invalid_argument("hyp2f1_terminating: b must be <= 0");
    if (c <= 0) throw std::domain_error("hyp2f1_terminating: c must be >= 1");
    // With a = 1 the Pochhammer (1)_j cancels the j!:
    //   2F1(1, b; c; x) = sum_{j=0..-b} (b)_j / (c)_j x^j.
    Rational sum(1);
    Rational term(1);
    const long jmax = -b;
    for (long j = 0; j < jmax; ++j) {
        term *= Rational(b + j) / Rational(c + j);
        term *= x;
        sum += term;
    }
    return sum;
}

}  // namespace fockse
