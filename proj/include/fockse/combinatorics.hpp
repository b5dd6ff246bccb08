#pragma once

#include <vector>

#include "fockse/rational.hpp"

namespace fockse {

// Ordered list of nonnegative parts with a fixed total. The moment sums of
// the analytic pipeline iterate over every composition of N into a fixed
// number of slots exactly once, in lexicographic order.
class Composition {
public:
    explicit Composition(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned total() const { return total_; }
    unsigned operator[](std::size_t i) const { return parts_[i]; }
    std::size_t size() const { return parts_.size(); }

private:
    std::vector<unsigned> parts_;
    unsigned total_;
};

// All compositions of `total` into `slots` nonnegative parts, lexicographic.
std::vector<Composition> compositions(unsigned total, unsigned slots);

// Visits compositions without materializing them (hot loops).
template <class F>
void for_each_composition(unsigned total, unsigned slots, F&& visit) {
    std::vector<unsigned> parts(slots, 0);
    auto rec = [&](auto&& self, unsigned remaining, unsigned slot) -> void {
        if (slot + 1 == slots) {
            parts[slot] = remaining;
            visit(const_cast<const std::vector<unsigned>&>(parts));
            return;
        }
        for (unsigned v = 0; v <= remaining; ++v) {
            parts[slot] = v;
            self(self, remaining - v, slot + 1);
        }
    };
    if (slots == 0) return;
    rec(rec, total, 0);
}

// (sum parts)! / prod parts_i!
Integer multinomial(const Composition& index);
Integer multinomial(const std::vector<unsigned>& parts);

// Generalized harmonic number H_{n,order} = sum_{k=1..n} k^-order, H_0 = 0.
Rational harmonic(unsigned n, unsigned order = 1);

// Terminating Gauss series 2F1(1, b; c; x) with b <= 0, c >= 1.
Rational hyp2f1_terminating(long b, long c, const Rational& x);

}  // namespace fockse
