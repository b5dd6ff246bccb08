#include "fockse/rational.hpp"

#include <cctype>

namespace fockse {

namespace {

bool parse_long(const std::string& s, long& out) {
    try {
        std::size_t pos = 0;
        out = std::stol(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

Rational rational_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("rational_from_string: empty input");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("rational_from_string: bad fraction '" + text + "'");
        if (q.get_den() == 0) throw std::invalid_argument("rational_from_string: zero denominator");
        q.canonicalize();
        return q;
    }

    // Split off a decimal exponent, if any.
    long exp10 = 0;
    std::string mantissa = s;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        if (!parse_long(s.substr(e + 1), exp10))
            throw std::invalid_argument("rational_from_string: bad exponent in '" + text + "'");
        mantissa = s.substr(0, e);
    }

    std::string digits = mantissa;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("rational_from_string: bad number '" + text + "'");

    Integer num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
        throw std::invalid_argument("rational_from_string: bad number '" + text + "'");

    Rational q(num);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        q *= Rational(scale);
    else
        q /= Rational(scale);
    return q;
}

}  // namespace fockse
