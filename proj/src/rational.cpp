#include "credalkit/rational.hpp"

#include <cctype>
#include <sstream>

#include "credalkit/errors.hpp"

namespace credalkit {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw ParseError("empty number", 0);

    Rational value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction '" + text + "'", 0);
        BigInt d(den);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'", 0);
        value = Rational(BigInt(num), d);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw ParseError("malformed number '" + text + "'", 0);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            throw ParseError("malformed number '" + text + "'", 0);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt units = whole.empty() ? BigInt(0) : BigInt(whole);
        BigInt cents = frac.empty() ? BigInt(0) : BigInt(frac);
        value = Rational(units * scale + cents, scale);
    } else {
        if (!all_digits(s)) throw ParseError("malformed number '" + text + "'", 0);
        value = Rational(BigInt(s));
    }
    return negative ? Rational(-value) : value;
}

std::string to_exact_string(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string to_decimal4(const Rational& value) {
    const bool negative = value < 0;
    const Rational magnitude = negative ? Rational(-value) : value;
    // round(|v| * 10^4), halves away from zero
    const Rational scaled = magnitude * 10000;
    BigInt units = numerator(scaled) / denominator(scaled);
    const Rational remainder = scaled - Rational(units);
    if (remainder * 2 >= 1) ++units;

    const BigInt whole = units / 10000;
    const BigInt frac = units % 10000;
    std::string frac_str = frac.str();
    frac_str.insert(0, 4 - frac_str.size(), '0');

    std::string out;
    if (negative && (whole != 0 || frac != 0)) out += '-';
    out += whole.str();
    out += '.';
    out += frac_str;
    return out;
}

} // namespace credalkit
