#include "cantor/rational.hpp"

#include "cantor/errors.hpp"

#include <cctype>

namespace cantor {

BigInt pow2(unsigned n) {
    BigInt r = 1;
    r <<= n;
    return r;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ParseError("malformed number '" + std::string(whole) + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("malformed number '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(trim(s.substr(0, slash)), s);
        BigInt den = parse_integer(trim(s.substr(slash + 1)), s);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        BigInt ip = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_integer(whole, s);
        if (frac.empty()) throw ParseError("malformed number '" + std::string(s) + "'");
        BigInt fp = parse_integer(frac, s);
        if (frac[0] == '-' || frac[0] == '+') throw ParseError("malformed number '" + std::string(s) + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational r = Rational(ip) + Rational(fp, scale) * (negative ? -1 : 1);
        return r;
    }
    return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_string(const Interval& iv) {
    if (iv.is_point()) return to_string(iv.lo);
    return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
}

}  // namespace cantor
