#include "cantor/arc_codec.hpp"

#include "cantor/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace cantor {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void require_bits(std::string_view bits, const char* what) {
    for (char c : bits)
        if (c != '0' && c != '1') throw ParseError(std::string("malformed ") + what + " '" + std::string(bits) + "'");
}

void require_unit(const Rational& y) {
    if (y < 0 || y > 1) throw DomainError("parameter out of range: " + to_string(y));
}

// Value of a digit string read as a binary numeral.
BigInt binary_value(std::string_view bits) {
    BigInt v = 0;
    for (char c : bits) {
        v <<= 1;
        if (c == '1') v += 1;
    }
    return v;
}

// n-digit binary numeral of v, most significant digit first.
std::string binary_digits(const BigInt& v, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i)
        if (boost::multiprecision::bit_test(v, n - 1 - i)) s[i] = '1';
    return s;
}

}  // namespace

TailPattern TailPattern::periodic(std::string_view block) {
    if (block.empty()) throw DomainError("periodic tail needs a nonempty block");
    require_bits(block, "periodic block");
    if (block.find('1') == std::string_view::npos) return zeros();
    if (block.find('0') == std::string_view::npos) return ones();
    const std::size_t n = block.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = block[i] == block[i - p];
        if (ok) return TailPattern(Kind::Periodic, std::string(block.substr(0, p)));
    }
    return TailPattern(Kind::Periodic, std::string(block));
}

std::optional<int> TailPattern::digit(std::size_t offset) const {
    switch (kind_) {
    case Kind::AllZeros: return 0;
    case Kind::AllOnes: return 1;
    case Kind::Periodic: return block_[offset % block_.size()] - '0';
    case Kind::Unconstrained: return std::nullopt;
    }
    return std::nullopt;
}

std::size_t TailPattern::cycle() const noexcept {
    switch (kind_) {
    case Kind::AllZeros:
    case Kind::AllOnes: return 1;
    case Kind::Periodic: return block_.size();
    case Kind::Unconstrained: return 0;
    }
    return 0;
}

std::string TailPattern::text() const {
    switch (kind_) {
    case Kind::AllZeros: return "0*";
    case Kind::AllOnes: return "1*";
    case Kind::Periodic: return "(" + block_ + ")*";
    case Kind::Unconstrained: return "?";
    }
    return {};
}

TailPattern TailPattern::parse(std::string_view text) {
    const std::string_view t = trim(text);
    if (t == "0*") return zeros();
    if (t == "1*") return ones();
    if (t == "?") return unconstrained();
    if (t.size() >= 4 && t.front() == '(' && t.substr(t.size() - 2) == ")*") {
        const std::string_view block = t.substr(1, t.size() - 3);
        require_bits(block, "periodic block");
        if (block.empty()) throw ParseError("empty periodic block");
        return periodic(block);
    }
    throw ParseError("malformed tail '" + std::string(t) + "'");
}

std::optional<int> AddressSpec::digit(std::size_t position) const {
    if (position == 0) return std::nullopt;
    if (position <= prefix.size()) return prefix[position - 1] - '0';
    return tail.digit(position - prefix.size() - 1);
}

Cone AddressSpec::as_cone() const {
    if (tail.kind() != TailPattern::Kind::Unconstrained)
        throw DomainError("address with a constrained tail is not a cone");
    Cone c = cone;
    for (std::size_t j = 0; j < prefix.size(); ++j)
        c = c.with(Index::lambda(static_cast<std::uint32_t>(j + 1)), prefix[j] - '0');
    return c;
}

std::string AddressSpec::text() const {
    std::string s = cone.text();
    if (!s.empty()) s += ' ';
    s += '|';
    if (!prefix.empty()) s += ' ' + prefix;
    s += " : ";
    s += tail.text();
    return s;
}

AddressSpec AddressSpec::parse(std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw ParseError("address is missing '|': '" + std::string(text) + "'");
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon < bar)
        throw ParseError("address is missing ':' after '|': '" + std::string(text) + "'");
    AddressSpec s;
    s.cone = Cone::parse(trim(text.substr(0, bar)));
    for (const auto& [idx, b] : s.cone.constraints())
        if (idx.tier == Tier::Lambda)
            throw ParseError("cone part of an address may not constrain position index " + idx.name());
    s.prefix = std::string(trim(text.substr(bar + 1, colon - bar - 1)));
    require_bits(s.prefix, "prefix");
    s.tail = TailPattern::parse(text.substr(colon + 1));
    return s;
}

std::string FiberSpec::text() const {
    std::string s;
    for (const auto& p : pieces) {
        s += p.text();
        s += '\n';
    }
    return s;
}

ParamClass classify(const Rational& y) {
    require_unit(y);
    if (y == 0) return {ParamKind::Endpoint, 0, 0};
    if (y == 1) return {ParamKind::Endpoint, 1, 0};
    const BigInt den = boost::multiprecision::denominator(y);
    const unsigned low = boost::multiprecision::lsb(den);
    if (den == pow2(low)) return {ParamKind::Dyadic, boost::multiprecision::numerator(y), low};
    return {ParamKind::NonDyadic, 0, 0};
}

FiberSpec encode_param(const Rational& y, const Cone& cone_part) {
    const ParamClass cls = classify(y);
    FiberSpec f;
    switch (cls.kind) {
    case ParamKind::Endpoint:
        f.pieces.push_back({cone_part, "", cls.numerator == 0 ? TailPattern::zeros() : TailPattern::ones()});
        break;
    case ParamKind::Dyadic: {
        // l/2^n with l odd: digits a_1..a_n, a_n = 1. The fiber splits at a_n.
        const std::string digits = binary_digits(cls.numerator, cls.exponent);
        const std::string shared = digits.substr(0, digits.size() - 1);
        f.pieces.push_back({cone_part, shared + "0", TailPattern::ones()});
        f.pieces.push_back({cone_part, shared + "1", TailPattern::zeros()});
        break;
    }
    case ParamKind::NonDyadic: {
        const BigInt q = boost::multiprecision::denominator(y);
        BigInt r = boost::multiprecision::numerator(y);
        std::map<BigInt, std::size_t> seen;
        std::string digits;
        while (!seen.contains(r)) {
            seen.emplace(r, digits.size());
            r <<= 1;
            if (r >= q) {
                digits += '1';
                r -= q;
            } else {
                digits += '0';
            }
        }
        const std::size_t start = seen.at(r);
        f.pieces.push_back({cone_part, digits.substr(0, start), TailPattern::periodic(digits.substr(start))});
        break;
    }
    }
    return f;
}

Interval decode_spec(const AddressSpec& s) {
    const auto m = static_cast<unsigned>(s.prefix.size());
    const Rational scale(BigInt(1), pow2(m));
    const Rational p = Rational(binary_value(s.prefix)) * scale;
    switch (s.tail.kind()) {
    case TailPattern::Kind::AllZeros: return {p, p};
    case TailPattern::Kind::AllOnes: {
        const Rational v = p + scale;
        return {v, v};
    }
    case TailPattern::Kind::Periodic: {
        const auto len = static_cast<unsigned>(s.tail.block().size());
        const Rational v = p + scale * Rational(binary_value(s.tail.block()), pow2(len) - 1);
        return {v, v};
    }
    case TailPattern::Kind::Unconstrained: return {p, p + scale};
    }
    return {p, p};
}

AddressSpec approximate_param(const Rational& y, std::size_t k, const Cone& cone_part) {
    require_unit(y);
    if (k == 0) throw DomainError("approximation depth must be at least 1");
    const auto n = static_cast<unsigned>(k);
    if (y == 1) return {cone_part, std::string(k, '1'), TailPattern::unconstrained()};
    const Rational scaled = y * Rational(pow2(n));
    const BigInt m = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    return {cone_part, binary_digits(m, n), TailPattern::unconstrained()};
}

AddressSpec approximate_param(std::string_view digits, const Cone& cone_part) {
    if (digits.empty()) throw DomainError("approximation depth must be at least 1");
    require_bits(digits, "digit string");
    return {cone_part, std::string(digits), TailPattern::unconstrained()};
}

std::optional<Index> separating_index(const AddressSpec& a, const AddressSpec& b) {
    for (const auto& [idx, bit] : a.cone.constraints()) {
        if (auto other = b.cone.bit(idx); other && *other != bit) return idx;
    }
    const std::size_t ca = std::max<std::size_t>(a.tail.cycle(), 1);
    const std::size_t cb = std::max<std::size_t>(b.tail.cycle(), 1);
    // Past both prefixes the joint digit pattern repeats with period lcm(ca, cb).
    const std::size_t limit = std::max(a.prefix.size(), b.prefix.size()) + std::lcm(ca, cb);
    for (std::size_t j = 1; j <= limit; ++j) {
        const auto da = a.digit(j);
        const auto db = b.digit(j);
        if (da && db && *da != *db) return Index::lambda(static_cast<std::uint32_t>(j));
    }
    return std::nullopt;
}

std::string check_fiber(const FiberSpec& f, bool same_parameter) {
    if (f.pieces.empty()) return "fiber has no pieces";
    for (std::size_t i = 0; i < f.pieces.size(); ++i)
        for (std::size_t j = i + 1; j < f.pieces.size(); ++j)
            if (!separating_index(f.pieces[i], f.pieces[j]))
                return "pieces " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " overlap";
    if (!same_parameter) return {};
    const Interval first = decode_spec(f.pieces.front());
    for (std::size_t i = 1; i < f.pieces.size(); ++i)
        if (decode_spec(f.pieces[i]) != first)
            return "piece " + std::to_string(i + 1) + " decodes to " + to_string(decode_spec(f.pieces[i])) +
                   ", not " + to_string(first);
    return {};
}

}  // namespace cantor
