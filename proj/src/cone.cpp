#include "cantor/cone.hpp"

#include "cantor/errors.hpp"

#include <bit>
#include <cctype>

namespace cantor {

Cone::Cone(std::initializer_list<std::pair<Index, int>> constraints) {
    for (const auto& [idx, b] : constraints) *this = with(idx, b);
}

std::optional<std::uint8_t> Cone::bit(const Index& i) const {
    auto it = constraints_.find(i);
    if (it == constraints_.end()) return std::nullopt;
    return it->second;
}

Cone Cone::with(const Index& i, int b) const {
    if (b != 0 && b != 1) throw DomainError("cone bit must be 0 or 1");
    Cone out = *this;
    auto [it, inserted] = out.constraints_.emplace(i, static_cast<std::uint8_t>(b));
    if (!inserted && it->second != b)
        throw DomainError("contradictory constraint on " + i.name());
    return out;
}

std::string Cone::text() const {
    std::string s;
    for (const auto& [idx, b] : constraints_) {
        if (!s.empty()) s += ',';
        s += idx.name();
        s += '=';
        s += static_cast<char>('0' + b);
    }
    return s;
}

Cone Cone::parse(std::string_view text) {
    Cone c;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq + 2 != item.size() || (item[eq + 1] != '0' && item[eq + 1] != '1'))
                throw ParseError("malformed cone constraint '" + std::string(item) + "'");
            const Index idx = Index::parse(item.substr(0, eq));
            if (c.bit(idx)) throw ParseError("index " + idx.name() + " constrained twice");
            c = c.with(idx, item[eq + 1] - '0');
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return c;
}

std::vector<Cone> refine(const Cone& parent, IndexAllocator& alloc, const Scope& scope, std::size_t m) {
    if (m == 0) throw DomainError("empty partition requested");
    std::vector<Index> fresh;
    fresh.reserve(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        fresh.push_back(alloc.issue(scope));
        if (parent.bit(fresh.back())) throw DomainError("fresh index " + fresh.back().name() + " collides with parent");
    }
    std::vector<Cone> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        Cone c = parent;
        for (std::size_t j = 0; j < k && j < fresh.size(); ++j) c = c.with(fresh[j], 1);
        if (k < fresh.size()) c = c.with(fresh[k], 0);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Cone> partition(IndexAllocator& alloc, const Scope& scope, std::size_t n) {
    return refine(Cone{}, alloc, scope, n);
}

std::optional<Cone> intersect(const Cone& a, const Cone& b) {
    Cone out = a;
    for (const auto& [idx, bit] : b.constraints()) {
        if (auto existing = out.bit(idx)) {
            if (*existing != bit) return std::nullopt;
        } else {
            out = out.with(idx, bit);
        }
    }
    return out;
}

std::string BitString::text() const {
    std::string s(width, '0');
    for (unsigned i = 0; i < width; ++i) s[i] = static_cast<char>('0' + at(i));
    return s;
}

BitString BitString::parse(std::string_view bits) {
    if (bits.size() > kMaxTruncationWidth) throw DepthError("bit string longer than 64 coordinates");
    BitString s{0, static_cast<unsigned>(bits.size())};
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw ParseError("malformed bit string '" + std::string(bits) + "'");
        s.code = (s.code << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return s;
}

unsigned Truncation::fixed() const { return static_cast<unsigned>(std::popcount(care_)); }

BigInt Truncation::count() const { return pow2(width_ - fixed()); }

std::vector<BitString> Truncation::strings() const {
    const unsigned free = width_ - fixed();
    if (free > 24) throw DepthError("refusing to materialize 2^" + std::to_string(free) + " strings");
    std::vector<std::uint64_t> free_bits;
    for (unsigned i = 0; i < width_; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (width_ - 1 - i);
        if (!(care_ & bit)) free_bits.push_back(bit);
    }
    // free_bits runs from most to least significant, so counting m upward
    // and spreading its bits yields lexicographic order.
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << free);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free); ++m) {
        std::uint64_t code = value_;
        for (unsigned j = 0; j < free; ++j)
            if (m & (std::uint64_t{1} << (free - 1 - j))) code |= free_bits[j];
        out.push_back({code, width_});
    }
    return out;
}

Truncation truncate(const Cone& c, std::span<const Index> coords) {
    if (coords.size() > kMaxTruncationWidth) throw DepthError("truncation deeper than 64 coordinates");
    const auto width = static_cast<unsigned>(coords.size());
    std::uint64_t care = 0;
    std::uint64_t value = 0;
    std::size_t matched = 0;
    for (unsigned i = 0; i < width; ++i) {
        if (auto b = c.bit(coords[i])) {
            const std::uint64_t bit = std::uint64_t{1} << (width - 1 - i);
            care |= bit;
            if (*b) value |= bit;
            ++matched;
        }
    }
    if (matched != c.size()) throw DepthError("truncation too shallow");
    return Truncation(width, care, value);
}

}  // namespace cantor
