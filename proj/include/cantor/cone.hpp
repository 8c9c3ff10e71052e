#pragma once

#include "cantor/index.hpp"
#include "cantor/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cantor {

/// Clopen cylinder of {0,1}^Λ: a finite partial assignment of bits to
/// indices. The empty assignment is the whole cube X.
class Cone {
public:
    Cone() = default;
    Cone(std::initializer_list<std::pair<Index, int>> constraints);

    const std::map<Index, std::uint8_t>& constraints() const noexcept { return constraints_; }
    std::size_t size() const noexcept { return constraints_.size(); }
    bool is_whole() const noexcept { return constraints_.empty(); }
    std::optional<std::uint8_t> bit(const Index& i) const;

    /// Adds one constraint. Throws DomainError if it contradicts an existing one.
    Cone with(const Index& i, int bit) const;

    /// Comma-separated `name=bit` pairs in canonical index order; "" for X.
    std::string text() const;
    static Cone parse(std::string_view text);

    friend bool operator==(const Cone&, const Cone&) = default;

private:
    std::map<Index, std::uint8_t> constraints_;
};

/// Unary-prefix partition of X into n cones, consuming n-1 fresh indices of
/// `scope`: C_1 = {i1=0}, C_k = {i1..i_{k-1}=1, i_k=0}, C_n = {i1..i_{n-1}=1}.
std::vector<Cone> partition(IndexAllocator& alloc, const Scope& scope, std::size_t n);

/// Same pattern laid inside `parent`.
std::vector<Cone> refine(const Cone& parent, IndexAllocator& alloc, const Scope& scope, std::size_t m);

/// Merged constraints, or nullopt when the cones disagree on some index.
std::optional<Cone> intersect(const Cone& a, const Cone& b);

/// Fixed-width bit string over an ordered coordinate list; character i is
/// coordinate i. `code` holds the string read as a binary numeral, so numeric
/// order is lexicographic order.
struct BitString {
    std::uint64_t code = 0;
    unsigned width = 0;

    int at(unsigned i) const { return static_cast<int>((code >> (width - 1 - i)) & 1U); }
    std::string text() const;
    static BitString parse(std::string_view bits);

    auto operator<=>(const BitString&) const = default;
};

/// Projection of a cone onto at most 64 ordered coordinates, stored as a
/// care mask plus fixed values.
class Truncation {
public:
    Truncation(unsigned width, std::uint64_t care, std::uint64_t value)
        : width_(width), care_(care), value_(value & care) {}

    unsigned width() const noexcept { return width_; }
    std::uint64_t care() const noexcept { return care_; }
    std::uint64_t value() const noexcept { return value_; }

    bool contains(const BitString& s) const { return (s.code & care_) == value_; }
    bool disjoint(const Truncation& o) const { return ((value_ ^ o.value_) & care_ & o.care_) != 0; }
    unsigned fixed() const;

    /// Number of strings, 2^(width - fixed).
    BigInt count() const;

    /// Every consistent string in lexicographic order. Throws DepthError when
    /// more than 2^24 strings would be produced.
    std::vector<BitString> strings() const;

private:
    unsigned width_;
    std::uint64_t care_;
    std::uint64_t value_;
};

constexpr unsigned kMaxTruncationWidth = 64;

/// Throws DepthError("truncation too shallow") if a constrained index of `c`
/// is missing from `coords`, and DepthError when coords has more than 64 entries.
Truncation truncate(const Cone& c, std::span<const Index> coords);

}  // namespace cantor
