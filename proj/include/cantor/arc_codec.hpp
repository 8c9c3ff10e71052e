#pragma once

#include "cantor/cone.hpp"
#include "cantor/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// Digits of the position axis after a finite prefix.
class TailPattern {
public:
    enum class Kind { AllZeros, AllOnes, Periodic, Unconstrained };

    static TailPattern zeros() { return TailPattern(Kind::AllZeros, {}); }
    static TailPattern ones() { return TailPattern(Kind::AllOnes, {}); }
    static TailPattern unconstrained() { return TailPattern(Kind::Unconstrained, {}); }

    /// Repeating block. Constant blocks collapse to zeros()/ones() and the
    /// block is reduced to its primitive period.
    static TailPattern periodic(std::string_view block);

    Kind kind() const noexcept { return kind_; }
    const std::string& block() const noexcept { return block_; }

    /// Digit at 0-based offset into the tail; nullopt when unconstrained.
    std::optional<int> digit(std::size_t offset) const;

    /// Length of the repeating cycle: 1 for constants, 0 when unconstrained.
    std::size_t cycle() const noexcept;

    /// `0*`, `1*`, `(<bits>)*` or `?`.
    std::string text() const;
    static TailPattern parse(std::string_view text);

    friend bool operator==(const TailPattern&, const TailPattern&) = default;

private:
    TailPattern(Kind k, std::string block) : kind_(k), block_(std::move(block)) {}

    Kind kind_;
    std::string block_;
};

/// One cylinder-with-tail piece of a fiber: `cone` ∩ {x | x(la_j) = prefix_j
/// for j <= |prefix|, and x(la_j) follows `tail` afterwards}.
struct AddressSpec {
    Cone cone;
    std::string prefix;  // '0'/'1' digits on la1, la2, ...
    TailPattern tail = TailPattern::unconstrained();

    /// Digit forced at 1-based position j of the axis, if any.
    std::optional<int> digit(std::size_t position) const;

    /// With an unconstrained tail the spec is an ordinary cone.
    Cone as_cone() const;

    /// `<cone text> | <prefix bits> : <tail>`.
    std::string text() const;
    static AddressSpec parse(std::string_view text);

    friend bool operator==(const AddressSpec&, const AddressSpec&) = default;
};

/// Preimage of a single model point: a disjoint union of address pieces.
struct FiberSpec {
    std::vector<AddressSpec> pieces;

    /// One piece per line.
    std::string text() const;

    friend bool operator==(const FiberSpec&, const FiberSpec&) = default;
};

enum class ParamKind { Endpoint, Dyadic, NonDyadic };

/// Dyadic parameters carry y = numerator / 2^exponent in lowest terms.
/// Endpoints carry numerator 0 or 1 with exponent 0.
struct ParamClass {
    ParamKind kind = ParamKind::NonDyadic;
    BigInt numerator = 0;
    unsigned exponent = 0;
};

/// Throws DomainError("parameter out of range") outside [0,1].
ParamClass classify(const Rational& y);

/// Fiber of y under f(x) = sum a_j / 2^j, laid inside `cone_part`.
FiberSpec encode_param(const Rational& y, const Cone& cone_part = {});

/// Exact value for constant or periodic tails (a point interval), or the
/// dyadic interval [p, p + 2^-|prefix|] for an unconstrained tail.
Interval decode_spec(const AddressSpec& s);

/// Unconstrained spec whose prefix is the first k binary digits of y.
AddressSpec approximate_param(const Rational& y, std::size_t k, const Cone& cone_part = {});

/// Same, for a parameter already given as its leading binary digits.
AddressSpec approximate_param(std::string_view digits, const Cone& cone_part = {});

/// Smallest index at which every point of `a` differs from every point of `b`,
/// or nullopt when the two pieces intersect.
std::optional<Index> separating_index(const AddressSpec& a, const AddressSpec& b);

/// Checks that the pieces are pairwise disjoint and, when `same_parameter`
/// is set, that they all decode to one parameter. Node fibers spread over
/// several arcs skip the second check since each piece sits at 0 or 1 of its
/// own arc. Returns a description of the first violation, or "".
std::string check_fiber(const FiberSpec& f, bool same_parameter = true);

}  // namespace cantor
