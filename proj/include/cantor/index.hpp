#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// Level an index belongs to. The declaration order is the canonical
/// coordinate order: cluster indices, then arc indices, then positions.
enum class Tier : std::uint8_t { Xi = 0, Mu = 1, Lambda = 2 };

/// Owning scope of a family of indices, e.g. the arc indices of cluster 2
/// are `{Tier::Mu, {2}}`.
struct Scope {
    Tier tier = Tier::Xi;
    std::vector<std::uint32_t> path;

    auto operator<=>(const Scope&) const = default;
};

/// One coordinate of the Cantor cube {0,1}^Λ. Indices exist only once
/// allocated; the universe is never materialized.
///
/// The defaulted ordering compares tier, then path, then ordinal, which is
/// exactly the canonical truncation order.
struct Index {
    Tier tier = Tier::Xi;
    std::vector<std::uint32_t> path;
    std::uint32_t ordinal = 0;  // 1-based within (tier, path)

    static Index xi(std::uint32_t k) { return {Tier::Xi, {}, k}; }
    static Index mu(std::vector<std::uint32_t> path, std::uint32_t k) { return {Tier::Mu, std::move(path), k}; }
    static Index lambda(std::uint32_t k) { return {Tier::Lambda, {}, k}; }

    /// Canonical name: `xi<k>`, `mu<k>@C<p1>.<p2>...`, `la<k>`.
    std::string name() const;
    static Index parse(std::string_view name);

    auto operator<=>(const Index&) const = default;
};

/// The shared stream of position indices la1, la2, ... that every arc codec
/// writes its binary digits to.
struct PositionAxis {
    Index at(std::uint32_t position) const { return Index::lambda(position); }
};

/// Issues fresh indices per scope. Once the position axis has been declared
/// no further cluster or arc index may be issued.
class IndexAllocator {
public:
    Index issue(const Scope& scope);
    PositionAxis declare_axis();

    bool axis_declared() const noexcept { return axis_declared_; }
    const std::vector<Index>& issued() const noexcept { return issued_; }

private:
    std::map<Scope, std::uint32_t> next_;
    std::vector<Index> issued_;
    bool axis_declared_ = false;
};

}  // namespace cantor
