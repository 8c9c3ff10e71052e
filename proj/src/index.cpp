#include "cantor/index.hpp"

#include "cantor/errors.hpp"

#include <cctype>
#include <charconv>

namespace cantor {

namespace {

std::uint32_t parse_u32(std::string_view s, std::string_view whole) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("malformed index name '" + std::string(whole) + "'");
    return v;
}

}  // namespace

std::string Index::name() const {
    switch (tier) {
    case Tier::Xi:
        return "xi" + std::to_string(ordinal);
    case Tier::Lambda:
        return "la" + std::to_string(ordinal);
    case Tier::Mu: {
        std::string s = "mu" + std::to_string(ordinal) + "@C";
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(path[i]);
        }
        return s;
    }
    }
    return {};
}

Index Index::parse(std::string_view name) {
    if (name.size() < 3) throw ParseError("malformed index name '" + std::string(name) + "'");
    const std::string_view head = name.substr(0, 2);
    std::string_view rest = name.substr(2);
    if (head == "xi" || head == "la") {
        const std::uint32_t k = parse_u32(rest, name);
        if (k == 0) throw ParseError("index ordinals start at 1: '" + std::string(name) + "'");
        return head == "xi" ? Index::xi(k) : Index::lambda(k);
    }
    if (head != "mu") throw ParseError("unknown index tier in '" + std::string(name) + "'");
    const auto at = rest.find("@C");
    if (at == std::string_view::npos) throw ParseError("arc index without scope: '" + std::string(name) + "'");
    const std::uint32_t k = parse_u32(rest.substr(0, at), name);
    if (k == 0) throw ParseError("index ordinals start at 1: '" + std::string(name) + "'");
    std::vector<std::uint32_t> path;
    std::string_view p = rest.substr(at + 2);
    while (true) {
        const auto dot = p.find('.');
        path.push_back(parse_u32(p.substr(0, dot), name));
        if (dot == std::string_view::npos) break;
        p.remove_prefix(dot + 1);
    }
    return Index::mu(std::move(path), k);
}

Index IndexAllocator::issue(const Scope& scope) {
    if (scope.tier == Tier::Lambda)
        throw Error("position indices come from the declared axis, not from issue()");
    if (axis_declared_)
        throw Error("cannot issue " + std::string(scope.tier == Tier::Xi ? "cluster" : "arc") +
                    " index after the position axis was declared");
    const std::uint32_t k = ++next_[scope];
    Index idx{scope.tier, scope.path, k};
    issued_.push_back(idx);
    return idx;
}

PositionAxis IndexAllocator::declare_axis() {
    axis_declared_ = true;
    return {};
}

}  // namespace cantor
