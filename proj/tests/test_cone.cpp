#include "doctest.h"

#include "cantor/cone.hpp"
#include "cantor/errors.hpp"

#include <random>

using namespace cantor;

namespace {

std::vector<Index> xis(std::size_t n) {
    std::vector<Index> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(Index::xi(static_cast<std::uint32_t>(i)));
    return out;
}

// Does the cone accept the assignment coords[i] = bits[i]?
bool accepts(const Cone& c, const std::vector<Index>& coords, std::uint64_t code) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto b = c.bit(coords[i]);
        if (b && *b != static_cast<int>((code >> (coords.size() - 1 - i)) & 1U)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("indices sort by tier, then path, then ordinal") {
    const Index a = Index::xi(7), b = Index::mu({1}, 1), c = Index::mu({2}, 1), d = Index::lambda(1);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(c < d);
    CHECK(Index::mu({1}, 2) < Index::mu({2}, 1));
    CHECK(a.name() == "xi7");
    CHECK(b.name() == "mu1@C1");
    CHECK(d.name() == "la1");
    CHECK(Index::parse("mu3@C2") == Index::mu({2}, 3));
    CHECK(Index::parse(Index::mu({1, 4}, 2).name()) == Index::mu({1, 4}, 2));
}

TEST_CASE("allocator hands out fresh indices and locks after the axis") {
    IndexAllocator alloc;
    CHECK(alloc.issue({Tier::Xi, {}}) == Index::xi(1));
    CHECK(alloc.issue({Tier::Xi, {}}) == Index::xi(2));
    CHECK(alloc.issue({Tier::Mu, {1}}) == Index::mu({1}, 1));
    CHECK_THROWS_AS(alloc.issue({Tier::Lambda, {}}), Error);
    alloc.declare_axis();
    CHECK(alloc.axis_declared());
    CHECK_THROWS_AS(alloc.issue({Tier::Xi, {}}), Error);
    CHECK(alloc.issued().size() == 3);
}

TEST_CASE("partition uses the unary prefix pattern") {
    IndexAllocator alloc;
    const auto cones = partition(alloc, {Tier::Xi, {}}, 3);
    REQUIRE(cones.size() == 3);
    CHECK(cones[0].text() == "xi1=0");
    CHECK(cones[1].text() == "xi1=1,xi2=0");
    CHECK(cones[2].text() == "xi1=1,xi2=1");

    IndexAllocator one;
    const auto whole = partition(one, {Tier::Xi, {}}, 1);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].is_whole());
    CHECK(one.issued().empty());
}

TEST_CASE("partition covers each string exactly once") {
    for (std::size_t n = 1; n <= 13; ++n) {
        IndexAllocator alloc;
        const auto cones = partition(alloc, {Tier::Xi, {}}, n);
        const auto coords = xis(n - 1);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << coords.size()); ++code) {
            int hits = 0;
            for (const auto& c : cones) hits += accepts(c, coords, code);
            REQUIRE(hits == 1);
        }
    }
}

TEST_CASE("refine nests inside the parent and rejects empty requests") {
    IndexAllocator alloc;
    const Cone parent{{Index::xi(1), 1}};
    const auto kids = refine(parent, alloc, {Tier::Mu, {2}}, 2);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].text() == "xi1=1,mu1@C2=0");
    CHECK(kids[1].text() == "xi1=1,mu1@C2=1");
    CHECK_THROWS_AS(refine(parent, alloc, {Tier::Mu, {2}}, 0), DomainError);
    CHECK_THROWS_WITH(partition(alloc, {Tier::Xi, {}}, 0), doctest::Contains("empty partition"));
}

TEST_CASE("cone constraints combine and contradict") {
    const Cone a{{Index::xi(1), 0}};
    CHECK(a.with(Index::xi(2), 1).text() == "xi1=0,xi2=1");
    CHECK_THROWS_AS(a.with(Index::xi(1), 1), DomainError);
    CHECK(a.with(Index::xi(1), 0) == a);
    CHECK_FALSE(intersect(a, Cone{{Index::xi(1), 1}}).has_value());
    CHECK(intersect(a, Cone{{Index::mu({1}, 1), 1}})->text() == "xi1=0,mu1@C1=1");
    CHECK(Cone::parse("mu1@C1=1, xi1=0") == intersect(a, Cone{{Index::mu({1}, 1), 1}}));
    CHECK(Cone::parse("").is_whole());
    CHECK_THROWS_AS(Cone::parse("xi1=2"), ParseError);
    CHECK_THROWS_AS(Cone::parse("xi1=0,xi1=1"), Error);
}

TEST_CASE("truncations") {
    const auto coords = xis(4);
    const Cone c{{Index::xi(1), 1}, {Index::xi(3), 0}};
    const Truncation t = truncate(c, coords);
    CHECK(t.fixed() == 2);
    CHECK(t.count() == 4);
    std::vector<std::string> got;
    for (const auto& s : t.strings()) got.push_back(s.text());
    CHECK(got == std::vector<std::string>{"1000", "1001", "1100", "1101"});
    CHECK(t.contains(BitString::parse("1101")));
    CHECK_FALSE(t.contains(BitString::parse("0101")));
    CHECK(t.disjoint(truncate(Cone{{Index::xi(3), 1}}, coords)));
    CHECK_FALSE(t.disjoint(truncate(Cone{{Index::xi(4), 1}}, coords)));
    CHECK_THROWS_WITH_AS(truncate(Cone{{Index::xi(5), 1}}, coords), doctest::Contains("truncation too shallow"),
                         DepthError);
    std::vector<Index> wide;
    for (std::uint32_t i = 1; i <= 65; ++i) wide.push_back(Index::lambda(i));
    CHECK_THROWS_AS(truncate(Cone{}, wide), DepthError);
}

TEST_CASE("truncation count agrees with enumeration on random cones") {
    std::mt19937 rng(20240611);
    const auto coords = xis(10);
    for (int trial = 0; trial < 200; ++trial) {
        Cone c;
        for (const auto& i : coords)
            if (rng() % 3 == 0) c = c.with(i, static_cast<int>(rng() % 2));
        std::size_t brute = 0;
        for (std::uint64_t code = 0; code < 1024; ++code) brute += accepts(c, coords, code);
        const Truncation t = truncate(c, coords);
        REQUIRE(t.count() == brute);
        REQUIRE(t.strings().size() == brute);
        for (const auto& s : t.strings()) REQUIRE(accepts(c, coords, s.code));
    }
}

TEST_CASE("bit strings") {
    const BitString s = BitString::parse("0110");
    CHECK(s.width == 4);
    CHECK(s.code == 6);
    CHECK(s.at(0) == 0);
    CHECK(s.at(1) == 1);
    CHECK(s.text() == "0110");
    CHECK_THROWS_AS(BitString::parse("01a"), ParseError);
}
