#pragma once

// Fixture models and brute-force oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the code under test except to build
// inputs.

#include "cantor/arc_codec.hpp"
#include "cantor/model.hpp"
#include "cantor/representation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace fixtures {

using cantor::Arc;
using cantor::BigInt;
using cantor::Cluster;
using cantor::GeometricModel;
using cantor::Rational;

inline Cluster arc_cluster(std::string id = "C1") {
    return Cluster::graph(std::move(id), {"e1", "e2"}, {{"E1", "e1", "e2"}});
}

// Arc drawn as two edges through a middle node.
inline Cluster bent_arc_cluster(std::string id = "C1") {
    return Cluster::graph(std::move(id), {"e1", "a", "e2"}, {{"E1", "e1", "a"}, {"E2", "a", "e2"}});
}

inline Cluster star_cluster(std::string id = "C1") {
    return Cluster::graph(std::move(id), {"a", "e1", "e2", "e3"},
                          {{"E1", "a", "e1"}, {"E2", "a", "e2"}, {"E3", "a", "e3"}});
}

inline Cluster circle_cluster(std::string id = "C1") {
    return Cluster::graph(std::move(id), {"p", "q"}, {{"E1", "p", "q"}, {"E2", "p", "q"}});
}

inline Cluster triangle_cluster(std::string id = "C1") {
    return Cluster::graph(std::move(id), {"p", "q", "r"}, {{"E1", "p", "q"}, {"E2", "q", "r"}, {"E3", "r", "p"}});
}

inline GeometricModel model_of(std::vector<Cluster> clusters) { return GeometricModel{std::move(clusters)}; }

inline GeometricModel singletons(std::size_t s) {
    GeometricModel m;
    for (std::size_t i = 0; i < s; ++i) m.clusters.push_back(Cluster::singleton("P" + std::to_string(i + 1)));
    return m;
}

// Random multigraph without self-loops; every node lies on some arc.
inline Cluster random_graph(std::mt19937& rng, std::size_t max_nodes, std::size_t max_arcs, std::string id = "C1") {
    std::uniform_int_distribution<std::size_t> nn(2, max_nodes);
    const std::size_t n = nn(rng);
    std::uniform_int_distribution<std::size_t> na(std::max<std::size_t>(1, (n + 1) / 2), max_arcs);
    std::size_t arcs = na(rng);
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i + 1));
    std::vector<Arc> out;
    std::vector<bool> covered(n, false);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    auto add = [&](std::size_t a, std::size_t b) {
        out.push_back({"E" + std::to_string(out.size() + 1), nodes[a], nodes[b]});
        covered[a] = covered[b] = true;
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (covered[v]) continue;
        std::size_t w = pick(rng);
        while (w == v) w = pick(rng);
        add(v, w);
    }
    while (out.size() < arcs) {
        const std::size_t a = pick(rng), b = pick(rng);
        if (a != b) add(a, b);
    }
    return Cluster::graph(std::move(id), std::move(nodes), std::move(out));
}

// Binary digits of y from floor(y 2^j); for dyadic y this is the expansion
// ending in zeros.
inline std::string floor_digits(const Rational& y, std::size_t count) {
    const BigInt num = boost::multiprecision::numerator(y), den = boost::multiprecision::denominator(y);
    std::string out;
    for (std::size_t j = 1; j <= count; ++j) {
        const BigInt f = (num << static_cast<unsigned>(j)) / den;
        out += (f & 1) == 0 ? '0' : '1';
    }
    return out;
}

// Expansion ending in ones: digit j is (ceil(y 2^j) - 1) mod 2.
inline std::string ceil_digits(const Rational& y, std::size_t count) {
    const BigInt num = boost::multiprecision::numerator(y), den = boost::multiprecision::denominator(y);
    std::string out;
    for (std::size_t j = 1; j <= count; ++j) {
        const BigInt scaled = num << static_cast<unsigned>(j);
        BigInt c = scaled / den;
        if (c * den != scaled) c += 1;
        out += ((c - 1) & 1) == 0 ? '0' : '1';
    }
    return out;
}

// First `count` digits of the address piece, read prefix then tail.
inline std::string spec_digits(const cantor::AddressSpec& s, std::size_t count) {
    std::string out;
    for (std::size_t j = 1; j <= count; ++j) {
        const auto d = s.digit(j);
        out += d ? static_cast<char>('0' + *d) : '?';
    }
    return out;
}

struct Topology {
    std::size_t components = 0;
    long long cycle_rank = 0;
    std::vector<std::size_t> branch;
    std::size_t leaves = 0;

    bool operator==(const Topology&) const = default;
};

inline std::string text(const Topology& t) {
    std::string s = "{components " + std::to_string(t.components) + ", cycle_rank " + std::to_string(t.cycle_rank) +
                    ", branch [";
    for (std::size_t i = 0; i < t.branch.size(); ++i) s += (i ? "," : "") + std::to_string(t.branch[i]);
    return s + "], leaves " + std::to_string(t.leaves) + "}";
}

// Invariants of a multigraph given as an edge list over vertices 0..n-1.
inline Topology graph_topology(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::size_t> parent(n), degree(n, 0);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (auto [a, b] : edges) {
        ++degree[a];
        ++degree[b];
        parent[find(a)] = find(b);
    }
    Topology t;
    for (std::size_t v = 0; v < n; ++v) {
        if (find(v) == v) ++t.components;
        if (degree[v] >= 3) t.branch.push_back(degree[v]);
        if (degree[v] == 1) ++t.leaves;
    }
    std::sort(t.branch.begin(), t.branch.end());
    t.cycle_rank = static_cast<long long>(edges.size()) - static_cast<long long>(n) + static_cast<long long>(t.components);
    return t;
}

inline Topology model_topology(const GeometricModel& m) {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& c : m.clusters) {
        if (!c.is_graph()) {
            ++n;
            continue;
        }
        std::map<std::string, std::size_t> id;
        for (const auto& v : c.nodes) id[v] = n++;
        for (const auto& a : c.arcs) edges.emplace_back(id.at(a.tail), id.at(a.head));
    }
    return graph_topology(n, edges);
}

// Brute-force quotient: walks every depth-k string, reads cluster and arc by
// the unary prefix code, groups strings into cells (arc end cylinders glue to
// their nodes) and joins cells whose dyadic images touch.
struct BruteQuotient {
    std::size_t cells = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::map<std::size_t, std::size_t> strings;  // cell -> string count
    Topology topology;
};

inline BruteQuotient brute_quotient(const cantor::Representation& rep, std::size_t k) {
    const GeometricModel& m = rep.model();
    const std::size_t fixed = rep.fixed_coordinates();
    const std::size_t d = k - fixed;
    const auto coords = rep.coordinates(k);
    auto unary = [](const std::vector<int>& bits) {
        std::size_t i = 0;
        while (i < bits.size() && bits[i] == 1) ++i;
        return i;
    };
    // Cell keys: ("node", cluster, node), ("seg", cluster, arc, prefix), ("pt", cluster).
    using Key = std::tuple<int, std::size_t, std::size_t, std::string>;
    std::map<Key, std::size_t> ids;
    std::map<std::size_t, std::vector<std::tuple<std::size_t, std::size_t, Rational, Rational>>> images;
    BruteQuotient q;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << k); ++code) {
        std::map<cantor::Index, int> bit;
        for (std::size_t i = 0; i < k; ++i) bit[coords[i]] = static_cast<int>((code >> (k - 1 - i)) & 1U);
        std::vector<int> xi;
        for (std::size_t j = 1; j < m.clusters.size(); ++j) xi.push_back(bit.at(cantor::Index::xi(static_cast<std::uint32_t>(j))));
        const std::size_t ci = unary(xi);
        const Cluster& c = m.clusters[ci];
        Key key{2, ci, 0, ""};
        Rational lo = 0, hi = 0;
        std::size_t arc = 0;
        if (c.is_graph()) {
            std::vector<int> mu;
            for (std::size_t j = 1; j < c.arcs.size(); ++j)
                mu.push_back(bit.at(cantor::Index::mu({static_cast<std::uint32_t>(ci + 1)}, static_cast<std::uint32_t>(j))));
            arc = unary(mu);
            std::string prefix;
            BigInt value = 0;
            for (std::size_t j = 1; j <= d; ++j) {
                const int b = bit.at(cantor::Index::lambda(static_cast<std::uint32_t>(j)));
                prefix += static_cast<char>('0' + b);
                value = value * 2 + b;
            }
            lo = Rational(value, cantor::pow2(static_cast<unsigned>(d)));
            hi = lo + Rational(BigInt(1), cantor::pow2(static_cast<unsigned>(d)));
            const auto& a = c.arcs[arc];
            if (prefix == std::string(d, '0'))
                key = Key{0, ci, static_cast<std::size_t>(std::find(c.nodes.begin(), c.nodes.end(), a.tail) - c.nodes.begin()), ""};
            else if (prefix == std::string(d, '1'))
                key = Key{0, ci, static_cast<std::size_t>(std::find(c.nodes.begin(), c.nodes.end(), a.head) - c.nodes.begin()), ""};
            else
                key = Key{1, ci, arc, prefix};
        }
        auto [it, fresh] = ids.emplace(key, ids.size());
        ++q.strings[it->second];
        if (fresh && c.is_graph()) images[it->second].emplace_back(ci, arc, lo, hi);
        if (c.is_graph() && std::get<0>(key) == 0) {
            auto& im = images[it->second];
            const auto piece = std::make_tuple(ci, arc, lo, hi);
            if (std::find(im.begin(), im.end(), piece) == im.end()) im.push_back(piece);
        }
    }
    q.cells = ids.size();
    // Two pieces share a point iff same arc and intervals touch, or they meet
    // at an endpoint that is the same node.
    auto endpoint = [&](std::size_t ci, std::size_t arc, const Rational& x) -> std::string {
        const auto& a = m.clusters[ci].arcs[arc];
        if (x == 0) return std::to_string(ci) + ":" + a.tail;
        if (x == 1) return std::to_string(ci) + ":" + a.head;
        return {};
    };
    for (std::size_t x = 0; x < q.cells; ++x)
        for (std::size_t y = x + 1; y < q.cells; ++y) {
            bool touch = false;
            for (const auto& [c1, a1, l1, h1] : images[x])
                for (const auto& [c2, a2, l2, h2] : images[y]) {
                    if (c1 != c2) continue;
                    if (a1 == a2 && l1 <= h2 && l2 <= h1) touch = true;
                    for (const Rational& p : {l1, h1})
                        for (const Rational& r : {l2, h2}) {
                            const std::string e1 = endpoint(c1, a1, p), e2 = endpoint(c2, a2, r);
                            if (!e1.empty() && e1 == e2) touch = true;
                        }
                }
            if (touch) q.edges.emplace_back(x, y);
        }
    q.topology = graph_topology(q.cells, q.edges);
    return q;
}

}  // namespace fixtures
