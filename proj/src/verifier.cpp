#include "cantor/verifier.hpp"

#include "cantor/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

namespace cantor {

namespace {

constexpr std::size_t kMaxReportedViolations = 16;

unsigned thread_count(const VerifierLimits& limits, std::uint64_t work) {
    unsigned t = limits.threads ? limits.threads : std::max(1U, std::thread::hardware_concurrency());
    if (work < (std::uint64_t{1} << 14)) t = 1;
    return t;
}

// Runs body(lo, hi, slot) over disjoint chunks of [0, total).
void for_ranges(std::uint64_t total, unsigned threads,
                const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
    if (threads <= 1) {
        body(0, total, 0);
        return;
    }
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = std::min(total, t * chunk);
        const std::uint64_t hi = std::min(total, lo + chunk);
        pool.emplace_back([&body, lo, hi, t] { body(lo, hi, t); });
    }
}

struct Violations {
    std::vector<std::pair<std::uint64_t, std::string>> items;
    std::size_t total = 0;

    void add(std::uint64_t key, std::string msg) {
        ++total;
        if (items.size() < kMaxReportedViolations) items.emplace_back(key, std::move(msg));
    }

    static std::vector<std::string> merge(std::vector<Violations>& parts) {
        std::vector<std::pair<std::uint64_t, std::string>> all;
        std::size_t total = 0;
        for (auto& p : parts) {
            total += p.total;
            for (auto& i : p.items) all.push_back(std::move(i));
        }
        std::sort(all.begin(), all.end());
        std::vector<std::string> out;
        for (std::size_t i = 0; i < all.size() && i < kMaxReportedViolations; ++i) out.push_back(all[i].second);
        if (total > out.size()) out.push_back("... and " + std::to_string(total - out.size()) + " more");
        return out;
    }
};

nlohmann::ordered_json big_json(const BigInt& v) {
    if (v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return static_cast<std::uint64_t>(v);
    return v.str();
}

std::string prefix_text(std::uint64_t code, unsigned width) { return BitString{code, width}.text(); }

// Exact comparison by cross-multiplication; cheaper than Rational's operator<.
bool less(const Rational& a, const Rational& b) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return numerator(a) * denominator(b) < numerator(b) * denominator(a);
}

bool has_graph(const GeometricModel& m) {
    return std::any_of(m.clusters.begin(), m.clusters.end(), [](const Cluster& c) { return c.is_graph(); });
}

// Finds a string over `width` coordinates lying in none of `cubes`.
std::optional<std::uint64_t> find_gap(const std::vector<Truncation>& cubes, unsigned width) {
    std::function<std::optional<std::uint64_t>(unsigned, std::uint64_t, const std::vector<std::size_t>&)> walk =
        [&](unsigned pos, std::uint64_t code, const std::vector<std::size_t>& active) -> std::optional<std::uint64_t> {
        if (active.empty()) return code;
        const std::uint64_t rest = pos >= width ? 0 : ((std::uint64_t{1} << (width - pos)) - 1);
        for (std::size_t i : active)
            if ((cubes[i].care() & rest) == 0) return std::nullopt;
        const std::uint64_t bit = std::uint64_t{1} << (width - 1 - pos);
        for (std::uint64_t b : {std::uint64_t{0}, bit}) {
            std::vector<std::size_t> next;
            for (std::size_t i : active)
                if (!(cubes[i].care() & bit) || (cubes[i].value() & bit) == b) next.push_back(i);
            if (auto gap = walk(pos + 1, code | b, next)) return gap;
        }
        return std::nullopt;
    };
    std::vector<std::size_t> all(cubes.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return walk(0, 0, all);
}

}  // namespace

VerifierLimits VerifierLimits::from_env() {
    VerifierLimits limits;
    if (const char* v = std::getenv("CANTOR_MAX_DEPTH")) {
        char* end = nullptr;
        const unsigned long d = std::strtoul(v, &end, 10);
        if (end && *end == '\0' && d > 0) limits.max_depth = d;
    }
    return limits;
}

nlohmann::ordered_json PartitionReport::to_json() const {
    nlohmann::ordered_json j;
    j["status"] = pass ? "PASS" : "FAIL";
    j["method"] = enumerated ? "enumeration" : "exact-count";
    j["depth"] = depth;
    j["class_sizes"] = nlohmann::ordered_json::array();
    for (const auto& s : class_sizes) j["class_sizes"].push_back(big_json(s));
    j["violations"] = violations;
    return j;
}

PartitionReport check_partition(std::span<const Cone> cones, std::span<const Index> coords,
                                const VerifierLimits& limits) {
    std::vector<Truncation> cubes;
    cubes.reserve(cones.size());
    for (const auto& c : cones) cubes.push_back(truncate(c, coords));
    const auto width = static_cast<unsigned>(coords.size());

    PartitionReport report;
    report.depth = width;
    if (width <= limits.max_depth) {
        report.enumerated = true;
        const std::uint64_t total = std::uint64_t{1} << width;
        const unsigned threads = thread_count(limits, total * std::max<std::size_t>(cubes.size(), 1));
        std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(cubes.size(), 0));
        std::vector<Violations> violations(threads);
        for_ranges(total, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned slot) {
            std::vector<std::size_t> hits;
            for (std::uint64_t code = lo; code < hi; ++code) {
                hits.clear();
                const BitString s{code, width};
                for (std::size_t i = 0; i < cubes.size(); ++i)
                    if (cubes[i].contains(s)) hits.push_back(i);
                for (std::size_t i : hits) ++counts[slot][i];
                if (hits.size() == 1) continue;
                std::string msg = "string '" + s.text() + "' matched ";
                if (hits.empty()) {
                    msg += "no cone";
                } else {
                    msg += std::to_string(hits.size()) + " cones:";
                    for (std::size_t i : hits) msg += " #" + std::to_string(i + 1);
                }
                violations[slot].add(code, std::move(msg));
            }
        });
        for (std::size_t i = 0; i < cubes.size(); ++i) {
            std::uint64_t c = 0;
            for (const auto& part : counts) c += part[i];
            report.class_sizes.emplace_back(c);
        }
        report.violations = Violations::merge(violations);
    } else {
        for (const auto& c : cubes) report.class_sizes.push_back(c.count());
        for (std::size_t i = 0; i < cubes.size(); ++i)
            for (std::size_t j = i + 1; j < cubes.size(); ++j)
                if (!cubes[i].disjoint(cubes[j]))
                    report.violations.push_back("cones #" + std::to_string(i + 1) + " and #" + std::to_string(j + 1) +
                                                " overlap, e.g. on string '" +
                                                prefix_text(cubes[i].value() | cubes[j].value(), width) + "'");
        BigInt volume = 0;
        for (const auto& s : report.class_sizes) volume += s;
        if (report.violations.empty() && volume != pow2(width)) {
            if (auto gap = find_gap(cubes, width))
                report.violations.push_back("string '" + prefix_text(*gap, width) + "' matched no cone");
            else
                report.violations.push_back("cone volumes sum to " + volume.str() + ", expected 2^" +
                                            std::to_string(width));
        }
    }
    report.pass = report.violations.empty();
    return report;
}

PartitionReport check_partition(std::span<const Cone> cones, std::size_t k, const VerifierLimits& limits) {
    std::set<Index> used;
    std::uint32_t last_position = 0;
    for (const auto& c : cones)
        for (const auto& [idx, b] : c.constraints()) {
            used.insert(idx);
            if (idx.tier == Tier::Lambda) last_position = std::max(last_position, idx.ordinal);
        }
    if (k < used.size()) throw DepthError("depth too shallow: the cones constrain " + std::to_string(used.size()) +
                                          " indices, depth " + std::to_string(k) + " requested");
    std::vector<Index> coords(used.begin(), used.end());
    while (coords.size() < k) coords.push_back(Index::lambda(++last_position));
    return check_partition(cones, coords, limits);
}

std::string Cell::label(const GeometricModel& m) const {
    const Cluster& c = m.clusters.at(cluster);
    switch (kind) {
    case Kind::Point: return c.id;
    case Kind::Node: return c.id + "/node:" + c.nodes[element];
    case Kind::Segment: return c.id + "/" + c.arcs[element].id + " " + to_string(image.front().range);
    }
    return {};
}

std::vector<std::size_t> QuotientComplex::degrees() const {
    std::vector<std::size_t> deg(cells_.size(), 0);
    for (const auto& [a, b] : adjacency_) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::optional<std::size_t> QuotientComplex::cell_of(const Cylinder& c) const {
    if (c.cluster >= slots_.size()) return std::nullopt;
    const auto& slots = slots_[c.cluster];
    if (!c.arc) {
        if (slots.size() != 1 || !c.prefix.empty()) return std::nullopt;
        return slots[0][0];
    }
    if (slots.size() == 1 && slots[0].size() == 1) return std::nullopt;
    if (*c.arc >= slots.size() || c.prefix.size() != position_depth_) return std::nullopt;
    std::uint64_t code = 0;
    for (char ch : c.prefix) {
        if (ch != '0' && ch != '1') return std::nullopt;
        code = code * 2 + static_cast<std::uint64_t>(ch - '0');
    }
    return slots[*c.arc][code];
}

std::size_t QuotientComplex::cell_of(const Representation& rep, const BitString& s) const {
    if (s.width != depth_) throw DepthError("string width does not match the complex depth");
    const GeometricModel& m = rep.model();
    auto unary = [&](std::size_t n, const auto& index) {
        std::size_t j = 0;
        while (j + 1 < n && s.at(static_cast<unsigned>(rep.rank(index(j + 1)) - 1)) == 1) ++j;
        return j;
    };
    const std::size_t ci = unary(m.clusters.size(), [](std::size_t j) { return Index::xi(static_cast<std::uint32_t>(j)); });
    const Cluster& c = m.clusters[ci];
    if (!c.is_graph()) return slots_[ci][0][0];
    const std::size_t arc = unary(c.arcs.size(), [&](std::size_t j) {
        return Index::mu({static_cast<std::uint32_t>(ci + 1)}, static_cast<std::uint32_t>(j));
    });
    const std::uint64_t code = position_depth_ ? s.code & ((std::uint64_t{1} << position_depth_) - 1) : 0;
    return slots_[ci][arc][code];
}

std::string QuotientComplex::to_dot(const GeometricModel& m) const {
    std::ostringstream out;
    out << "graph quotient {\n";
    out << "  // depth " << depth_ << ", position depth " << position_depth_ << "\n";
    for (const auto& c : cells_) out << "  c" << c.id << " [label=\"" << c.label(m) << "\"];\n";
    for (const auto& [a, b] : adjacency_) out << "  c" << a << " -- c" << b << ";\n";
    out << "}\n";
    return out.str();
}

nlohmann::ordered_json QuotientComplex::to_json(const GeometricModel& m) const {
    nlohmann::ordered_json j;
    j["depth"] = depth_;
    j["position_depth"] = position_depth_;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells_) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["kind"] = c.kind == Cell::Kind::Point ? "point" : c.kind == Cell::Kind::Node ? "node" : "segment";
        jc["cluster"] = m.clusters[c.cluster].id;
        jc["label"] = c.label(m);
        jc["strings"] = big_json(c.strings);
        jc["image"] = nlohmann::ordered_json::array();
        for (const auto& p : c.image)
            jc["image"].push_back({{"arc", m.clusters[c.cluster].arcs[p.arc].id},
                                   {"lo", to_string(p.range.lo)},
                                   {"hi", to_string(p.range.hi)}});
        j["cells"].push_back(std::move(jc));
    }
    j["adjacency"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : adjacency_) j["adjacency"].push_back({a, b});
    return j;
}

std::string QuotientComplex::to_table(const GeometricModel& m) const {
    std::ostringstream out;
    const auto deg = degrees();
    out << "# depth " << depth_ << ", position depth " << position_depth_ << "\n";
    out << "id\tkind\tdegree\tstrings\tlabel\n";
    for (const auto& c : cells_) {
        out << c.id << '\t' << (c.kind == Cell::Kind::Point ? "point" : c.kind == Cell::Kind::Node ? "node" : "segment")
            << '\t' << deg[c.id] << '\t' << c.strings << '\t' << c.label(m) << '\n';
    }
    return out.str();
}

QuotientComplex quotient_complex(const Representation& rep, std::size_t k, const VerifierLimits& limits) {
    const std::size_t fixed = rep.fixed_coordinates();
    const std::size_t need = has_graph(rep.model()) ? fixed + 1 : fixed;
    if (k < need)
        throw DepthError("depth too shallow to resolve all arcs: need at least " + std::to_string(need) + ", got " +
                         std::to_string(k));
    const std::size_t d = k - fixed;
    if (d > limits.max_depth)
        throw DepthError("position depth " + std::to_string(d) + " exceeds the brute-force bound " +
                         std::to_string(limits.max_depth) + "; raise it explicitly to go deeper");

    QuotientComplex qc;
    qc.depth_ = k;
    qc.position_depth_ = d;
    const GeometricModel& m = rep.model();
    const std::uint64_t cells_per_arc = std::uint64_t{1} << d;

    qc.slots_.resize(m.clusters.size());
    auto add_cell = [&](Cell cell) {
        cell.id = qc.cells_.size();
        qc.cells_.push_back(std::move(cell));
        return qc.cells_.back().id;
    };
    auto decode = [&](const Cone& arc_cone, const std::string& prefix) {
        return decode_spec(AddressSpec{arc_cone, prefix, TailPattern::unconstrained()});
    };

    for (std::size_t ci = 0; ci < m.clusters.size(); ++ci) {
        const Cluster& c = m.clusters[ci];
        const ClusterRegistry& reg = rep.registry(ci);
        auto& slots = qc.slots_[ci];
        if (!c.is_graph()) {
            Cell cell;
            cell.kind = Cell::Kind::Point;
            cell.cluster = ci;
            cell.cylinders.push_back({ci, std::nullopt, ""});
            cell.strings = pow2(static_cast<unsigned>(k - reg.cone.size()));
            slots.assign(1, {static_cast<std::uint32_t>(add_cell(std::move(cell)))});
            continue;
        }
        slots.assign(c.arcs.size(), std::vector<std::uint32_t>(cells_per_arc));
        std::vector<BigInt> weight;
        for (const auto& cone : reg.arc_cones) weight.push_back(pow2(static_cast<unsigned>(k - cone.size() - d)));

        const std::string zeros(d, '0');
        const std::string ones(d, '1');
        for (std::size_t v = 0; v < c.nodes.size(); ++v) {
            Cell cell;
            cell.kind = Cell::Kind::Node;
            cell.cluster = ci;
            cell.element = v;
            std::vector<std::pair<std::size_t, std::uint64_t>> owned;
            for (std::size_t a : c.incident_arcs(c.nodes[v])) {
                const bool at_tail = c.arcs[a].tail == c.nodes[v];
                const std::string& prefix = at_tail ? zeros : ones;
                cell.cylinders.push_back({ci, a, prefix});
                cell.image.push_back({a, decode(reg.arc_cones[a], prefix)});
                cell.strings += weight[a];
                owned.emplace_back(a, at_tail ? 0 : cells_per_arc - 1);
            }
            const auto id = static_cast<std::uint32_t>(add_cell(std::move(cell)));
            for (const auto& [a, code] : owned) slots[a][code] = id;
        }
        for (std::size_t a = 0; a < c.arcs.size(); ++a) {
            for (std::uint64_t code = 1; code + 1 < cells_per_arc; ++code) {
                const std::string prefix = BitString{code, static_cast<unsigned>(d)}.text();
                Cell cell;
                cell.kind = Cell::Kind::Segment;
                cell.cluster = ci;
                cell.element = a;
                cell.cylinders.push_back({ci, a, prefix});
                cell.image.push_back({a, decode(reg.arc_cones[a], prefix)});
                cell.strings = weight[a];
                slots[a][code] = static_cast<std::uint32_t>(add_cell(std::move(cell)));
            }
        }

        // Adjacency: images sharing a point of one arc, or meeting at a node.
        // On an arc the images are the consecutive dyadic intervals of the
        // cylinders, so neighbours in prefix order share an endpoint.
        auto link = [&](std::size_t x, std::size_t y) {
            if (x != y) qc.adjacency_.emplace(std::min(x, y), std::max(x, y));
        };
        std::map<std::string, std::set<std::size_t>> at_node;
        for (std::size_t a = 0; a < c.arcs.size(); ++a) {
            for (std::uint64_t code = 0; code + 1 < cells_per_arc; ++code) link(slots[a][code], slots[a][code + 1]);
            at_node[c.arcs[a].tail].insert(slots[a][0]);
            at_node[c.arcs[a].head].insert(slots[a][cells_per_arc - 1]);
        }
        for (const auto& [node, ids] : at_node)
            for (auto x = ids.begin(); x != ids.end(); ++x)
                for (auto y = std::next(x); y != ids.end(); ++y) link(*x, *y);
    }
    return qc;
}

std::size_t resolution_threshold(const Representation& rep) {
    if (!has_graph(rep.model())) return rep.fixed_coordinates();
    bool parallel = false;
    for (const auto& c : rep.model().clusters) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& a : c.arcs)
            if (!seen.insert(std::minmax(a.tail, a.head)).second) parallel = true;
    }
    return rep.fixed_coordinates() + (parallel ? 2 : 1);
}

nlohmann::ordered_json TopologyReport::to_json() const {
    return {{"components", components}, {"cycle_rank", cycle_rank}, {"branch", branch_degrees},
            {"leaves", leaves},         {"vertices", vertices},     {"edges", edges}};
}

std::string TopologyReport::text() const {
    std::ostringstream out;
    out << "{components:" << components << ", cycle_rank:" << cycle_rank << ", branch:[";
    for (std::size_t i = 0; i < branch_degrees.size(); ++i) out << (i ? "," : "") << branch_degrees[i];
    out << "], leaves:" << leaves << "}";
    return out.str();
}

namespace {

TopologyReport report_for(std::span<const std::size_t> vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    TopologyReport r;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t v : vertices) slot.emplace(v, slot.size());
    std::vector<std::size_t> parent(slot.size()), deg(slot.size(), 0);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = slot.size();
    for (const auto& [a, b] : edges) {
        const std::size_t x = slot.at(a), y = slot.at(b);
        ++deg[x];
        ++deg[y];
        const std::size_t rx = find(x), ry = find(y);
        if (rx != ry) {
            parent[rx] = ry;
            --components;
        }
    }
    r.vertices = slot.size();
    r.edges = edges.size();
    r.components = components;
    r.cycle_rank = static_cast<long long>(r.edges) - static_cast<long long>(r.vertices) + static_cast<long long>(components);
    for (std::size_t d : deg) {
        if (d >= 3) r.branch_degrees.push_back(d);
        if (d == 1) ++r.leaves;
    }
    std::sort(r.branch_degrees.begin(), r.branch_degrees.end());
    return r;
}

std::vector<std::pair<std::size_t, std::size_t>> edges_within(const QuotientComplex& qc,
                                                              const std::function<bool(std::size_t)>& keep) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : qc.adjacency())
        if (keep(e.first) && keep(e.second)) out.push_back(e);
    return out;
}

}  // namespace

TopologyReport topology_report(const QuotientComplex& qc) {
    std::vector<std::size_t> all(qc.cells().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return report_for(all, {qc.adjacency().begin(), qc.adjacency().end()});
}

std::vector<TopologyReport> cluster_reports(const QuotientComplex& qc, std::size_t clusters) {
    std::vector<TopologyReport> out;
    for (std::size_t ci = 0; ci < clusters; ++ci) {
        std::vector<std::size_t> ids;
        for (const auto& c : qc.cells())
            if (c.cluster == ci) ids.push_back(c.id);
        out.push_back(report_for(ids, edges_within(qc, [&](std::size_t id) { return qc.cells()[id].cluster == ci; })));
    }
    return out;
}

std::vector<TopologyReport> component_reports(const QuotientComplex& qc) {
    const std::size_t n = qc.cells().size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [a, b] : qc.adjacency()) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<TopologyReport> out;
    for (const auto& [root, ids] : groups) {
        const std::size_t r = root;
        out.push_back(report_for(ids, edges_within(qc, [&](std::size_t id) { return find(id) == r; })));
    }
    return out;
}

TopologyReport model_topology(const Cluster& c) {
    TopologyReport r;
    if (!c.is_graph()) {
        r.vertices = 1;
        r.components = 1;
        return r;
    }
    r.vertices = c.nodes.size();
    r.edges = c.arcs.size();
    r.components = c.components();
    r.cycle_rank = static_cast<long long>(r.edges) - static_cast<long long>(r.vertices) + static_cast<long long>(r.components);
    for (const auto& v : c.nodes) {
        const std::size_t d = c.incident_arcs(v).size();
        if (d >= 3) r.branch_degrees.push_back(d);
        if (d == 1) ++r.leaves;
    }
    std::sort(r.branch_degrees.begin(), r.branch_degrees.end());
    return r;
}

TopologyReport model_topology(const GeometricModel& m) {
    TopologyReport total;
    for (const auto& c : m.clusters) {
        const TopologyReport r = model_topology(c);
        total.vertices += r.vertices;
        total.edges += r.edges;
        total.components += r.components;
        total.cycle_rank += r.cycle_rank;
        total.leaves += r.leaves;
        total.branch_degrees.insert(total.branch_degrees.end(), r.branch_degrees.begin(), r.branch_degrees.end());
    }
    std::sort(total.branch_degrees.begin(), total.branch_degrees.end());
    return total;
}

std::vector<Rational> diameter_profile(const Representation& rep, std::size_t levels, const VerifierLimits& limits) {
    if (levels > limits.max_depth)
        throw DepthError("position depth " + std::to_string(levels) + " exceeds the brute-force bound " +
                         std::to_string(limits.max_depth));
    std::vector<Rational> out;
    for (std::size_t d = 1; d <= levels; ++d) {
        Rational widest = 0;
        for (const auto& reg : rep.registries())
            for (const auto& cone : reg.arc_cones)
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << d); ++code) {
                    const AddressSpec cyl{cone, BitString{code, static_cast<unsigned>(d)}.text(),
                                          TailPattern::unconstrained()};
                    const Rational w = decode_spec(cyl).width();
                    if (less(widest, w)) widest = w;
                }
        out.push_back(widest);
    }
    return out;
}

nlohmann::ordered_json SeparationReport::to_json() const {
    return {{"status", pass ? "PASS" : "FAIL"}, {"depth", depth}, {"violations", violations}};
}

SeparationReport check_fiber_separation(const Representation& rep, std::span<const PointRef> points) {
    SeparationReport report;
    std::vector<FiberSpec> fibers;
    for (const auto& p : points) {
        fibers.push_back(represent_point(rep, p));
        const bool on_one_arc = resolve(rep.model(), p).kind != PointRef::Kind::Node;
        if (auto problem = check_fiber(fibers.back(), on_one_arc); !problem.empty())
            report.violations.push_back(p.text() + ": " + problem);
    }
    for (std::size_t i = 0; i < fibers.size(); ++i)
        for (std::size_t j = i + 1; j < fibers.size(); ++j)
            for (const auto& a : fibers[i].pieces)
                for (const auto& b : fibers[j].pieces) {
                    if (auto idx = separating_index(a, b))
                        report.depth = std::max(report.depth, rep.rank(*idx));
                    else
                        report.violations.push_back(points[i].text() + " and " + points[j].text() +
                                                    " share addresses: '" + a.text() + "' meets '" + b.text() + "'");
                }
    report.pass = report.violations.empty();
    return report;
}

nlohmann::ordered_json CheckReport::to_json() const {
    return {{"status", pass ? "PASS" : "FAIL"}, {"violations", violations}};
}

CheckReport check_cover(const Representation& rep, const QuotientComplex& qc, const VerifierLimits& limits) {
    const std::size_t k = qc.depth();
    if (k > limits.max_depth || k > kMaxTruncationWidth)
        throw DepthError("enumerating 2^" + std::to_string(k) + " strings exceeds the brute-force bound " +
                         std::to_string(limits.max_depth));
    const std::uint64_t total = std::uint64_t{1} << k;
    const unsigned threads = thread_count(limits, total);
    std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(qc.cells().size(), 0));
    std::vector<Violations> violations(threads);
    for_ranges(total, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned slot) {
        for (std::uint64_t code = lo; code < hi; ++code) {
            const BitString s{code, static_cast<unsigned>(k)};
            try {
                ++counts[slot][qc.cell_of(rep, s)];
            } catch (const Error& e) {
                violations[slot].add(code, "string '" + s.text() + "': " + e.what());
            }
        }
    });
    CheckReport report;
    report.violations = Violations::merge(violations);
    for (const auto& cell : qc.cells()) {
        std::uint64_t c = 0;
        for (const auto& part : counts) c += part[cell.id];
        if (BigInt(c) != cell.strings)
            report.violations.push_back("cell " + std::to_string(cell.id) + " holds " + std::to_string(c) +
                                        " strings, expected " + cell.strings.str());
    }
    report.pass = report.violations.empty();
    return report;
}

CheckReport check_covering(const Representation& rep, const QuotientComplex& qc) {
    CheckReport report;
    const GeometricModel& m = rep.model();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Interval>> per_arc;
    std::vector<bool> cluster_seen(m.clusters.size(), false);
    for (const auto& cell : qc.cells()) {
        cluster_seen[cell.cluster] = true;
        if (cell.cylinders.empty()) report.violations.push_back("cell " + std::to_string(cell.id) + " is empty");
        if (cell.kind != Cell::Kind::Point && cell.image.empty())
            report.violations.push_back("cell " + std::to_string(cell.id) + " has an empty image");
        for (const auto& p : cell.image) per_arc[{cell.cluster, p.arc}].push_back(p.range);
    }
    for (std::size_t ci = 0; ci < m.clusters.size(); ++ci) {
        if (!cluster_seen[ci]) report.violations.push_back("cluster " + m.clusters[ci].id + " has no cell");
        for (std::size_t a = 0; a < m.clusters[ci].arcs.size(); ++a) {
            auto ivs = per_arc[{ci, a}];
            std::sort(ivs.begin(), ivs.end(), [](const Interval& x, const Interval& y) { return less(x.lo, y.lo); });
            Rational reach = 0;
            bool ok = !ivs.empty() && ivs.front().lo == 0;
            for (const auto& iv : ivs) {
                if (less(reach, iv.lo)) ok = false;
                if (less(reach, iv.hi)) reach = iv.hi;
            }
            if (!ok || reach != 1)
                report.violations.push_back("images do not cover arc " + m.clusters[ci].id + "/" +
                                            m.clusters[ci].arcs[a].id);
        }
    }
    report.pass = report.violations.empty();
    return report;
}

CheckReport check_refinement(const QuotientComplex& fine, const QuotientComplex& coarse) {
    CheckReport report;
    if (fine.position_depth() < coarse.position_depth()) {
        report.violations.push_back("fine complex is shallower than the coarse one");
        return report;
    }
    std::vector<bool> hit(coarse.cells().size(), false);
    for (const auto& cell : fine.cells()) {
        std::set<std::size_t> parents;
        for (const auto& cyl : cell.cylinders) {
            Cylinder up = cyl;
            if (up.arc) up.prefix.resize(coarse.position_depth());
            if (auto p = coarse.cell_of(up)) parents.insert(*p);
            else report.violations.push_back("cell " + std::to_string(cell.id) + " has a cylinder outside every coarse cell");
        }
        if (parents.size() != 1)
            report.violations.push_back("cell " + std::to_string(cell.id) + " spans " + std::to_string(parents.size()) +
                                        " coarse cells");
        for (std::size_t p : parents) hit[p] = true;
    }
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (!hit[i]) report.violations.push_back("coarse cell " + std::to_string(i) + " is not hit");
    report.pass = report.violations.empty();
    return report;
}

Verification verify(const Representation& rep, std::size_t k, const VerifierLimits& limits) {
    const std::size_t threshold = resolution_threshold(rep);
    if (k < threshold)
        throw DepthError("depth " + std::to_string(k) + " is below the resolution threshold " +
                         std::to_string(threshold) + " of this model");
    const GeometricModel& m = rep.model();
    std::vector<std::string> violations;
    nlohmann::ordered_json inv;
    auto collect = [&](const std::string& block, const std::vector<std::string>& vs) {
        for (const auto& v : vs) violations.push_back(block + ": " + v);
    };

    // Partitions: the cluster cones, and the leaf cones (J_i ∩ X^j, or J_i for
    // singletons) over all fixed coordinates.
    const std::vector<Cone> clusters = rep.cluster_cones();
    std::vector<Cone> leaves;
    for (const auto& reg : rep.registries()) {
        if (reg.arc_cones.empty()) leaves.push_back(reg.cone);
        else leaves.insert(leaves.end(), reg.arc_cones.begin(), reg.arc_cones.end());
    }
    const PartitionReport cluster_part = check_partition(clusters, m.clusters.size() - 1, limits);
    const PartitionReport leaf_part = check_partition(leaves, rep.coordinates(rep.fixed_coordinates()), limits);
    inv["partition"] = {{"clusters", cluster_part.to_json()}, {"leaves", leaf_part.to_json()}};
    collect("partition.clusters", cluster_part.violations);
    collect("partition.leaves", leaf_part.violations);

    // Every node, singleton and a few arc points, pairwise.
    std::vector<PointRef> points;
    for (const auto& c : m.clusters) {
        if (!c.is_graph()) {
            points.push_back(PointRef::singleton(c.id));
            continue;
        }
        for (const auto& v : c.nodes) points.push_back(PointRef::node(c.id, v));
        for (const auto& a : c.arcs)
            for (const Rational& t : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4)})
                points.push_back(PointRef::arc_point(c.id, a.id, t));
    }
    const SeparationReport sep = check_fiber_separation(rep, points);
    inv["fiber_separation"] = sep.to_json();
    inv["fiber_separation"]["points"] = points.size();
    collect("fiber_separation", sep.violations);

    const std::size_t d = rep.position_depth(k);
    const std::vector<Rational> profile = diameter_profile(rep, d, limits);
    nlohmann::ordered_json jprofile = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        jprofile.push_back(to_string(profile[i]));
        const Rational expected = has_graph(m) ? Rational(BigInt(1), pow2(static_cast<unsigned>(i + 1))) : Rational(0);
        if (profile[i] != expected)
            violations.push_back("diameter_profile: level " + std::to_string(i + 1) + " is " + to_string(profile[i]) +
                                 ", expected " + to_string(expected));
    }
    inv["diameter_profile"] = jprofile;

    const QuotientComplex qc = quotient_complex(rep, k, limits);
    const CheckReport covering = check_covering(rep, qc);
    inv["covering"] = covering.to_json();
    collect("covering", covering.violations);

    if (k <= limits.max_depth) {
        const CheckReport cover = check_cover(rep, qc, limits);
        inv["string_cover"] = cover.to_json();
        collect("string_cover", cover.violations);
    } else {
        inv["string_cover"] = {{"status", "SKIPPED"}, {"reason", "depth exceeds the brute-force bound"}};
    }

    if (k > rep.fixed_coordinates() + (has_graph(m) ? 1 : 0)) {
        const CheckReport nest = check_refinement(qc, quotient_complex(rep, k - 1, limits));
        inv["refinement"] = nest.to_json();
        collect("refinement", nest.violations);
    }

    const TopologyReport expected = model_topology(m);
    const TopologyReport actual = topology_report(qc);
    nlohmann::ordered_json jt;
    jt["model"] = expected.to_json();
    jt["quotient"] = actual.to_json();
    if (!expected.same_topology(actual))
        violations.push_back("topology: quotient " + actual.text() + " differs from model " + expected.text());
    const auto per_cluster = cluster_reports(qc, m.clusters.size());
    jt["clusters"] = nlohmann::ordered_json::array();
    for (std::size_t ci = 0; ci < m.clusters.size(); ++ci) {
        const TopologyReport want = model_topology(m.clusters[ci]);
        jt["clusters"].push_back({{"id", m.clusters[ci].id}, {"quotient", per_cluster[ci].to_json()}});
        if (!want.same_topology(per_cluster[ci]))
            violations.push_back("topology: cluster " + m.clusters[ci].id + " quotient " + per_cluster[ci].text() +
                                 " differs from " + want.text());
    }
    inv["topology"] = jt;

    Verification out;
    out.pass = violations.empty();
    out.report["status"] = out.pass ? "PASS" : "FAIL";
    out.report["depth"] = k;
    out.report["position_depth"] = d;
    out.report["violations"] = violations;
    out.report["invariants"] = inv;
    return out;
}

}  // namespace cantor
