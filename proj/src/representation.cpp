#include "cantor/representation.hpp"

#include "cantor/errors.hpp"

#include <algorithm>
#include <functional>

namespace cantor {

namespace {

constexpr const char* kManifestFormat = "cantor-representation/1";

// Reads the unary-prefix pattern of an n-cone partition. `bit(j)` gives the
// j-th (0-based) index bit if known. Returns the candidate range [lo, hi].
std::pair<std::size_t, std::size_t> decode_unary(std::size_t n,
                                                 const std::function<std::optional<int>(std::size_t)>& bit) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto b = bit(j);
        if (!b) return {j, n - 1};
        if (*b == 0) return {j, j};
    }
    return {n - 1, n - 1};
}

Index arc_index(std::size_t cluster, std::size_t ordinal) {
    return Index::mu({static_cast<std::uint32_t>(cluster + 1)}, static_cast<std::uint32_t>(ordinal));
}

FiberSpec node_fiber(const Cluster& c, const ClusterRegistry& reg, std::string_view node) {
    FiberSpec f;
    for (std::size_t a : c.incident_arcs(node)) {
        const bool at_tail = c.arcs[a].tail == node;
        f.pieces.push_back({reg.arc_cones[a], "", at_tail ? TailPattern::zeros() : TailPattern::ones()});
    }
    return f;
}

}  // namespace

std::vector<Cone> Representation::cluster_cones() const {
    std::vector<Cone> out;
    out.reserve(registries_.size());
    for (const auto& r : registries_) out.push_back(r.cone);
    return out;
}

std::vector<Index> Representation::coordinates(std::size_t k) const {
    std::vector<Index> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k && i < indices_.size(); ++i) out.push_back(indices_[i]);
    for (std::size_t j = indices_.size(); j < k; ++j)
        out.push_back(Index::lambda(static_cast<std::uint32_t>(j - indices_.size() + 1)));
    return out;
}

std::size_t Representation::rank(const Index& i) const {
    if (i.tier == Tier::Lambda) return indices_.size() + i.ordinal;
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
    if (it == indices_.end() || *it != i) throw DomainError("index " + i.name() + " is not used by this representation");
    return static_cast<std::size_t>(it - indices_.begin()) + 1;
}

std::size_t Representation::position_depth(std::size_t k) const {
    return k > indices_.size() ? k - indices_.size() : 0;
}

Representation build(const GeometricModel& model) {
    model.validate();
    Representation rep;
    rep.model_ = model;
    IndexAllocator alloc;
    const auto& clusters = model.clusters;
    const std::vector<Cone> cluster_cones = partition(alloc, Scope{Tier::Xi, {}}, clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        ClusterRegistry reg;
        reg.cluster = i;
        reg.cone = cluster_cones[i];
        if (clusters[i].is_graph()) {
            const Scope scope{Tier::Mu, {static_cast<std::uint32_t>(i + 1)}};
            reg.arc_cones = refine(reg.cone, alloc, scope, clusters[i].arcs.size());
        }
        rep.registries_.push_back(std::move(reg));
    }
    alloc.declare_axis();
    rep.indices_ = alloc.issued();
    std::sort(rep.indices_.begin(), rep.indices_.end());

    for (std::size_t i = 0; i < clusters.size(); ++i) {
        ClusterRegistry& reg = rep.registries_[i];
        if (clusters[i].is_graph()) {
            for (const auto& node : clusters[i].nodes) reg.node_fibers.push_back(node_fiber(clusters[i], reg, node));
        } else {
            reg.point = FiberSpec{{AddressSpec{reg.cone, "", TailPattern::unconstrained()}}};
        }
    }
    return rep;
}

FiberSpec represent_point(const Representation& rep, const PointRef& p) {
    const PointRef ref = resolve(rep.model(), p);
    const std::size_t ci = *rep.model().cluster_index(ref.cluster);
    const Cluster& c = rep.model().clusters[ci];
    const ClusterRegistry& reg = rep.registry(ci);
    switch (ref.kind) {
    case PointRef::Kind::Singleton: return *reg.point;
    case PointRef::Kind::Node: return reg.node_fibers[*c.node_index(ref.element)];
    case PointRef::Kind::ArcPoint: return encode_param(ref.t, reg.arc_cones[*c.arc_index(ref.element)]);
    }
    return {};
}

std::string Location::text(const GeometricModel& m) const {
    if (point) return point->text();
    const Cluster& c = m.clusters.at(cluster);
    if (!arc) return c.id;
    return c.id + "/" + c.arcs[*arc].id + " " + to_string(range);
}

namespace {

std::string cluster_candidate(const GeometricModel& m, std::size_t ci) { return m.clusters[ci].id; }

std::string arc_candidate(const GeometricModel& m, std::size_t ci, std::size_t ai) {
    return m.clusters[ci].id + "/" + m.clusters[ci].arcs[ai].id;
}

template <typename Bit, typename Candidate>
std::size_t resolve_choice(std::size_t n, Bit&& bit, Candidate&& name) {
    const auto [lo, hi] = decode_unary(n, bit);
    if (lo != hi) {
        std::vector<std::string> candidates;
        for (std::size_t i = lo; i <= hi; ++i) candidates.push_back(name(i));
        throw AmbiguousAddress(std::move(candidates));
    }
    return lo;
}

Location finish(const Representation& rep, std::size_t ci, std::optional<std::size_t> ai, Interval range) {
    const Cluster& c = rep.model().clusters[ci];
    Location loc{ci, ai, range, std::nullopt};
    if (!c.is_graph()) {
        loc.range = {0, 0};
        loc.point = PointRef::singleton(c.id);
    } else if (range.is_point()) {
        loc.point = resolve(rep.model(), PointRef::arc_point(c.id, c.arcs[*ai].id, range.lo));
    }
    return loc;
}

}  // namespace

Location locate(const Representation& rep, const AddressSpec& s) {
    const GeometricModel& m = rep.model();
    const std::size_t ci = resolve_choice(
        m.clusters.size(),
        [&](std::size_t j) -> std::optional<int> {
            auto b = s.cone.bit(Index::xi(static_cast<std::uint32_t>(j + 1)));
            return b ? std::optional<int>(*b) : std::nullopt;
        },
        [&](std::size_t i) { return cluster_candidate(m, i); });
    const Cluster& c = m.clusters[ci];
    if (!c.is_graph()) return finish(rep, ci, std::nullopt, {0, 0});
    const std::size_t ai = resolve_choice(
        c.arcs.size(),
        [&](std::size_t j) -> std::optional<int> {
            auto b = s.cone.bit(arc_index(ci, j + 1));
            return b ? std::optional<int>(*b) : std::nullopt;
        },
        [&](std::size_t a) { return arc_candidate(m, ci, a); });
    return finish(rep, ci, ai, decode_spec(s));
}

Location locate(const Representation& rep, const BitString& bits) {
    const GeometricModel& m = rep.model();
    auto bit_at = [&](const Index& idx) -> std::optional<int> {
        const std::size_t r = rep.rank(idx);
        if (r > bits.width) return std::nullopt;
        return bits.at(static_cast<unsigned>(r - 1));
    };
    const std::size_t ci = resolve_choice(
        m.clusters.size(), [&](std::size_t j) { return bit_at(Index::xi(static_cast<std::uint32_t>(j + 1))); },
        [&](std::size_t i) { return cluster_candidate(m, i); });
    const Cluster& c = m.clusters[ci];
    if (!c.is_graph()) return finish(rep, ci, std::nullopt, {0, 0});
    const std::size_t ai = resolve_choice(
        c.arcs.size(), [&](std::size_t j) { return bit_at(arc_index(ci, j + 1)); },
        [&](std::size_t a) { return arc_candidate(m, ci, a); });
    std::string prefix;
    for (unsigned i = static_cast<unsigned>(rep.fixed_coordinates()); i < bits.width; ++i)
        prefix += static_cast<char>('0' + bits.at(i));
    return finish(rep, ci, ai, decode_spec(AddressSpec{rep.registry(ci).arc_cones[ai], prefix, TailPattern::unconstrained()}));
}

Polycrystal build_polycrystal(std::size_t n, const Cluster& crystal_template, bool require_dendrite) {
    if (n == 0) throw DomainError("polycrystal needs at least one crystal");
    if (!crystal_template.is_graph()) throw ModelError("template", "crystal template must be a graph");
    GeometricModel probe{{crystal_template}};
    probe.clusters[0].id = "template";
    probe.validate();
    if (require_dendrite) {
        const bool tree = crystal_template.components() == 1 &&
                          crystal_template.arcs.size() + 1 == crystal_template.nodes.size();
        if (!tree) throw ModelError("template", "template is not a dendrite (it must be a connected tree)");
    }
    GeometricModel model;
    for (std::size_t i = 0; i < n; ++i) {
        Cluster c = crystal_template;
        c.id = "Z" + std::to_string(i + 1);
        model.clusters.push_back(std::move(c));
    }
    return Polycrystal{build(model)};
}

nlohmann::ordered_json to_manifest(const Representation& rep) {
    nlohmann::ordered_json out;
    out["format"] = kManifestFormat;
    out["model"] = rep.model().to_json();
    out["indices"] = nlohmann::ordered_json::array();
    for (const auto& i : rep.indices()) out["indices"].push_back(i.name());
    out["axis"] = "la";
    out["clusters"] = nlohmann::ordered_json::array();
    for (const auto& reg : rep.registries()) {
        const Cluster& c = rep.model().clusters[reg.cluster];
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["type"] = c.is_graph() ? "graph" : "singleton";
        jc["cone"] = reg.cone.text();
        if (c.is_graph()) {
            jc["arcs"] = nlohmann::ordered_json::array();
            for (std::size_t a = 0; a < c.arcs.size(); ++a)
                jc["arcs"].push_back({{"id", c.arcs[a].id},
                                      {"tail", c.arcs[a].tail},
                                      {"head", c.arcs[a].head},
                                      {"cone", reg.arc_cones[a].text()}});
            jc["nodes"] = nlohmann::ordered_json::array();
            for (std::size_t v = 0; v < c.nodes.size(); ++v) {
                nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
                for (const auto& p : reg.node_fibers[v].pieces) pieces.push_back(p.text());
                jc["nodes"].push_back({{"id", c.nodes[v]}, {"fiber", std::move(pieces)}});
            }
        } else {
            jc["fiber"] = nlohmann::ordered_json::array({reg.point->pieces.front().text()});
        }
        out["clusters"].push_back(std::move(jc));
    }
    return out;
}

Representation from_manifest(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format") || j["format"] != kManifestFormat)
        throw ModelError("format", std::string("expected a \"") + kManifestFormat + "\" manifest");
    if (!j.contains("model")) throw ModelError("model", "missing field");
    Representation rep = build(GeometricModel::from_json(j["model"]));
    const nlohmann::ordered_json expected = to_manifest(rep);
    for (const char* key : {"indices", "clusters"}) {
        if (!j.contains(key)) throw ModelError(key, "missing field");
        if (nlohmann::json::parse(expected[key].dump()) != j[key])
            throw ModelError(key, "recorded cones do not match the cones rebuilt from the model");
    }
    return rep;
}

}  // namespace cantor
