#include "cantor/model.hpp"

#include "cantor/errors.hpp"

#include <numeric>
#include <set>

namespace cantor {

Cluster Cluster::singleton(std::string id) {
    Cluster c;
    c.kind = Kind::Singleton;
    c.id = std::move(id);
    return c;
}

Cluster Cluster::graph(std::string id, std::vector<std::string> nodes, std::vector<Arc> arcs) {
    Cluster c;
    c.kind = Kind::Graph;
    c.id = std::move(id);
    c.nodes = std::move(nodes);
    c.arcs = std::move(arcs);
    return c;
}

std::optional<std::size_t> Cluster::node_index(std::string_view node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == node) return i;
    return std::nullopt;
}

std::optional<std::size_t> Cluster::arc_index(std::string_view arc) const {
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].id == arc) return i;
    return std::nullopt;
}

std::vector<std::size_t> Cluster::incident_arcs(std::string_view node) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].tail == node || arcs[i].head == node) out.push_back(i);
    return out;
}

std::size_t Cluster::components() const {
    if (!is_graph()) return 1;
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = nodes.size();
    for (const auto& a : arcs) {
        auto u = node_index(a.tail), v = node_index(a.head);
        if (!u || !v) continue;
        auto ru = find(*u), rv = find(*v);
        if (ru != rv) {
            parent[ru] = rv;
            --count;
        }
    }
    return count;
}

void GeometricModel::validate() const {
    if (clusters.empty()) throw ModelError("clusters", "model needs at least one cluster");
    std::set<std::string> cluster_ids;
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        const Cluster& c = clusters[ci];
        const std::string where = "clusters[" + std::to_string(ci) + "]";
        if (c.id.empty()) throw ModelError(where + ".id", "empty cluster id");
        if (c.id.find('/') != std::string::npos) throw ModelError(where + ".id", "cluster id may not contain '/'");
        if (!cluster_ids.insert(c.id).second) throw ModelError(where + ".id", "duplicate cluster id '" + c.id + "'");
        if (!c.is_graph()) {
            if (!c.nodes.empty() || !c.arcs.empty())
                throw ModelError(where, "singleton cluster may not declare nodes or arcs");
            continue;
        }
        if (c.arcs.empty()) throw ModelError(where + ".arcs", "graph cluster needs at least one arc");
        std::set<std::string> node_ids;
        for (std::size_t ni = 0; ni < c.nodes.size(); ++ni) {
            const std::string field = where + ".nodes[" + std::to_string(ni) + "]";
            if (c.nodes[ni].empty()) throw ModelError(field, "empty node id");
            if (!node_ids.insert(c.nodes[ni]).second)
                throw ModelError(field, "duplicate node id '" + c.nodes[ni] + "'");
        }
        std::set<std::string> arc_ids;
        std::set<std::string> used;
        for (std::size_t ai = 0; ai < c.arcs.size(); ++ai) {
            const Arc& a = c.arcs[ai];
            const std::string field = where + ".arcs[" + std::to_string(ai) + "]";
            if (a.id.empty()) throw ModelError(field + ".id", "empty arc id");
            if (a.id.find_first_of("@/:") != std::string::npos)
                throw ModelError(field + ".id", "arc id may not contain '@', '/' or ':'");
            if (!arc_ids.insert(a.id).second) throw ModelError(field + ".id", "duplicate arc id '" + a.id + "'");
            if (!node_ids.contains(a.tail)) throw ModelError(field + ".tail", "unknown node '" + a.tail + "'");
            if (!node_ids.contains(a.head)) throw ModelError(field + ".head", "unknown node '" + a.head + "'");
            if (a.tail == a.head)
                throw ModelError(field, "self-loop at node '" + a.tail + "'; split the loop into at least two arcs");
            used.insert(a.tail);
            used.insert(a.head);
        }
        for (std::size_t ni = 0; ni < c.nodes.size(); ++ni)
            if (!used.contains(c.nodes[ni]))
                throw ModelError(where + ".nodes[" + std::to_string(ni) + "]",
                                 "node '" + c.nodes[ni] + "' lies on no arc; model isolated points as singleton clusters");
    }
}

std::optional<std::size_t> GeometricModel::cluster_index(std::string_view id) const {
    for (std::size_t i = 0; i < clusters.size(); ++i)
        if (clusters[i].id == id) return i;
    return std::nullopt;
}

nlohmann::ordered_json GeometricModel::to_json() const {
    nlohmann::ordered_json out;
    out["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : clusters) {
        nlohmann::ordered_json jc;
        jc["type"] = c.is_graph() ? "graph" : "singleton";
        jc["id"] = c.id;
        if (c.is_graph()) {
            jc["nodes"] = c.nodes;
            jc["arcs"] = nlohmann::ordered_json::array();
            for (const auto& a : c.arcs) jc["arcs"].push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
        }
        out["clusters"].push_back(std::move(jc));
    }
    return out;
}

namespace {

std::string id_field(const nlohmann::json& j, const std::string& field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ModelError(field, "expected a string or integer id");
}

const nlohmann::json& member(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ModelError(where.empty() ? std::string(key) : where + "." + key, "missing field");
    return *it;
}

}  // namespace

GeometricModel GeometricModel::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ModelError("$", "model must be a JSON object");
    const auto& jc = member(j, "clusters", "");
    if (!jc.is_array()) throw ModelError("clusters", "expected an array");
    GeometricModel m;
    for (std::size_t ci = 0; ci < jc.size(); ++ci) {
        const std::string where = "clusters[" + std::to_string(ci) + "]";
        const auto& c = jc[ci];
        if (!c.is_object()) throw ModelError(where, "expected an object");
        const auto& type = member(c, "type", where);
        if (!type.is_string()) throw ModelError(where + ".type", "expected \"singleton\" or \"graph\"");
        const std::string default_id = "C" + std::to_string(ci + 1);
        if (type == "singleton") {
            m.clusters.push_back(Cluster::singleton(id_field(member(c, "id", where), where + ".id")));
        } else if (type == "graph") {
            std::string id = c.contains("id") ? id_field(c["id"], where + ".id") : default_id;
            const auto& jn = member(c, "nodes", where);
            const auto& ja = member(c, "arcs", where);
            if (!jn.is_array()) throw ModelError(where + ".nodes", "expected an array");
            if (!ja.is_array()) throw ModelError(where + ".arcs", "expected an array");
            std::vector<std::string> nodes;
            for (std::size_t ni = 0; ni < jn.size(); ++ni)
                nodes.push_back(id_field(jn[ni], where + ".nodes[" + std::to_string(ni) + "]"));
            std::vector<Arc> arcs;
            for (std::size_t ai = 0; ai < ja.size(); ++ai) {
                const std::string af = where + ".arcs[" + std::to_string(ai) + "]";
                const auto& a = ja[ai];
                if (!a.is_object()) throw ModelError(af, "expected an object");
                Arc arc;
                arc.id = a.contains("id") ? id_field(a["id"], af + ".id") : "E" + std::to_string(ai + 1);
                arc.tail = id_field(member(a, "tail", af), af + ".tail");
                arc.head = id_field(member(a, "head", af), af + ".head");
                arcs.push_back(std::move(arc));
            }
            m.clusters.push_back(Cluster::graph(std::move(id), std::move(nodes), std::move(arcs)));
        } else {
            throw ModelError(where + ".type", "expected \"singleton\" or \"graph\"");
        }
    }
    m.validate();
    return m;
}

PointRef PointRef::node(std::string cluster, std::string node) {
    return {Kind::Node, std::move(cluster), std::move(node), 0};
}

PointRef PointRef::arc_point(std::string cluster, std::string arc, Rational t) {
    return {Kind::ArcPoint, std::move(cluster), std::move(arc), std::move(t)};
}

PointRef PointRef::singleton(std::string cluster) { return {Kind::Singleton, std::move(cluster), {}, 0}; }

std::string PointRef::text() const {
    switch (kind) {
    case Kind::Singleton: return cluster;
    case Kind::Node: return cluster + "/node:" + element;
    case Kind::ArcPoint: return cluster + "/" + element + "@" + to_string(t);
    }
    return {};
}

PointRef PointRef::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == 0) throw ParseError("point reference without cluster: '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return singleton(std::string(text));
    std::string cluster(text.substr(0, slash));
    const std::string_view rest = text.substr(slash + 1);
    if (rest == "point") return singleton(std::move(cluster));
    if (rest.starts_with("node:")) {
        if (rest.size() == 5) throw ParseError("empty node name in '" + std::string(text) + "'");
        return node(std::move(cluster), std::string(rest.substr(5)));
    }
    const auto at = rest.find('@');
    if (at == std::string_view::npos || at == 0)
        throw ParseError("expected 'cluster/arc@t', 'cluster/node:name' or 'cluster', got '" + std::string(text) + "'");
    return arc_point(std::move(cluster), std::string(rest.substr(0, at)), parse_rational(rest.substr(at + 1)));
}

PointRef resolve(const GeometricModel& m, const PointRef& p) {
    const auto ci = m.cluster_index(p.cluster);
    if (!ci) throw ModelError("point.cluster", "unknown cluster '" + p.cluster + "'");
    const Cluster& c = m.clusters[*ci];
    switch (p.kind) {
    case PointRef::Kind::Singleton:
        if (c.is_graph()) throw ModelError("point", "cluster '" + c.id + "' is a graph; name a node or arc point");
        return p;
    case PointRef::Kind::Node:
        if (!c.is_graph() || !c.node_index(p.element))
            throw ModelError("point.node", "unknown node '" + p.element + "' in cluster '" + c.id + "'");
        return p;
    case PointRef::Kind::ArcPoint: {
        const auto ai = c.is_graph() ? c.arc_index(p.element) : std::nullopt;
        if (!ai) throw ModelError("point.arc", "unknown arc '" + p.element + "' in cluster '" + c.id + "'");
        if (p.t < 0 || p.t > 1) throw ModelError("point.t", "arc parameter " + to_string(p.t) + " outside [0,1]");
        if (p.t == 0) return PointRef::node(p.cluster, c.arcs[*ai].tail);
        if (p.t == 1) return PointRef::node(p.cluster, c.arcs[*ai].head);
        return p;
    }
    }
    return p;
}

}  // namespace cantor
