#pragma once

#include "cantor/rational.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// Oriented arc; its tail sits at parameter 0 and its head at parameter 1.
struct Arc {
    std::string id;
    std::string tail;
    std::string head;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Cluster {
    enum class Kind { Singleton, Graph };

    Kind kind = Kind::Singleton;
    std::string id;
    std::vector<std::string> nodes;  // graph clusters only
    std::vector<Arc> arcs;           // graph clusters only

    static Cluster singleton(std::string id);
    static Cluster graph(std::string id, std::vector<std::string> nodes, std::vector<Arc> arcs);

    bool is_graph() const noexcept { return kind == Kind::Graph; }
    std::optional<std::size_t> node_index(std::string_view node) const;
    std::optional<std::size_t> arc_index(std::string_view arc) const;

    /// Arcs with `node` as an endpoint, in declaration order.
    std::vector<std::size_t> incident_arcs(std::string_view node) const;

    /// Connected components of the graph (1 for a singleton).
    std::size_t components() const;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// A compact pattern given as a disjoint union of finite graphs and points.
struct GeometricModel {
    std::vector<Cluster> clusters;

    /// Throws ModelError naming the offending field.
    void validate() const;

    std::optional<std::size_t> cluster_index(std::string_view id) const;

    nlohmann::ordered_json to_json() const;

    /// Parses and validates. Throws ModelError.
    static GeometricModel from_json(const nlohmann::json& j);

    friend bool operator==(const GeometricModel&, const GeometricModel&) = default;
};

/// Reference to one point of a model.
///
/// Text forms: `C1/E2@1/2` (interior arc point, exact fraction), `C1/node:a`,
/// and `C3` for a singleton cluster. `C1/E2@0` and `C1/E2@1` name the arc's
/// tail and head and are normalized to node references.
struct PointRef {
    enum class Kind { Node, ArcPoint, Singleton };

    Kind kind = Kind::Singleton;
    std::string cluster;
    std::string element;  // node id or arc id
    Rational t = 0;       // ArcPoint only, strictly inside (0,1)

    static PointRef node(std::string cluster, std::string node);
    static PointRef arc_point(std::string cluster, std::string arc, Rational t);
    static PointRef singleton(std::string cluster);

    std::string text() const;

    /// Syntax only; use `resolve` to check it against a model.
    static PointRef parse(std::string_view text);

    friend bool operator==(const PointRef&, const PointRef&) = default;
};

/// Validates `p` against `m` and converts arc endpoints to node references.
/// Throws ModelError for dangling references.
PointRef resolve(const GeometricModel& m, const PointRef& p);

}  // namespace cantor
