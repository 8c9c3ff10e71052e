#pragma once

#include "cantor/arc_codec.hpp"
#include "cantor/cone.hpp"
#include "cantor/index.hpp"
#include "cantor/model.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cantor {

/// Cells carried by one cluster cone J_i.
struct ClusterRegistry {
    std::size_t cluster = 0;
    Cone cone;                          // J_i
    std::vector<Cone> arc_cones;        // J_i ∩ X^j, parallel to Cluster::arcs
    std::vector<FiberSpec> node_fibers; // parallel to Cluster::nodes
    std::optional<FiberSpec> point;     // singleton clusters only

    friend bool operator==(const ClusterRegistry&, const ClusterRegistry&) = default;
};

/// Decomposition-space representation of a GeometricModel.
///
/// Cluster cones J_1..J_s use indices xi1..xi_{s-1}; the arcs of graph
/// cluster i use mu1@Ci..mu_{r-1}@Ci; every arc writes its parameter digits
/// to the shared position axis la1, la2, ....
class Representation {
public:
    const GeometricModel& model() const noexcept { return model_; }

    /// Issued cluster and arc indices, in canonical order.
    const std::vector<Index>& indices() const noexcept { return indices_; }
    const std::vector<ClusterRegistry>& registries() const noexcept { return registries_; }
    const ClusterRegistry& registry(std::size_t cluster) const { return registries_.at(cluster); }

    std::vector<Cone> cluster_cones() const;

    /// Number of cluster and arc coordinates; position digits start after them.
    std::size_t fixed_coordinates() const noexcept { return indices_.size(); }

    /// The first k canonical coordinates (indices(), then la1, la2, ...).
    std::vector<Index> coordinates(std::size_t k) const;

    /// 1-based position of `i` in the canonical coordinate order.
    std::size_t rank(const Index& i) const;

    /// Position depth of a total depth k.
    std::size_t position_depth(std::size_t k) const;

    PositionAxis axis() const noexcept { return {}; }

    friend bool operator==(const Representation&, const Representation&) = default;

private:
    friend Representation build(const GeometricModel& model);

    GeometricModel model_;
    std::vector<Index> indices_;
    std::vector<ClusterRegistry> registries_;
};

/// Validates the model and allocates every cone. Deterministic.
Representation build(const GeometricModel& model);

/// Fiber of a model point. Throws ModelError for dangling references.
FiberSpec represent_point(const Representation& rep, const PointRef& p);

/// Where an address lands in the model.
struct Location {
    std::size_t cluster = 0;
    std::optional<std::size_t> arc;
    Interval range;                // parameter interval on the arc
    std::optional<PointRef> point; // set when the address pins a single model point

    /// `C1/E2@1/2`, `C1/node:a`, `C3`, or `C1/E2 [1/4, 1/2]` for a segment.
    std::string text(const GeometricModel& m) const;
};

/// Throws AmbiguousAddress when the cone part does not fix the cluster (and
/// the arc, for graph clusters).
Location locate(const Representation& rep, const AddressSpec& s);

/// Bits are read over the first |bits| canonical coordinates.
Location locate(const Representation& rep, const BitString& bits);

struct Polycrystal {
    Representation rep;

    /// Cells of crystal i, i.e. the registry of cluster i.
    const ClusterRegistry& crystal(std::size_t i) const { return rep.registry(i); }
    std::size_t size() const noexcept { return rep.registries().size(); }
};

/// n copies `Z1..Zn` of a graph template, one per cluster cone J_i.
/// With `require_dendrite` the template must be a tree.
Polycrystal build_polycrystal(std::size_t n, const Cluster& crystal_template, bool require_dendrite = false);

/// Representation manifest: the model plus every cone and node fiber in
/// canonical text form.
nlohmann::ordered_json to_manifest(const Representation& rep);

/// Rebuilds from the embedded model and checks every recorded cone against
/// the rebuilt one. Throws ModelError on any mismatch.
Representation from_manifest(const nlohmann::json& j);

}  // namespace cantor
