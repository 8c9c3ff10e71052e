#pragma once

#include "cantor/cone.hpp"
#include "cantor/model.hpp"
#include "cantor/rational.hpp"
#include "cantor/representation.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cantor {

/// Bound on brute-force work. `max_depth` caps the number of enumerated
/// coordinates for string enumeration, and the position depth of a quotient
/// complex (each arc then has at most 2^max_depth cells).
struct VerifierLimits {
    std::size_t max_depth = 20;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Defaults, with `CANTOR_MAX_DEPTH` overriding max_depth when set.
    static VerifierLimits from_env();
};

struct PartitionReport {
    bool pass = false;
    bool enumerated = false;  // true: every string visited; false: exact cube counting
    std::size_t depth = 0;
    std::vector<BigInt> class_sizes;
    std::vector<std::string> violations;

    nlohmann::ordered_json to_json() const;
};

/// Checks that every bit string over `coords` lies in exactly one cone.
/// Depths up to limits.max_depth are enumerated string by string; deeper
/// checks use pairwise disjointness plus an exact volume count, which is
/// equivalent. Throws DepthError("truncation too shallow") when a cone
/// constrains an index outside `coords`.
PartitionReport check_partition(std::span<const Cone> cones, std::span<const Index> coords,
                                const VerifierLimits& limits = {});

/// Uses the canonical order of the constrained indices, padded with unused
/// position indices up to k coordinates.
PartitionReport check_partition(std::span<const Cone> cones, std::size_t k, const VerifierLimits& limits = {});

/// A depth-k cylinder: cluster, arc (absent for singletons) and the position
/// digits la1..la_d.
struct Cylinder {
    std::size_t cluster = 0;
    std::optional<std::size_t> arc;
    std::string prefix;

    auto operator<=>(const Cylinder&) const = default;
};

/// Part of a cell's image lying on one arc.
struct ArcPiece {
    std::size_t arc = 0;
    Interval range;
};

struct Cell {
    enum class Kind { Point, Node, Segment };

    std::size_t id = 0;
    Kind kind = Kind::Segment;
    std::size_t cluster = 0;
    std::size_t element = 0;  // node index for Node, arc index for Segment
    std::vector<Cylinder> cylinders;
    std::vector<ArcPiece> image;  // empty for Point cells
    BigInt strings = 0;           // depth-k strings inside the cell

    std::string label(const GeometricModel& m) const;
};

/// Finite-depth quotient of the Cantor cube by the representation.
///
/// Every depth-k string lies in exactly one cell. Arc cylinders become cells
/// of their own, except that the end cylinders of all arcs meeting at a node
/// are merged into that node's cell, since the node's fiber has one piece in
/// each. Two cells are adjacent when their decoded images share a point of
/// the model, which is how each dyadic boundary point (whose two fiber pieces
/// lie in neighbouring cylinders) links consecutive cells.
class QuotientComplex {
public:
    std::size_t depth() const noexcept { return depth_; }
    std::size_t position_depth() const noexcept { return position_depth_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const std::set<std::pair<std::size_t, std::size_t>>& adjacency() const noexcept { return adjacency_; }
    std::vector<std::size_t> degrees() const;

    /// Cell holding a cylinder; nullopt if the cylinder has the wrong depth.
    std::optional<std::size_t> cell_of(const Cylinder& c) const;

    /// Cell holding a full-depth canonical string, read through the cluster
    /// and arc prefix codes.
    std::size_t cell_of(const Representation& rep, const BitString& s) const;

    std::string to_dot(const GeometricModel& m) const;
    nlohmann::ordered_json to_json(const GeometricModel& m) const;
    std::string to_table(const GeometricModel& m) const;

private:
    friend QuotientComplex quotient_complex(const Representation&, std::size_t, const VerifierLimits&);

    std::size_t depth_ = 0;
    std::size_t position_depth_ = 0;
    std::vector<Cell> cells_;
    std::set<std::pair<std::size_t, std::size_t>> adjacency_;
    std::vector<std::vector<std::vector<std::uint32_t>>> slots_;  // cluster, arc, prefix code -> cell
};

/// Throws DepthError when k < fixed coordinates + 1 ("depth too shallow to
/// resolve all arcs"; models made only of singletons need just the fixed
/// coordinates) or when the position depth exceeds limits.max_depth.
QuotientComplex quotient_complex(const Representation& rep, std::size_t k, const VerifierLimits& limits = {});

/// Smallest depth from which the quotient's topology is stable: one position
/// digit past the fixed coordinates, or two when some pair of nodes is joined
/// by parallel arcs. Just the fixed coordinates when there are no arcs.
std::size_t resolution_threshold(const Representation& rep);

struct TopologyReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t components = 0;
    long long cycle_rank = 0;
    std::vector<std::size_t> branch_degrees;  // sorted degrees >= 3
    std::size_t leaves = 0;

    /// Compares the homeomorphism invariants: components, cycle rank,
    /// branch degrees and leaves.
    bool same_topology(const TopologyReport& o) const {
        return components == o.components && cycle_rank == o.cycle_rank && branch_degrees == o.branch_degrees &&
               leaves == o.leaves;
    }
    nlohmann::ordered_json to_json() const;
    std::string text() const;
};

TopologyReport topology_report(const QuotientComplex& qc);

/// Report for the cells owned by each cluster, in cluster order.
std::vector<TopologyReport> cluster_reports(const QuotientComplex& qc, std::size_t clusters);

/// Report for each connected component, ordered by smallest cell id.
std::vector<TopologyReport> component_reports(const QuotientComplex& qc);

/// Same invariants computed combinatorially from the model, arcs as edges.
TopologyReport model_topology(const GeometricModel& m);
TopologyReport model_topology(const Cluster& c);

/// Maximum decoded arc-cylinder width at position depths 1..levels.
/// All zeros for models without graph clusters. Throws DepthError when
/// levels exceeds limits.max_depth.
std::vector<Rational> diameter_profile(const Representation& rep, std::size_t levels, const VerifierLimits& limits = {});

struct SeparationReport {
    bool pass = false;
    std::size_t depth = 0;  // total depth by which every pair is separated
    std::vector<std::string> violations;

    nlohmann::ordered_json to_json() const;
};

SeparationReport check_fiber_separation(const Representation& rep, std::span<const PointRef> points);

struct CheckReport {
    bool pass = false;
    std::vector<std::string> violations;

    nlohmann::ordered_json to_json() const;
};

/// Enumerates every depth-k string and confirms it lands in exactly the cell
/// whose string count accounts for it. Throws DepthError past limits.max_depth.
CheckReport check_cover(const Representation& rep, const QuotientComplex& qc, const VerifierLimits& limits = {});

/// Each image is nonempty and, per arc, the images cover [0,1].
CheckReport check_covering(const Representation& rep, const QuotientComplex& qc);

/// Every cell of `fine` sits inside exactly one cell of `coarse`, and every
/// coarse cell is hit.
CheckReport check_refinement(const QuotientComplex& fine, const QuotientComplex& coarse);

struct Verification {
    bool pass = false;
    nlohmann::ordered_json report;
};

/// The full battery used by `cantor verify`: partitions, node and sample
/// fiber separation, diameter decay, covering, refinement and topology.
Verification verify(const Representation& rep, std::size_t k, const VerifierLimits& limits = {});

}  // namespace cantor
