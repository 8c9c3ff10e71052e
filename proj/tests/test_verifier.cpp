#include "doctest.h"

#include "cantor/errors.hpp"
#include "cantor/verifier.hpp"
#include "support.hpp"

#include <random>

using namespace cantor;
using fixtures::model_of;

namespace {

fixtures::Topology as_topology(const TopologyReport& r) {
    return {r.components, r.cycle_rank, r.branch_degrees, r.leaves};
}

std::vector<Cone> random_family(std::mt19937& rng, std::size_t width) {
    std::vector<Cone> out;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
        Cone c;
        for (std::uint32_t j = 1; j <= width; ++j)
            if (rng() % 3 == 0) c = c.with(Index::xi(j), static_cast<int>(rng() % 2));
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("partition check catches overlaps and gaps") {
    const std::vector<Cone> twice{Cone{{Index::xi(1), 0}}, Cone{{Index::xi(1), 0}}};
    const PartitionReport r = check_partition(twice, 1);
    CHECK_FALSE(r.pass);
    CHECK(r.violations.size() == 2);

    IndexAllocator alloc;
    const auto cones = partition(alloc, {Tier::Xi, {}}, 5);
    const PartitionReport ok = check_partition(cones, 4);
    CHECK(ok.pass);
    CHECK(ok.enumerated);
    CHECK(ok.class_sizes == std::vector<BigInt>{8, 4, 2, 1, 1});

    const PartitionReport padded = check_partition(cones, 6);
    CHECK(padded.pass);
    CHECK(padded.class_sizes[4] == 4);
    CHECK_THROWS_AS(check_partition(cones, 3), DepthError);
    CHECK_THROWS_WITH_AS(check_partition(cones, std::vector<Index>{Index::xi(1)}),
                         doctest::Contains("truncation too shallow"), DepthError);
}

TEST_CASE("exact counting agrees with enumeration") {
    std::mt19937 rng(424242);
    VerifierLimits shallow;
    shallow.max_depth = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto cones = random_family(rng, 8);
        std::vector<Index> coords;
        for (std::uint32_t j = 1; j <= 8; ++j) coords.push_back(Index::xi(j));
        const PartitionReport brute = check_partition(cones, coords);
        const PartitionReport exact = check_partition(cones, coords, shallow);
        REQUIRE(brute.enumerated);
        REQUIRE_FALSE(exact.enumerated);
        CHECK(brute.pass == exact.pass);
        CHECK(brute.class_sizes == exact.class_sizes);
    }
    // A gap is reported with a witness string.
    const std::vector<Cone> gap{Cone{{Index::xi(1), 0}}, Cone{{Index::xi(1), 1}, {Index::xi(2), 1}}};
    const PartitionReport r = check_partition(gap, 2, shallow);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].find("'10'") != std::string::npos);
}

TEST_CASE("deep partitions are checked exactly") {
    IndexAllocator alloc;
    const auto cones = partition(alloc, {Tier::Xi, {}}, 64);
    const PartitionReport r = check_partition(cones, 63);
    CHECK(r.pass);
    CHECK_FALSE(r.enumerated);
    CHECK(r.class_sizes.front() == pow2(62));
    CHECK(r.class_sizes.back() == 1);
}

TEST_CASE("arc quotients are paths") {
    const Representation rep = build(model_of({fixtures::arc_cluster()}));
    for (std::size_t k = 1; k <= 8; ++k) {
        const QuotientComplex qc = quotient_complex(rep, k);
        CHECK(qc.cells().size() == (std::size_t{1} << k));
        const TopologyReport t = topology_report(qc);
        CHECK(t.components == 1);
        CHECK(t.cycle_rank == 0);
        CHECK(t.leaves == 2);
        CHECK(t.branch_degrees.empty());
    }
    CHECK_THROWS_WITH_AS(quotient_complex(rep, 0), doctest::Contains("depth too shallow"), DepthError);
    VerifierLimits tight;
    tight.max_depth = 4;
    CHECK_THROWS_AS(quotient_complex(rep, 5, tight), DepthError);
}

TEST_CASE("star quotient has one branch cell holding the hub") {
    const Representation rep = build(model_of({fixtures::star_cluster()}));
    const QuotientComplex qc = quotient_complex(rep, 5);
    const auto deg = qc.degrees();
    std::vector<std::size_t> branch;
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] == 3) branch.push_back(i);
    REQUIRE(branch.size() == 1);
    const Cell& hub = qc.cells()[branch[0]];
    CHECK(hub.kind == Cell::Kind::Node);
    CHECK(hub.label(rep.model()) == "C1/node:a");
    CHECK(hub.cylinders.size() == 3);
    for (const auto& piece : represent_point(rep, PointRef::node("C1", "a")).pieces) {
        const std::string prefix = fixtures::spec_digits(piece, qc.position_depth());
        const std::size_t arc = *locate(rep, piece).arc;
        CHECK(qc.cell_of(Cylinder{0, arc, prefix}) == branch[0]);
    }
}

TEST_CASE("quotients agree with a brute-force construction") {
    std::mt19937 rng(8675309);
    std::vector<GeometricModel> models{model_of({fixtures::star_cluster()}), model_of({fixtures::circle_cluster()}),
                                       model_of({fixtures::triangle_cluster(), Cluster::singleton("S")}),
                                       fixtures::singletons(3)};
    for (int i = 0; i < 6; ++i) models.push_back(model_of({fixtures::random_graph(rng, 4, 5)}));
    for (const auto& m : models) {
        const Representation rep = build(m);
        const std::size_t k0 = resolution_threshold(rep);
        for (std::size_t k = k0; k <= k0 + 2 && k <= 14; ++k) {
            const QuotientComplex qc = quotient_complex(rep, k);
            const fixtures::BruteQuotient brute = fixtures::brute_quotient(rep, k);
            CHECK(qc.cells().size() == brute.cells);
            CHECK(qc.adjacency().size() == brute.edges.size());
            CHECK(as_topology(topology_report(qc)) == brute.topology);
            CHECK(brute.topology == fixtures::model_topology(m));
            std::multiset<std::size_t> ours, theirs;
            for (const auto& c : qc.cells()) ours.insert(static_cast<std::size_t>(c.strings));
            for (const auto& [id, n] : brute.strings) theirs.insert(n);
            CHECK(ours == theirs);
            CHECK(check_cover(rep, qc).pass);
        }
    }
}

TEST_CASE("parallel arcs need one more digit") {
    const Representation rep = build(model_of({fixtures::circle_cluster()}));
    CHECK(resolution_threshold(rep) == rep.fixed_coordinates() + 2);
    CHECK(topology_report(quotient_complex(rep, rep.fixed_coordinates() + 1)).cycle_rank == 0);
    CHECK(topology_report(quotient_complex(rep, rep.fixed_coordinates() + 2)).cycle_rank == 1);
    const Representation tri = build(model_of({fixtures::triangle_cluster()}));
    CHECK(resolution_threshold(tri) == tri.fixed_coordinates() + 1);
    CHECK(topology_report(quotient_complex(tri, tri.fixed_coordinates() + 1)).cycle_rank == 1);
}

TEST_CASE("singletons give isolated cells") {
    const Representation rep = build(fixtures::singletons(2));
    const QuotientComplex qc = quotient_complex(rep, 3);
    CHECK(qc.cells().size() == 2);
    CHECK(qc.adjacency().empty());
    CHECK(qc.cells()[0].strings == 4);
    const std::string dot = qc.to_dot(rep.model());
    CHECK(dot.find("--") == std::string::npos);
    CHECK(dot.find("c0 [label=\"P1\"]") != std::string::npos);
    CHECK(diameter_profile(rep, 3) == std::vector<Rational>{0, 0, 0});
}

TEST_CASE("diameter profile halves at every level") {
    const Representation y1 = build(model_of({fixtures::arc_cluster()}));
    CHECK(diameter_profile(y1, 4) ==
          std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)});
    const Representation y2 = build(model_of({fixtures::star_cluster()}));
    const auto prof = diameter_profile(y2, 6);
    for (std::size_t d = 1; d <= 6; ++d) CHECK(prof[d - 1] == Rational(BigInt(1), pow2(static_cast<unsigned>(d))));
}

TEST_CASE("fiber separation") {
    const Representation y1 = build(model_of({fixtures::arc_cluster()}));
    const std::vector<PointRef> ends{PointRef::node("C1", "e1"), PointRef::node("C1", "e2")};
    const SeparationReport r = check_fiber_separation(y1, ends);
    CHECK(r.pass);
    CHECK(r.depth == 1);

    const Representation y2 = build(model_of({fixtures::star_cluster()}));
    const std::vector<PointRef> pts{PointRef::node("C1", "a"), PointRef::node("C1", "e1"),
                                    PointRef::arc_point("C1", "E1", Rational(1, 3)),
                                    PointRef::arc_point("C1", "E2", Rational(1, 3))};
    const SeparationReport s = check_fiber_separation(y2, pts);
    CHECK(s.pass);
    const std::vector<PointRef> same{PointRef::node("C1", "a"), PointRef::arc_point("C1", "E3", 0)};
    CHECK_FALSE(check_fiber_separation(y2, same).pass);
}

TEST_CASE("refinement nests cells") {
    const Representation rep = build(model_of({fixtures::star_cluster()}));
    for (std::size_t k = 3; k <= 8; ++k) {
        const CheckReport r = check_refinement(quotient_complex(rep, k + 1), quotient_complex(rep, k));
        CHECK(r.pass);
    }
    CHECK_FALSE(check_refinement(quotient_complex(rep, 3), quotient_complex(rep, 4)).pass);
    CHECK(check_covering(rep, quotient_complex(rep, 6)).pass);
}

TEST_CASE("cluster and component reports") {
    const Polycrystal p = build_polycrystal(3, fixtures::star_cluster());
    const QuotientComplex qc = quotient_complex(p.rep, p.rep.fixed_coordinates() + 2);
    const auto comps = component_reports(qc);
    REQUIRE(comps.size() == 3);
    for (const auto& c : comps) {
        CHECK(c.components == 1);
        CHECK(c.branch_degrees == std::vector<std::size_t>{3});
        CHECK(c.leaves == 3);
    }
    const auto per = cluster_reports(qc, 3);
    REQUIRE(per.size() == 3);
    CHECK(per[1].same_topology(model_topology(p.rep.model().clusters[1])));
    CHECK(model_topology(p.rep.model()).components == 3);
}

TEST_CASE("full verification of the star") {
    const Representation rep = build(model_of({fixtures::star_cluster()}));
    const Verification v = verify(rep, 8);
    CHECK(v.pass);
    CHECK(v.report["status"] == "PASS");
    const auto& q = v.report["invariants"]["topology"]["quotient"];
    CHECK(q["components"] == 1);
    CHECK(q["cycle_rank"] == 0);
    CHECK(q["branch"] == nlohmann::ordered_json::array({3}));
    CHECK(q["leaves"] == 3);
    CHECK_THROWS_AS(verify(rep, 2), DepthError);
    CHECK(verify(rep, 8).report.dump() == v.report.dump());
}

TEST_CASE("models without arcs need only the cluster coordinates") {
    const Representation rep = build(fixtures::singletons(4));
    CHECK(resolution_threshold(rep) == 3);
    CHECK(quotient_complex(rep, 3).cells().size() == 4);
    const Verification v = verify(rep, 3);
    CHECK(v.pass);
    CHECK(v.report["invariants"]["topology"]["quotient"]["components"] == 4);
    CHECK(verify(rep, 5).pass);
    CHECK_THROWS_AS(quotient_complex(rep, 2), DepthError);
}
