#include "cantor/cli.hpp"

#include "cantor/errors.hpp"
#include "cantor/representation.hpp"
#include "cantor/verifier.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace cantor::cli {

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

// A manifest, or a bare model file.
Representation load_representation(const std::string& path) {
    const nlohmann::json j = read_json(path);
    if (j.is_object() && !j.contains("format") && j.contains("clusters")) return build(GeometricModel::from_json(j));
    return from_manifest(j);
}

Cluster load_template(const std::string& path) {
    nlohmann::json j = read_json(path);
    if (!j.is_object()) throw ModelError("template", "expected a JSON object");
    if (!j.contains("clusters")) {
        if (!j.contains("type")) j["type"] = "graph";
        j = nlohmann::json{{"clusters", nlohmann::json::array({j})}};
    }
    GeometricModel m = GeometricModel::from_json(j);
    if (m.clusters.size() != 1) throw ModelError("template", "expected exactly one cluster");
    return m.clusters.front();
}

struct Options {
    std::string model, output, rep, point, address, bits, templ, format = "dot";
    std::size_t depth = 0, count = 0, max_depth = 0;
    bool acyclic = false;
};

VerifierLimits limits_for(const Options& o) {
    VerifierLimits limits = VerifierLimits::from_env();
    if (o.max_depth) limits.max_depth = o.max_depth;
    return limits;
}

int cmd_build(const Options& o, std::ostream& out) {
    const Representation rep = build(GeometricModel::from_json(read_json(o.model)));
    write_text(o.output, to_manifest(rep).dump(2) + "\n", out);
    return kOk;
}

int cmd_encode(const Options& o, std::ostream& out) {
    const Representation rep = load_representation(o.rep);
    out << represent_point(rep, PointRef::parse(o.point)).text();
    return kOk;
}

int cmd_decode(const Options& o, std::ostream& out) {
    if (o.address.empty() == o.bits.empty()) throw Error("decode needs exactly one of --address or --bits");
    const Representation rep = load_representation(o.rep);
    const Location loc = o.bits.empty() ? locate(rep, AddressSpec::parse(o.address))
                                        : locate(rep, BitString::parse(o.bits));
    out << loc.text(rep.model()) << "\n";
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Representation rep = load_representation(o.rep);
    const Verification v = verify(rep, o.depth, limits_for(o));
    out << v.report.dump(2) << "\n";
    return v.pass ? kOk : kFail;
}

int cmd_quotient(const Options& o, std::ostream& out) {
    const Representation rep = load_representation(o.rep);
    const QuotientComplex qc = quotient_complex(rep, o.depth, limits_for(o));
    if (o.format == "json") out << qc.to_json(rep.model()).dump(2) << "\n";
    else if (o.format == "text") out << qc.to_table(rep.model());
    else out << qc.to_dot(rep.model());
    return kOk;
}

int cmd_polycrystal(const Options& o, std::ostream& out) {
    const Polycrystal p = build_polycrystal(o.count, load_template(o.templ), o.acyclic);
    write_text(o.output, to_manifest(p.rep).dump(2) + "\n", out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cantor-cube representations of graphs, clusters and polycrystals"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--max-depth", o.max_depth,
                   "Bound on brute-force enumeration depth (default 20, or CANTOR_MAX_DEPTH)");

    auto* b = app.add_subcommand("build", "Build a representation manifest from a model");
    b->add_option("-m,--model", o.model, "Model JSON")->required();
    b->add_option("-o,--output", o.output, "Manifest path (default stdout)");

    auto* e = app.add_subcommand("encode", "Print the fiber of a model point");
    e->add_option("-r,--rep", o.rep, "Manifest or model JSON")->required();
    e->add_option("--point", o.point, "C/E@t, C/node:v or C")->required();

    auto* d = app.add_subcommand("decode", "Locate an address in the model");
    d->add_option("-r,--rep", o.rep, "Manifest or model JSON")->required();
    auto* addr = d->add_option("--address", o.address, "Address spec 'cone | prefix : tail'");
    auto* bits = d->add_option("--bits", o.bits, "Canonical bit string");
    addr->excludes(bits);

    auto* v = app.add_subcommand("verify", "Run every finite-depth check");
    v->add_option("-r,--rep", o.rep, "Manifest or model JSON")->required();
    v->add_option("-k,--depth", o.depth, "Total depth")->required();

    auto* q = app.add_subcommand("quotient", "Emit the depth-k quotient complex");
    q->add_option("-r,--rep", o.rep, "Manifest or model JSON")->required();
    q->add_option("-k,--depth", o.depth, "Total depth")->required();
    q->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));

    auto* p = app.add_subcommand("polycrystal", "Tile n copies of a crystal template");
    p->add_option("-n,--count", o.count, "Number of crystals")->required();
    p->add_option("--template", o.templ, "Template cluster JSON")->required();
    p->add_option("-o,--output", o.output, "Manifest path (default stdout)");
    p->add_flag("--acyclic", o.acyclic, "Require the template to be a dendrite");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*b) return cmd_build(o, out);
        if (*e) return cmd_encode(o, out);
        if (*d) return cmd_decode(o, out);
        if (*v) return cmd_verify(o, out);
        if (*q) return cmd_quotient(o, out);
        if (*p) return cmd_polycrystal(o, out);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cantor::cli
