// Command-line front end: reads matrices, double occurrence words, edge lists, looped graphs
// and permutations, and prints nullities, interlace polynomials and verification reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "interlace/all.hpp"

namespace {

using namespace interlace;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_counterexample = 2;

struct Options {
    std::string format = "text";
    std::string file;
    std::string dow;
    std::string edges;
    std::string graph;
    std::string loops;
    std::string assign;
    std::string method = "nullity";
    std::string perm;
    std::string via = "reduction";
    std::size_t size = 0;
    std::optional<std::size_t> cap;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

EulerSystem load_dow(const std::string& path) {
    auto in = open_input(path);
    return from_double_occurrence_words(read_words(in));
}

EulerSystem load_edges(const std::string& path) {
    auto in = open_input(path);
    return euler_system(Multigraph::from_edge_list(read_edge_list(in)));
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        for (const auto& tok : split_whitespace(item)) out.push_back(tok);
    return out;
}

json matrix_json(const Gf2Matrix& m) { return {{"labels", m.labels()}, {"rows", m.to_rows()}}; }

void print_rows(std::ostream& out, const Gf2Matrix& m) {
    for (const auto& row : m.to_rows()) {
        out << ' ';
        for (int x : row) out << ' ' << x;
        out << '\n';
    }
}

int cmd_nullity(const Options& o) {
    auto in = open_input(o.file);
    const Gf2Matrix m = read_matrix(in);
    const std::size_t nu = nullity(m);
    if (o.format == "json") {
        std::cout << json{{"size", m.size()}, {"rank", m.size() - nu}, {"nullity", nu}}.dump() << '\n';
    } else {
        std::cout << "size: " << m.size() << "\nrank: " << m.size() - nu << "\nnullity: " << nu << '\n';
    }
    return exit_ok;
}

int cmd_interlace_matrix(const Options& o) {
    const Gf2Matrix m = interlace_matrix(load_dow(o.dow));
    if (o.format == "json") std::cout << matrix_json(m).dump() << '\n';
    else write_matrix(std::cout, m);
    return exit_ok;
}

enum class PolyKind { Nullity, TwoVariable, Courcelle };

MultiPoly poly_of_graph(PolyKind kind, const LoopedGraph& h, std::size_t cap) {
    switch (kind) {
        case PolyKind::Nullity: return q_nullity(h, cap);
        case PolyKind::TwoVariable: return q_two_variable(h, cap);
        case PolyKind::Courcelle: return courcelle(h, cap);
    }
    throw std::logic_error("unknown polynomial");
}

MultiPoly poly_of_partitions(PolyKind kind, const EulerSystem& es, const std::vector<std::string>& loops,
                             std::size_t cap) {
    switch (kind) {
        case PolyKind::Nullity: return q_from_partitions(es, loops, cap);
        case PolyKind::TwoVariable: return q2_from_partitions(es, loops, cap);
        case PolyKind::Courcelle: return courcelle_from_partitions(es, loops, cap);
    }
    throw std::logic_error("unknown polynomial");
}

int cmd_polynomial(const Options& o, PolyKind kind) {
    const std::size_t cap = o.cap.value_or(kind == PolyKind::Courcelle ? default_pair_cap : default_subset_cap);
    if (o.dow.empty() == o.graph.empty()) throw InputError("give exactly one of --dow or --graph");

    std::optional<MultiPoly> by_nullity;
    std::optional<MultiPoly> by_partitions;
    if (!o.graph.empty()) {
        if (!o.loops.empty()) throw InputError("--loops applies to --dow input; put loops in the graph file");
        if (o.method != "nullity") throw InputError("--method " + o.method + " needs --dow input");
        auto in = open_input(o.graph);
        by_nullity = poly_of_graph(kind, read_looped_graph(in), cap);
    } else {
        const EulerSystem es = load_dow(o.dow);
        const auto loops = split_commas(o.loops);
        if (o.method != "partitions") by_nullity = poly_of_graph(kind, interlace_graph(es, loops), cap);
        if (o.method != "nullity") by_partitions = poly_of_partitions(kind, es, loops, cap);
    }

    const bool agree = !(by_nullity && by_partitions) || *by_nullity == *by_partitions;
    const MultiPoly& shown = by_nullity ? *by_nullity : *by_partitions;
    if (o.format == "json") {
        json j = to_json(shown);
        j["method"] = o.method;
        if (o.method == "both") j["agree"] = agree;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << to_text(shown) << '\n';
        if (!agree) std::cout << "partition sum: " << to_text(*by_partitions) << '\n';
    }
    if (!agree) {
        std::cerr << "mismatch between nullity sum and partition sum\n";
        return exit_counterexample;
    }
    return exit_ok;
}

int cmd_partitions(const Options& o) {
    const EulerSystem es = load_dow(o.dow);
    const Multigraph& g = es.graph();
    const TransitionAssignment t = parse_assignment(g, o.assign);
    const CircuitPartition p = trace(es, t);
    const Gf2Matrix m = partition_matrix(es, t);
    const std::size_t nu = nullity(m);
    const std::size_t predicted = nu + es.component_count();

    if (o.format == "json") {
        json circuits = json::array();
        for (const auto& c : p.circuits) circuits.push_back(circuit_word(g, c));
        std::cout << json{{"assignment", format_assignment(g, t)},
                          {"circuits", circuits},
                          {"matrix", matrix_json(m)},
                          {"nullity", nu},
                          {"components", es.component_count()},
                          {"predicted", predicted},
                          {"traced", p.size()}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "assignment: " << format_assignment(g, t) << '\n';
        std::cout << "circuits:\n";
        for (const auto& c : p.circuits) std::cout << "  " << join(circuit_word(g, c), " ") << '\n';
        std::cout << "I_P (" << m.size() << "x" << m.size();
        if (!m.empty()) std::cout << ", vertices " << join(m.labels(), " ");
        std::cout << "):\n";
        print_rows(std::cout, m);
        std::cout << "nullity: " << nu << '\n';
        std::cout << "components: " << es.component_count() << '\n';
        std::cout << "predicted |P|: " << predicted << '\n';
        std::cout << "traced |P|: " << p.size() << '\n';
    }
    return predicted == p.size() ? exit_ok : exit_counterexample;
}

int cmd_verify_cle(const Options& o) {
    if (o.dow.empty() == o.edges.empty()) throw InputError("give exactly one of --dow or --edges");
    const EulerSystem es = o.dow.empty() ? load_edges(o.edges) : load_dow(o.dow);
    const VerificationReport r = verify_extended_cle(es, o.cap.value_or(default_subset_cap));
    if (o.format == "json") {
        std::cout << to_json(r).dump() << '\n';
    } else {
        std::cout << r.checked - r.failures.size() << "/" << r.checked << " assignments verified\n";
        for (const auto& f : r.failures)
            std::cout << "  " << f.assignment << ": traced " << f.traced << ", predicted " << f.predicted << '\n';
    }
    return r.ok() ? exit_ok : exit_counterexample;
}

int cmd_orbits(const Options& o) {
    const Permutation p = parse_permutation(o.perm, o.size);
    json j{{"permutation", to_cycle_string(p)}, {"size", p.size()}, {"via", o.via}};
    std::size_t orbits = 0;
    int status = exit_ok;
    std::string detail;

    if (o.via == "oracle") {
        orbits = orbit_count(p);
    } else if (o.via == "nullity") {
        const auto ts = cohn_lempel_factors(p);
        if (!ts) throw InputError("permutation is not (1 2 ... m) followed by disjoint transpositions");
        const std::size_t nu = nullity(cohn_lempel_matrix(p.size(), *ts));
        orbits = 1 + nu;
        json pairs = json::array();
        for (const auto& [a, b] : *ts) pairs.push_back({a, b});
        j["transpositions"] = pairs;
        j["nullity"] = nu;
        detail = "1 + nullity " + std::to_string(nu);
    } else {
        const ReductionReport r = verify_permutation_reduction(p, o.cap.value_or(default_permutation_cap));
        orbits = r.original_orbits;
        j["nullity"] = r.nullity;
        j["components"] = r.components;
        j["extended"] = r.extended;
        j["agree"] = r.ok();
        detail = "nullity " + std::to_string(r.nullity) + " + components " + std::to_string(r.components);
        if (r.extended) detail += ", even extension";
        if (!r.ok()) {
            detail += ", MISMATCH: traced " + std::to_string(r.traced) + ", predicted " + std::to_string(r.predicted());
            status = exit_counterexample;
        }
    }
    j["orbits"] = orbits;
    if (o.format == "json") {
        std::cout << j.dump() << '\n';
    } else {
        std::cout << orbits << " orbits";
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << '\n';
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GF(2) nullities, interlace polynomials and circuit partitions of 4-regular graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* nullity_cmd = app.add_subcommand("nullity", "rank and nullity of a GF(2) matrix file");
    nullity_cmd->add_option("file", o.file, "matrix file")->required();

    auto* matrix_cmd = app.add_subcommand("interlace-matrix", "interlace matrix of a double occurrence word file");
    matrix_cmd->add_option("--dow", o.dow, "double occurrence words, one per line")->required();

    auto add_poly_options = [&](CLI::App* cmd) {
        auto* dow = cmd->add_option("--dow", o.dow, "double occurrence words, one per line");
        auto* graph = cmd->add_option("--graph", o.graph, "looped graph file");
        dow->excludes(graph);
        cmd->add_option("--loops", o.loops, "comma-separated looped vertices (with --dow)")->needs(dow);
        cmd->add_option("--method", o.method, "nullity sums, traced partitions, or both compared")
            ->check(CLI::IsMember({"nullity", "partitions", "both"}))
            ->capture_default_str();
        cmd->add_option("--cap", o.cap, "largest vertex count to sweep");
    };
    auto* qn_cmd = app.add_subcommand("qn", "vertex-nullity interlace polynomial");
    add_poly_options(qn_cmd);
    auto* q2_cmd = app.add_subcommand("q2", "two-variable interlace polynomial");
    add_poly_options(q2_cmd);
    auto* courcelle_cmd = app.add_subcommand("courcelle", "multivariate interlace polynomial");
    add_poly_options(courcelle_cmd);

    auto* partitions_cmd = app.add_subcommand("partitions", "trace one circuit partition and its I_P");
    partitions_cmd->add_option("--dow", o.dow, "double occurrence words, one per line")->required();
    partitions_cmd->add_option("--assign", o.assign, "transitions, e.g. \"1:F 2:X 3:C\"")->required();

    auto* verify_cmd = app.add_subcommand("verify-cle", "check |P| = nullity(I_P) + c(G) for every assignment");
    auto* vdow = verify_cmd->add_option("--dow", o.dow, "double occurrence words, one per line");
    auto* vedges = verify_cmd->add_option("--edges", o.edges, "edge list of a 4-regular multigraph");
    vdow->excludes(vedges);
    verify_cmd->add_option("--cap", o.cap, "largest vertex count to sweep");

    auto* orbits_cmd = app.add_subcommand("orbits", "count the orbits of a permutation");
    orbits_cmd->add_option("--perm", o.perm, "image notation \"3 1 2\" or cycles \"(1 3 2)\"")->required();
    orbits_cmd->add_option("--via", o.via, "counting method")
        ->check(CLI::IsMember({"nullity", "oracle", "reduction"}))
        ->capture_default_str();
    orbits_cmd->add_option("--size", o.size, "size when fixed points are omitted");
    orbits_cmd->add_option("--cap", o.cap, "largest permutation to reduce");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (nullity_cmd->parsed()) return cmd_nullity(o);
        if (matrix_cmd->parsed()) return cmd_interlace_matrix(o);
        if (qn_cmd->parsed()) return cmd_polynomial(o, PolyKind::Nullity);
        if (q2_cmd->parsed()) return cmd_polynomial(o, PolyKind::TwoVariable);
        if (courcelle_cmd->parsed()) return cmd_polynomial(o, PolyKind::Courcelle);
        if (partitions_cmd->parsed()) return cmd_partitions(o);
        if (verify_cmd->parsed()) return cmd_verify_cle(o);
        if (orbits_cmd->parsed()) return cmd_orbits(o);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise it with --cap)\n";
        return exit_input;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
