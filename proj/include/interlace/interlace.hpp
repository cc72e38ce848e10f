#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/euler.hpp"
#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"
#include "interlace/labels.hpp"

namespace interlace {

/// Positions (within its own circuit) of the two visits to each vertex, first < second.
inline std::vector<std::array<std::size_t, 2>> visit_positions(const EulerSystem& es) {
    std::vector<std::array<std::size_t, 2>> pos(es.graph().vertex_count(), {0, 0});
    std::vector<int> seen(es.graph().vertex_count(), 0);
    for (std::size_t c = 0; c < es.component_count(); ++c) {
        const auto word = es.word(c);
        for (std::size_t k = 0; k < word.size(); ++k) pos[word[k]][seen[word[k]]++] = k;
    }
    return pos;
}

namespace detail {
inline bool alternate(const std::array<std::size_t, 2>& u, const std::array<std::size_t, 2>& v) {
    const bool first_inside = u[0] < v[0] && v[0] < u[1];
    const bool second_inside = u[0] < v[1] && v[1] < u[1];
    return first_inside != second_inside;
}
}  // namespace detail

/// True iff the visits to u and v alternate u..v..u..v around a common circuit.
inline bool interlaced(const EulerSystem& es, const std::string& u, const std::string& v) {
    const Multigraph& g = es.graph();
    const std::size_t a = g.require_vertex(u);
    const std::size_t b = g.require_vertex(v);
    if (a == b) throw InputError("a vertex is not interlaced with itself");
    if (es.component_of(a) != es.component_of(b)) return false;
    const auto pos = visit_positions(es);
    return detail::alternate(pos[a], pos[b]);
}

/// Symmetric, zero-diagonal interlacement matrix over all vertices in vertex order.
inline Gf2Matrix interlace_matrix(const EulerSystem& es) {
    const Multigraph& g = es.graph();
    const auto pos = visit_positions(es);
    Gf2Matrix m(g.labels());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = i + 1; j < g.vertex_count(); ++j) {
            if (es.component_of(i) == es.component_of(j) && detail::alternate(pos[i], pos[j])) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    return m;
}

/**
 * Simple undirected graph with optional loops, held as its GF(2) adjacency matrix whose
 * diagonal marks the looped vertices.
 */
class LoopedGraph {
public:
    LoopedGraph() = default;
    explicit LoopedGraph(std::vector<std::string> vertices) : adjacency_(std::move(vertices)) {}

    /// Any symmetric matrix; the diagonal becomes the loop set.
    explicit LoopedGraph(Gf2Matrix adjacency) : adjacency_(std::move(adjacency)) {
        if (!adjacency_.is_symmetric()) throw InputError("looped graph adjacency must be symmetric");
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return adjacency_.labels(); }
    [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const { return i != j && adjacency_.get(i, j); }
    [[nodiscard]] bool looped(std::size_t i) const { return adjacency_.get(i, i); }

    /// The matrix with a_ii = 1 iff vertex i is looped.
    [[nodiscard]] const Gf2Matrix& matrix() const noexcept { return adjacency_; }

    void add_edge(const std::string& u, const std::string& v) {
        const std::size_t i = adjacency_.require_index(u);
        const std::size_t j = adjacency_.require_index(v);
        adjacency_.set(i, j, true);
        adjacency_.set(j, i, true);
    }
    void set_loop(const std::string& v, bool looped) {
        const std::size_t i = adjacency_.require_index(v);
        adjacency_.set(i, i, looped);
    }

    friend bool operator==(const LoopedGraph&, const LoopedGraph&) = default;

private:
    Gf2Matrix adjacency_;
};

/// Interlace graph of the Euler system with loops attached at `loop_set`.
template <typename LabelRange>
LoopedGraph interlace_graph(const EulerSystem& es, const LabelRange& loop_set) {
    Gf2Matrix m = interlace_matrix(es);
    for (const auto& label : loop_set) {
        const std::size_t i = m.require_index(std::string(label));
        m.set(i, i, true);
    }
    return LoopedGraph(std::move(m));
}

inline LoopedGraph interlace_graph(const EulerSystem& es) {
    return interlace_graph(es, std::vector<std::string>{});
}

/// Interlace graph with loops at vertex indices whose bit is set in `loop_mask`.
inline LoopedGraph interlace_graph_masked(const EulerSystem& es, std::uint64_t loop_mask) {
    Gf2Matrix m = interlace_matrix(es);
    for (std::size_t i = 0; i < m.size() && i < 64; ++i)
        if ((loop_mask >> i) & 1U) m.set(i, i, true);
    return LoopedGraph(std::move(m));
}

/**
 * Kappa-transform at vertex a: writing a's circuit as a C1 a C2 (starting from the earlier
 * visit in the stored rotation), returns a C1 a reverse(C2). The result starts at that
 * visit of a; other circuits are untouched.
 */
inline EulerSystem kappa_transform(const EulerSystem& es, const std::string& a) {
    const Multigraph& g = es.graph();
    const std::size_t va = g.require_vertex(a);
    const std::size_t c = es.component_of(va);
    const auto& seq = es.departures(c);
    const std::size_t m = seq.size();

    std::size_t k1 = m, k2 = m;
    for (std::size_t k = 0; k < m; ++k) {
        if (g.vertex_of(seq[k]) == va) (k1 == m ? k1 : k2) = k;
    }

    std::vector<HalfEdge> out;
    out.reserve(m);
    for (std::size_t k = k1; k < k2; ++k) out.push_back(seq[k]);
    // traversals k2 .. k1-1 (cyclic) walked backwards, each edge flipped
    for (std::size_t step = 0; step < m - (k2 - k1); ++step) {
        const std::size_t k = (k1 + m - 1 - step) % m;
        out.push_back(other_end(seq[k]));
    }

    auto circuits = es.circuits();
    circuits[c] = std::move(out);
    return EulerSystem(es.graph_ptr(), std::move(circuits));
}

struct ToggleReport {
    std::size_t pairs_checked = 0;
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/**
 * Compares interlacement before and after the kappa-transform at a. A pair v, w (both
 * distinct from a) must toggle exactly when both are interlaced with a, and a's own row
 * must be unchanged.
 */
inline ToggleReport interlacement_toggle_check(const EulerSystem& es, const std::string& a) {
    const EulerSystem after = kappa_transform(es, a);
    const Gf2Matrix before_m = interlace_matrix(es);
    const Gf2Matrix after_m = interlace_matrix(after);
    const std::size_t ia = es.graph().require_vertex(a);
    const auto& labels = es.graph().labels();

    ToggleReport report;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        if (v == ia) continue;
        if (before_m.get(ia, v) != after_m.get(ia, v))
            report.violations.push_back("interlacement of " + a + " with " + labels[v] + " changed");
        for (std::size_t w = v + 1; w < labels.size(); ++w) {
            if (w == ia) continue;
            ++report.pairs_checked;
            const bool expect_toggle = before_m.get(ia, v) && before_m.get(ia, w);
            const bool toggled = before_m.get(v, w) != after_m.get(v, w);
            if (toggled != expect_toggle)
                report.violations.push_back("pair " + labels[v] + "," + labels[w] +
                                            (expect_toggle ? " should toggle" : " should not toggle"));
        }
    }
    return report;
}

/**
 * Looped-graph text format: "vertices: a b c", then optionally "loops: a c", then one
 * "u v" edge per line. "v v" also attaches a loop; repeated edges are harmless.
 */
inline LoopedGraph read_looped_graph(std::istream& in) {
    std::optional<LoopedGraph> h;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto tokens = split_whitespace(strip_comment(raw));
        if (tokens.empty()) continue;
        try {
            if (tokens.front() == "vertices:") {
                if (h) throw ParseError(lineno, "duplicate vertices line");
                h.emplace(std::vector<std::string>(tokens.begin() + 1, tokens.end()));
                continue;
            }
            if (!h) throw ParseError(lineno, "expected a 'vertices:' line first");
            if (tokens.front() == "loops:") {
                for (std::size_t i = 1; i < tokens.size(); ++i) h->set_loop(tokens[i], true);
                continue;
            }
            if (tokens.size() != 2) throw ParseError(lineno, "expected an edge 'u v'");
            if (tokens[0] == tokens[1]) h->set_loop(tokens[0], true);
            else h->add_edge(tokens[0], tokens[1]);
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!h) throw ParseError(lineno, "missing 'vertices:' line");
    return *h;
}

}  // namespace interlace
