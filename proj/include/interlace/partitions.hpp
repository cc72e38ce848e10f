#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "interlace/error.hpp"
#include "interlace/euler.hpp"
#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"
#include "interlace/interlace.hpp"
#include "interlace/labels.hpp"

namespace interlace {

/**
 * How a circuit partition passes through a vertex, relative to the Euler system:
 * Follow keeps the system's transitions, Cross is orientation-consistent but swaps
 * the exits, Flip pairs the two incoming half-edges (and the two outgoing ones).
 */
enum class Transition : std::uint8_t { Follow, Cross, Flip };

inline char transition_code(Transition t) {
    switch (t) {
        case Transition::Follow: return 'F';
        case Transition::Cross: return 'C';
        case Transition::Flip: return 'X';
    }
    return '?';
}

inline std::optional<Transition> transition_from_code(char c) {
    switch (c) {
        case 'F': return Transition::Follow;
        case 'C': return Transition::Cross;
        case 'X': return Transition::Flip;
        default: return std::nullopt;
    }
}

/// One Transition per vertex, indexed by vertex index.
class TransitionAssignment {
public:
    TransitionAssignment() = default;
    explicit TransitionAssignment(std::size_t n, Transition fill = Transition::Follow) : choice_(n, fill) {}
    explicit TransitionAssignment(std::vector<Transition> choice) : choice_(std::move(choice)) {}

    [[nodiscard]] std::size_t size() const noexcept { return choice_.size(); }
    [[nodiscard]] Transition operator[](std::size_t v) const { return choice_.at(v); }
    Transition& operator[](std::size_t v) { return choice_.at(v); }
    [[nodiscard]] const std::vector<Transition>& choices() const noexcept { return choice_; }

    friend bool operator==(const TransitionAssignment&, const TransitionAssignment&) = default;

private:
    std::vector<Transition> choice_;
};

/// "v:F v:C v:X" tokens, exactly one per vertex (order free).
inline TransitionAssignment parse_assignment(const Multigraph& g, const std::string& text) {
    TransitionAssignment t(g.vertex_count());
    std::vector<bool> given(g.vertex_count(), false);
    for (const auto& token : split_whitespace(text)) {
        const auto colon = token.rfind(':');
        if (colon == std::string::npos || colon + 2 != token.size())
            throw InputError("malformed assignment token '" + token + "' (expected label:F, label:C or label:X)");
        const std::size_t v = g.require_vertex(token.substr(0, colon));
        const auto choice = transition_from_code(token.back());
        if (!choice) throw InputError("unknown transition '" + token.substr(colon + 1) + "' in '" + token + "'");
        if (given[v]) throw InputError("vertex " + g.label(v) + " assigned twice");
        given[v] = true;
        t[v] = *choice;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!given[v]) throw InputError("vertex " + g.label(v) + " has no transition");
    return t;
}

inline std::string format_assignment(const Multigraph& g, const TransitionAssignment& t) {
    std::string out;
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (v) out += ' ';
        out += g.label(v);
        out += ':';
        out += transition_code(t[v]);
    }
    return out;
}

/// The half-edges at a vertex as the Euler system passes it: (in, out) at the first visit, then the second.
struct VertexPassages {
    HalfEdge in1, out1, in2, out2;
};

inline std::vector<VertexPassages> vertex_passages(const EulerSystem& es) {
    const Multigraph& g = es.graph();
    std::vector<VertexPassages> out(g.vertex_count());
    std::vector<int> seen(g.vertex_count(), 0);
    for (const auto& seq : es.circuits()) {
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const HalfEdge depart = seq[k];
            const HalfEdge arrive = other_end(seq[(k + seq.size() - 1) % seq.size()]);
            auto& p = out[g.vertex_of(depart)];
            if (seen[g.vertex_of(depart)]++ == 0) {
                p.in1 = arrive;
                p.out1 = depart;
            } else {
                p.in2 = arrive;
                p.out2 = depart;
            }
        }
    }
    return out;
}

using HalfEdgePairing = std::array<std::pair<HalfEdge, HalfEdge>, 2>;

inline HalfEdgePairing pairing_for(const VertexPassages& p, Transition c) {
    switch (c) {
        case Transition::Follow: return {{{p.in1, p.out1}, {p.in2, p.out2}}};
        case Transition::Cross: return {{{p.in1, p.out2}, {p.in2, p.out1}}};
        case Transition::Flip: return {{{p.in1, p.in2}, {p.out1, p.out2}}};
    }
    throw InputError("invalid transition");
}

/// Matching of the four half-edges at v selected by c.
inline HalfEdgePairing pairing_at_vertex(const EulerSystem& es, const std::string& v, Transition c) {
    const std::size_t idx = es.graph().require_vertex(v);
    return pairing_for(vertex_passages(es)[idx], c);
}

/// partner[h] = the half-edge a walk leaves by after arriving through h.
inline std::vector<HalfEdge> transition_map(const EulerSystem& es, const TransitionAssignment& t) {
    const Multigraph& g = es.graph();
    if (t.size() != g.vertex_count()) throw InputError("assignment does not cover every vertex");
    const auto passages = vertex_passages(es);
    std::vector<HalfEdge> partner(g.half_edge_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        for (const auto& [x, y] : pairing_for(passages[v], t[v])) {
            partner[x] = y;
            partner[y] = x;
        }
    }
    return partner;
}

/**
 * A partition of the edge set into closed walks. Each circuit is a list of departure
 * half-edges in the same convention as EulerSystem circuits.
 */
struct CircuitPartition {
    std::vector<std::vector<HalfEdge>> circuits;
    [[nodiscard]] std::size_t size() const noexcept { return circuits.size(); }
};

/**
 * Walks every edge once under a transition map. Circuits start at the smallest unused
 * half-edge. Leaving through the partner half-edge makes the walk direction-agnostic, so
 * an inconsistent pairing simply continues against the Euler orientation.
 */
inline CircuitPartition trace_transitions(const Multigraph& g, const std::vector<HalfEdge>& partner) {
    CircuitPartition p;
    std::vector<bool> used(g.edge_count(), false);
    for (HalfEdge start = 0; start < g.half_edge_count(); ++start) {
        if (used[edge_of(start)]) continue;
        std::vector<HalfEdge> circuit;
        HalfEdge h = start;
        do {
            used[edge_of(h)] = true;
            circuit.push_back(h);
            h = partner[other_end(h)];
        } while (h != start);
        p.circuits.push_back(std::move(circuit));
    }
    return p;
}

inline CircuitPartition trace(const EulerSystem& es, const TransitionAssignment& t) {
    return trace_transitions(es.graph(), transition_map(es, t));
}

/// Vertex labels visited by a traced circuit.
inline std::vector<std::string> circuit_word(const Multigraph& g, const std::vector<HalfEdge>& circuit) {
    std::vector<std::string> out;
    for (HalfEdge d : circuit) out.push_back(g.label(g.vertex_of(d)));
    return out;
}

/// Least rotation of the lexicographically smaller of the sequence and its reversal.
template <typename T>
std::vector<T> canonical_cycle(const std::vector<T>& seq) {
    std::vector<T> best = seq;
    auto consider = [&](std::vector<T> s) {
        for (std::size_t r = 0; r < s.size(); ++r) {
            std::rotate(s.begin(), s.begin() + 1, s.end());
            if (s < best) best = s;
        }
    };
    consider(seq);
    consider(std::vector<T>(seq.rbegin(), seq.rend()));
    return best;
}

/// Sorted canonical edge cycles; equal partitions of E(G) give equal results.
inline std::vector<std::vector<std::size_t>> canonical_partition(const CircuitPartition& p) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : p.circuits) {
        std::vector<std::size_t> edges;
        for (HalfEdge d : c) edges.push_back(edge_of(d));
        out.push_back(canonical_cycle(edges));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// I_P: drop Follow vertices, keep Cross rows as they are, put 1 on the diagonal for Flip.
inline Gf2Matrix partition_matrix(const EulerSystem& es, const TransitionAssignment& t) {
    const Multigraph& g = es.graph();
    if (t.size() != g.vertex_count()) throw InputError("assignment does not cover every vertex");
    const Gf2Matrix full = interlace_matrix(es);
    std::vector<std::string> keep;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (t[v] != Transition::Follow) keep.push_back(g.label(v));
    Gf2Matrix m = principal_submatrix(full, keep);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (t[g.require_vertex(m.label(i))] == Transition::Flip) m.set(i, i, true);
    return m;
}

inline std::size_t predicted_size(const EulerSystem& es, const TransitionAssignment& t) {
    return nullity(partition_matrix(es, t)) + es.component_count();
}

/// Which of the three matchings at each vertex a transition map uses; nullopt if none fits.
inline std::optional<TransitionAssignment> classify_transitions(const EulerSystem& es,
                                                                const std::vector<HalfEdge>& partner) {
    const auto passages = vertex_passages(es);
    TransitionAssignment t(passages.size());
    for (std::size_t v = 0; v < passages.size(); ++v) {
        bool found = false;
        for (Transition c : {Transition::Follow, Transition::Cross, Transition::Flip}) {
            const auto pairing = pairing_for(passages[v], c);
            if (partner.at(pairing[0].first) == pairing[0].second &&
                partner.at(pairing[1].first) == pairing[1].second) {
                t[v] = c;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return t;
}

struct CleFailure {
    std::string assignment;
    std::size_t traced = 0;
    std::size_t predicted = 0;
};

struct VerificationReport {
    std::uint64_t checked = 0;
    std::vector<CleFailure> failures;
    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"assignment", f.assignment}, {"traced", f.traced}, {"predicted", f.predicted}});
    return {{"checked", r.checked}, {"failures", failures}};
}

inline VerificationReport verification_report_from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.checked = j.at("checked").get<std::uint64_t>();
    for (const auto& f : j.at("failures"))
        r.failures.push_back({f.at("assignment").get<std::string>(), f.at("traced").get<std::size_t>(),
                              f.at("predicted").get<std::size_t>()});
    return r;
}

inline constexpr std::size_t default_subset_cap = 14;
inline constexpr std::size_t default_pair_cap = 9;

/**
 * Checks |P| = nullity(I_P) + c(G) for all 3^n assignments, tracing each partition and
 * comparing against the nullity of its I_P. Refuses graphs with more than `cap` vertices.
 */
inline VerificationReport verify_extended_cle(const EulerSystem& es, std::size_t cap = default_subset_cap) {
    const Multigraph& g = es.graph();
    const std::size_t n = g.vertex_count();
    check_cap(n, cap, 3, "assignments");
    if (n > 63) throw InputError("exhaustive sweeps support at most 63 vertices");

    const auto rows = detail::packed_rows(interlace_matrix(es));
    const auto passages = vertex_passages(es);
    std::vector<HalfEdge> partner(g.half_edge_count());
    auto apply = [&](std::size_t v, Transition c) {
        for (const auto& [x, y] : pairing_for(passages[v], c)) {
            partner[x] = y;
            partner[y] = x;
        }
    };

    VerificationReport report;
    TransitionAssignment t(n, Transition::Follow);
    for (std::size_t v = 0; v < n; ++v) apply(v, Transition::Follow);
    std::vector<std::uint64_t> work(rows.size());
    for (;;) {
        std::uint64_t kept = 0;
        for (std::size_t v = 0; v < n; ++v) {
            work[v] = rows[v];
            if (t[v] != Transition::Follow) kept |= std::uint64_t{1} << v;
            if (t[v] == Transition::Flip) work[v] |= std::uint64_t{1} << v;
        }
        const std::size_t predicted = detail::subset_nullity(work, kept) + es.component_count();
        const std::size_t traced = trace_transitions(g, partner).size();
        ++report.checked;
        if (traced != predicted) report.failures.push_back({format_assignment(g, t), traced, predicted});

        // base-3 odometer over Follow < Cross < Flip
        std::size_t v = 0;
        while (v < n && t[v] == Transition::Flip) {
            t[v] = Transition::Follow;
            apply(v, Transition::Follow);
            ++v;
        }
        if (v == n) break;
        t[v] = t[v] == Transition::Follow ? Transition::Cross : Transition::Flip;
        apply(v, t[v]);
    }
    return report;
}

}  // namespace interlace
