#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/graph.hpp"
#include "interlace/labels.hpp"

namespace interlace {

/**
 * Hierholzer's algorithm, one circuit per component in component order.
 *
 * Each circuit starts at the smallest half-edge id of its component and always extends
 * along the smallest unused half-edge at the current vertex. When `may_depart` is given,
 * only half-edges with may_depart[h] set are used as departures, which yields a directed
 * Euler circuit of a balanced orientation.
 */
inline EulerSystem euler_system(std::shared_ptr<const Multigraph> graph,
                                const std::vector<bool>& may_depart = {}) {
    const Multigraph& g = *graph;
    const bool directed = !may_depart.empty();
    if (directed && may_depart.size() != g.half_edge_count())
        throw InputError("orientation mask does not cover every half-edge");
    auto allowed = [&](HalfEdge h) { return !directed || may_depart[h]; };

    std::vector<bool> edge_used(g.edge_count(), false);
    std::vector<std::size_t> next_slot(g.vertex_count(), 0);
    auto next_half_edge = [&](std::size_t v) -> std::optional<HalfEdge> {
        const auto& hs = g.half_edges_at(v);
        while (next_slot[v] < hs.size()) {
            const HalfEdge h = hs[next_slot[v]];
            if (!edge_used[edge_of(h)] && allowed(h)) return h;
            ++next_slot[v];
        }
        return std::nullopt;
    };

    std::vector<std::vector<HalfEdge>> circuits;
    for (const auto& comp : components(g)) {
        HalfEdge first = g.half_edge_count();
        for (std::size_t v : comp)
            for (HalfEdge h : g.half_edges_at(v))
                if (allowed(h)) first = std::min(first, h);
        if (first == g.half_edge_count()) throw InputError("orientation leaves a component without departures");

        std::vector<HalfEdge> stack;
        std::vector<HalfEdge> reversed;
        std::size_t cur = g.vertex_of(first);
        for (;;) {
            if (auto h = next_half_edge(cur)) {
                edge_used[edge_of(*h)] = true;
                stack.push_back(*h);
                cur = g.vertex_of(other_end(*h));
            } else if (!stack.empty()) {
                const HalfEdge d = stack.back();
                stack.pop_back();
                reversed.push_back(d);
                cur = g.vertex_of(d);
            } else {
                break;
            }
        }
        std::reverse(reversed.begin(), reversed.end());
        circuits.push_back(std::move(reversed));
    }
    return EulerSystem(std::move(graph), std::move(circuits));
}

inline EulerSystem euler_system(const Multigraph& g, const std::vector<bool>& may_depart = {}) {
    return euler_system(std::make_shared<const Multigraph>(g), may_depart);
}

/**
 * Builds the multigraph whose edges join cyclically consecutive word entries, together with
 * the Euler system that reads each word in order. Each label must occur exactly twice, all in
 * one word.
 */
inline EulerSystem from_double_occurrence_words(const std::vector<std::vector<std::string>>& words) {
    std::map<std::string, std::pair<std::size_t, int>> seen;  // label -> (word, count)
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (words[w].empty()) throw InputError("word " + std::to_string(w + 1) + " is empty");
        for (const auto& label : words[w]) {
            auto [it, fresh] = seen.emplace(label, std::make_pair(w, 0));
            if (!fresh && it->second.first != w)
                throw InputError("label " + label + " appears in more than one word");
            ++it->second.second;
        }
    }
    for (const auto& [label, info] : seen) {
        if (info.second != 2)
            throw InputError("label " + label + " appears " + std::to_string(info.second) +
                             " times (expected exactly 2)");
    }

    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::vector<HalfEdge>> circuits;
    for (const auto& word : words) {
        std::vector<HalfEdge> circuit;
        for (std::size_t i = 0; i < word.size(); ++i) {
            circuit.push_back(2 * edges.size());
            edges.emplace_back(word[i], word[(i + 1) % word.size()]);
        }
        circuits.push_back(std::move(circuit));
    }
    auto graph = std::make_shared<const Multigraph>(Multigraph::from_edge_list(edges));
    return EulerSystem(std::move(graph), std::move(circuits));
}

/// Orientation of every edge induced by traversal direction.
class DirectedView {
public:
    explicit DirectedView(const EulerSystem& es) : outgoing_(es.graph().half_edge_count(), false) {
        for (const auto& circuit : es.circuits())
            for (HalfEdge d : circuit) outgoing_[d] = true;
        const Multigraph& g = es.graph();
        in_.resize(g.vertex_count());
        out_.resize(g.vertex_count());
        for (HalfEdge h = 0; h < outgoing_.size(); ++h)
            (outgoing_[h] ? out_ : in_)[g.vertex_of(h)].push_back(h);
    }

    [[nodiscard]] bool is_outgoing(HalfEdge h) const { return outgoing_.at(h); }
    [[nodiscard]] bool is_incoming(HalfEdge h) const { return !outgoing_.at(h); }
    [[nodiscard]] const std::vector<HalfEdge>& incoming_at(std::size_t v) const { return in_.at(v); }
    [[nodiscard]] const std::vector<HalfEdge>& outgoing_at(std::size_t v) const { return out_.at(v); }
    [[nodiscard]] const std::vector<bool>& outgoing_mask() const noexcept { return outgoing_; }

private:
    std::vector<bool> outgoing_;
    std::vector<std::vector<HalfEdge>> in_;
    std::vector<std::vector<HalfEdge>> out_;
};

inline DirectedView orient(const EulerSystem& es) { return DirectedView(es); }

/// The same system with circuit c traversed in the opposite direction.
inline EulerSystem reverse_circuit(const EulerSystem& es, std::size_t c) {
    auto circuits = es.circuits();
    auto& seq = circuits.at(c);
    std::reverse(seq.begin(), seq.end());
    for (HalfEdge& d : seq) d = other_end(d);
    return EulerSystem(es.graph_ptr(), std::move(circuits));
}

// ---------------------------------------------------------------------------
// Text formats

/// Edge list: one "u v" per line; blank lines and '#' comments are ignored.
inline std::vector<std::pair<std::string, std::string>> read_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto tokens = split_whitespace(strip_comment(raw));
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw ParseError(lineno, "expected two endpoint labels, got " + std::to_string(tokens.size()) + " tokens");
        edges.emplace_back(tokens[0], tokens[1]);
    }
    return edges;
}

/// Double occurrence words: one component per line, whitespace-separated labels.
inline std::vector<std::vector<std::string>> read_words(std::istream& in) {
    std::vector<std::vector<std::string>> words;
    std::string raw;
    while (std::getline(in, raw)) {
        auto tokens = split_whitespace(strip_comment(raw));
        if (!tokens.empty()) words.push_back(std::move(tokens));
    }
    return words;
}

inline void write_words(std::ostream& out, const EulerSystem& es) {
    for (std::size_t c = 0; c < es.component_count(); ++c) out << join(es.word_labels(c), " ") << '\n';
}

}  // namespace interlace
