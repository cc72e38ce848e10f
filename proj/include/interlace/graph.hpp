#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/labels.hpp"

namespace interlace {

/// Half-edge id. Edge e owns half-edges 2e and 2e+1, so the other end of h is h ^ 1.
using HalfEdge = std::size_t;

inline constexpr HalfEdge other_end(HalfEdge h) noexcept { return h ^ 1U; }
inline constexpr std::size_t edge_of(HalfEdge h) noexcept { return h / 2; }

/**
 * Undirected 4-regular multigraph stored as half-edges.
 *
 * Vertices are kept in canonical label order (numeric when every label is numeric).
 * Edge i of the input contributes half-edge 2i at its first endpoint and 2i+1 at its
 * second; a loop puts both at the same vertex.
 */
class Multigraph {
public:
    Multigraph() = default;

    static Multigraph from_edge_list(const std::vector<std::pair<std::string, std::string>>& pairs) {
        std::vector<std::string> labels;
        {
            std::map<std::string, bool> seen;
            for (const auto& [u, v] : pairs) {
                if (seen.emplace(u, true).second) labels.push_back(u);
                if (seen.emplace(v, true).second) labels.push_back(v);
            }
        }
        sort_labels(labels);

        Multigraph g;
        g.labels_ = std::move(labels);
        for (std::size_t i = 0; i < g.labels_.size(); ++i) g.index_[g.labels_[i]] = i;
        g.vertex_of_.reserve(2 * pairs.size());
        for (const auto& [u, v] : pairs) {
            g.vertex_of_.push_back(g.index_.at(u));
            g.vertex_of_.push_back(g.index_.at(v));
        }

        std::vector<std::vector<HalfEdge>> at(g.labels_.size());
        for (HalfEdge h = 0; h < g.vertex_of_.size(); ++h) at[g.vertex_of_[h]].push_back(h);
        for (std::size_t v = 0; v < at.size(); ++v) {
            if (at[v].size() != 4)
                throw InputError("vertex " + g.labels_[v] + " has degree " + std::to_string(at[v].size()) +
                                 " (expected 4)");
        }
        g.at_.resize(at.size());
        for (std::size_t v = 0; v < at.size(); ++v) std::copy(at[v].begin(), at[v].end(), g.at_[v].begin());
        return g;
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return vertex_of_.size() / 2; }
    [[nodiscard]] std::size_t half_edge_count() const noexcept { return vertex_of_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t v) const { return labels_.at(v); }

    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const {
        const auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    [[nodiscard]] std::size_t require_vertex(const std::string& label) const {
        if (auto v = index_of(label)) return *v;
        throw InputError("unknown vertex '" + label + "'");
    }

    [[nodiscard]] std::size_t vertex_of(HalfEdge h) const { return vertex_of_.at(h); }
    /// The four half-edges at v in increasing id order.
    [[nodiscard]] const std::array<HalfEdge, 4>& half_edges_at(std::size_t v) const { return at_.at(v); }

    /// Endpoint labels of edge e, in input order.
    [[nodiscard]] std::pair<std::string, std::string> edge_endpoints(std::size_t e) const {
        return {labels_[vertex_of_[2 * e]], labels_[vertex_of_[2 * e + 1]]};
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> vertex_of_;
    std::vector<std::array<HalfEdge, 4>> at_;
};

/// Connected components as sorted vertex-index lists, ordered by smallest half-edge id.
inline std::vector<std::vector<std::size_t>> components(const Multigraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> comp(n, n);
    std::vector<std::vector<std::size_t>> out;
    for (HalfEdge start = 0; start < g.half_edge_count(); ++start) {
        const std::size_t root = g.vertex_of(start);
        if (comp[root] != n) continue;
        const std::size_t id = out.size();
        out.emplace_back();
        std::vector<std::size_t> stack{root};
        comp[root] = id;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (HalfEdge h : g.half_edges_at(v)) {
                const std::size_t w = g.vertex_of(other_end(h));
                if (comp[w] == n) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

/**
 * One oriented Euler circuit per component.
 *
 * A circuit is stored as its departure half-edges d_0 d_1 ... d_{m-1}: traversal k runs
 * along edge_of(d_k) from d_k to other_end(d_k), and the circuit then leaves that vertex
 * along d_{k+1}. The vertex word lists vertex_of(d_k).
 */
class EulerSystem {
public:
    EulerSystem() = default;

    /// Validates the circuits against the graph; throws InputError on any violation.
    EulerSystem(std::shared_ptr<const Multigraph> graph, std::vector<std::vector<HalfEdge>> circuits)
        : graph_(std::move(graph)), circuits_(std::move(circuits)) {
        if (auto problem = find_problem()) throw InputError("invalid Euler system: " + *problem);
        component_of_.assign(graph_ ? graph_->vertex_count() : 0, 0);
        for (std::size_t c = 0; c < circuits_.size(); ++c)
            for (HalfEdge d : circuits_[c]) component_of_[graph_->vertex_of(d)] = c;
    }

    [[nodiscard]] const Multigraph& graph() const { return *graph_; }
    [[nodiscard]] const std::shared_ptr<const Multigraph>& graph_ptr() const noexcept { return graph_; }
    [[nodiscard]] std::size_t component_count() const noexcept { return circuits_.size(); }
    [[nodiscard]] const std::vector<std::vector<HalfEdge>>& circuits() const noexcept { return circuits_; }
    [[nodiscard]] const std::vector<HalfEdge>& departures(std::size_t c) const { return circuits_.at(c); }

    /// Alternating sequence d_0, a_0, d_1, a_1, ... with a_k = other_end(d_k).
    [[nodiscard]] std::vector<HalfEdge> half_edge_sequence(std::size_t c) const {
        std::vector<HalfEdge> out;
        for (HalfEdge d : circuits_.at(c)) {
            out.push_back(d);
            out.push_back(other_end(d));
        }
        return out;
    }

    /// Vertex indices visited by circuit c.
    [[nodiscard]] std::vector<std::size_t> word(std::size_t c) const {
        std::vector<std::size_t> out;
        for (HalfEdge d : circuits_.at(c)) out.push_back(graph_->vertex_of(d));
        return out;
    }

    [[nodiscard]] std::vector<std::string> word_labels(std::size_t c) const {
        std::vector<std::string> out;
        for (std::size_t v : word(c)) out.push_back(graph_->label(v));
        return out;
    }

    /// Circuit index containing vertex v.
    [[nodiscard]] std::size_t component_of(std::size_t v) const { return component_of_.at(v); }

    [[nodiscard]] std::optional<std::string> find_problem() const {
        if (!graph_) return circuits_.empty() ? std::nullopt : std::optional<std::string>("no graph");
        const Multigraph& g = *graph_;
        std::vector<int> used(g.half_edge_count(), 0);
        std::vector<int> visits(g.vertex_count(), 0);
        std::vector<std::size_t> owner(g.vertex_count(), circuits_.size());
        for (std::size_t c = 0; c < circuits_.size(); ++c) {
            const auto& seq = circuits_[c];
            if (seq.empty()) return "circuit " + std::to_string(c) + " is empty";
            for (std::size_t k = 0; k < seq.size(); ++k) {
                const HalfEdge d = seq[k];
                if (d >= g.half_edge_count()) return "half-edge " + std::to_string(d) + " out of range";
                if (used[d]++ || used[other_end(d)]++)
                    return "edge " + std::to_string(edge_of(d)) + " traversed twice";
                const HalfEdge next = seq[(k + 1) % seq.size()];
                if (next >= g.half_edge_count()) return "half-edge " + std::to_string(next) + " out of range";
                if (g.vertex_of(other_end(d)) != g.vertex_of(next))
                    return "circuit " + std::to_string(c) + " breaks after traversal " + std::to_string(k);
                const std::size_t v = g.vertex_of(d);
                if (owner[v] != circuits_.size() && owner[v] != c)
                    return "vertex " + g.label(v) + " appears in two circuits";
                owner[v] = c;
                ++visits[v];
            }
        }
        for (HalfEdge h = 0; h < used.size(); ++h)
            if (!used[h]) return "edge " + std::to_string(edge_of(h)) + " not traversed";
        for (std::size_t v = 0; v < visits.size(); ++v)
            if (visits[v] != 2) return "vertex " + g.label(v) + " visited " + std::to_string(visits[v]) + " times";
        return std::nullopt;
    }

private:
    std::shared_ptr<const Multigraph> graph_;
    std::vector<std::vector<HalfEdge>> circuits_;
    std::vector<std::size_t> component_of_;
};

}  // namespace interlace
