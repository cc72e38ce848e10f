#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/euler.hpp"
#include "interlace/gf2.hpp"
#include "interlace/interlace.hpp"
#include "interlace/partitions.hpp"
#include "interlace/polynomial.hpp"

namespace interlace {

namespace detail {

/// Rewrites a polynomial written in the shifted basis (each variable standing for var - 1).
inline MultiPoly expand_shifted(const MultiPoly& shifted) {
    std::map<std::string, MultiPoly> bindings;
    for (const auto& v : shifted.vars()) bindings.emplace(v, MultiPoly::variable(v) - MultiPoly::constant(1));
    return substitute(shifted, bindings).with_vars(shifted.vars());
}

inline void check_sweep_size(std::size_t n, std::size_t cap, unsigned base, const char* unit) {
    check_cap(n, cap, base, unit);
    if (n > 63) throw InputError("exhaustive sweeps support at most 63 vertices");
}

template <typename LabelRange>
std::uint64_t label_mask(const Multigraph& g, const LabelRange& labels) {
    std::uint64_t mask = 0;
    for (const auto& l : labels) mask |= std::uint64_t{1} << g.require_vertex(std::string(l));
    return mask;
}

/// Incrementally maintained transition map over a fixed Euler system.
class PartitionTracer {
public:
    explicit PartitionTracer(const EulerSystem& es)
        : es_(es), passages_(vertex_passages(es)), partner_(es.graph().half_edge_count()) {
        for (std::size_t v = 0; v < passages_.size(); ++v) set(v, Transition::Follow);
    }

    void set(std::size_t v, Transition c) {
        for (const auto& [x, y] : pairing_for(passages_[v], c)) {
            partner_[x] = y;
            partner_[y] = x;
        }
    }

    [[nodiscard]] std::size_t circuit_count() const { return trace_transitions(es_.graph(), partner_).size(); }

private:
    const EulerSystem& es_;
    std::vector<VertexPassages> passages_;
    std::vector<HalfEdge> partner_;
};

inline std::uint32_t popcount(std::uint64_t x) { return static_cast<std::uint32_t>(std::popcount(x)); }

}  // namespace detail

/// Vertex-nullity interlace polynomial: sum over vertex subsets S of (y-1)^nullity(A(H)[S]).
inline MultiPoly q_nullity(const LoopedGraph& h, std::size_t cap = default_subset_cap) {
    const std::size_t n = h.vertex_count();
    detail::check_sweep_size(n, cap, 2, "subsets");
    const auto rows = detail::packed_rows(h.matrix());
    std::vector<Integer> count(n + 1, 0);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) ++count[detail::subset_nullity(rows, s)];

    MultiPoly shifted({"y"});
    for (std::uint32_t k = 0; k <= n; ++k) shifted.add_term({k}, count[k]);
    return detail::expand_shifted(shifted);
}

/// Two-variable interlace polynomial: sum of (x-1)^(|S| - nullity) (y-1)^nullity.
inline MultiPoly q_two_variable(const LoopedGraph& h, std::size_t cap = default_subset_cap) {
    const std::size_t n = h.vertex_count();
    detail::check_sweep_size(n, cap, 2, "subsets");
    const auto rows = detail::packed_rows(h.matrix());
    MultiPoly shifted({"x", "y"});
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        const auto nu = static_cast<std::uint32_t>(detail::subset_nullity(rows, s));
        shifted.add_term({detail::popcount(s) - nu, nu}, 1);
    }
    return detail::expand_shifted(shifted);
}

/**
 * Per-subset circuit counts |P_S| for S over all vertex subsets, where P_S follows the
 * Euler system off S, flips at looped vertices of S and crosses at unlooped ones.
 */
inline std::vector<std::size_t> subset_partition_sizes(const EulerSystem& es, std::uint64_t loop_mask,
                                                       std::size_t cap = default_subset_cap) {
    const std::size_t n = es.graph().vertex_count();
    detail::check_sweep_size(n, cap, 2, "subsets");
    detail::PartitionTracer tracer(es);
    std::vector<std::size_t> sizes(std::size_t{1} << n);
    for (std::uint64_t s = 0; s < sizes.size(); ++s) {
        for (std::size_t v = 0; v < n; ++v) {
            const bool in_s = (s >> v) & 1U;
            const bool looped = (loop_mask >> v) & 1U;
            tracer.set(v, !in_s ? Transition::Follow : looped ? Transition::Flip : Transition::Cross);
        }
        sizes[s] = tracer.circuit_count();
    }
    return sizes;
}

inline MultiPoly q_from_partitions_masked(const EulerSystem& es, std::uint64_t loop_mask,
                                          std::size_t cap = default_subset_cap) {
    const auto sizes = subset_partition_sizes(es, loop_mask, cap);
    const std::size_t c = es.component_count();
    MultiPoly shifted({"y"});
    for (std::size_t size : sizes) shifted.add_term({static_cast<std::uint32_t>(size - c)}, 1);
    return detail::expand_shifted(shifted);
}

inline MultiPoly q2_from_partitions_masked(const EulerSystem& es, std::uint64_t loop_mask,
                                           std::size_t cap = default_subset_cap) {
    const auto sizes = subset_partition_sizes(es, loop_mask, cap);
    const std::size_t c = es.component_count();
    MultiPoly shifted({"x", "y"});
    for (std::uint64_t s = 0; s < sizes.size(); ++s) {
        const auto nu = static_cast<std::uint32_t>(sizes[s] - c);
        const std::uint32_t k = detail::popcount(s);
        if (nu > k) throw std::logic_error("circuit count exceeds |S| + c(G)");
        shifted.add_term({k - nu, nu}, 1);
    }
    return detail::expand_shifted(shifted);
}

/// q_N of the loop-decorated interlace graph, computed from traced circuit partitions.
template <typename LabelRange>
MultiPoly q_from_partitions(const EulerSystem& es, const LabelRange& loop_set, std::size_t cap = default_subset_cap) {
    return q_from_partitions_masked(es, detail::label_mask(es.graph(), loop_set), cap);
}

/// q of the loop-decorated interlace graph, computed from traced circuit partitions.
template <typename LabelRange>
MultiPoly q2_from_partitions(const EulerSystem& es, const LabelRange& loop_set, std::size_t cap = default_subset_cap) {
    return q2_from_partitions_masked(es, detail::label_mask(es.graph(), loop_set), cap);
}

/// Variable order for Courcelle's polynomial: u, v, x_<label>..., y_<label>...
inline std::vector<std::string> courcelle_vars(const std::vector<std::string>& labels) {
    std::vector<std::string> vars{"u", "v"};
    for (const auto& l : labels) vars.push_back("x_" + l);
    for (const auto& l : labels) vars.push_back("y_" + l);
    return vars;
}

namespace detail {

/// Visits every pair of disjoint subsets (A, B) as bitmasks.
template <typename Fn>
void for_each_disjoint_pair(std::size_t n, Fn&& fn) {
    std::vector<std::uint8_t> digit(n, 0);
    std::uint64_t a = 0, b = 0;
    for (;;) {
        fn(a, b);
        std::size_t v = 0;
        while (v < n && digit[v] == 2) {
            digit[v] = 0;
            b &= ~(std::uint64_t{1} << v);
            ++v;
        }
        if (v == n) return;
        if (digit[v] == 0) {
            a |= std::uint64_t{1} << v;
        } else {
            a &= ~(std::uint64_t{1} << v);
            b |= std::uint64_t{1} << v;
        }
        ++digit[v];
    }
}

inline MultiPoly::Exponents courcelle_monomial(std::size_t n, std::uint64_t a, std::uint64_t b, std::uint32_t u_exp,
                                               std::uint32_t v_exp) {
    MultiPoly::Exponents e(2 + 2 * n, 0);
    e[0] = u_exp;
    e[1] = v_exp;
    for (std::size_t i = 0; i < n; ++i) {
        if ((a >> i) & 1U) e[2 + i] = 1;
        if ((b >> i) & 1U) e[2 + n + i] = 1;
    }
    return e;
}

}  // namespace detail

/**
 * Courcelle's multivariate interlace polynomial: over disjoint A, B, the monomial
 * prod x_a prod y_b u^(|A u B| - nu) v^nu, with nu the nullity of H with loops toggled on B,
 * restricted to A u B.
 */
inline MultiPoly courcelle(const LoopedGraph& h, std::size_t cap = default_pair_cap) {
    const std::size_t n = h.vertex_count();
    detail::check_sweep_size(n, cap, 3, "disjoint pairs");
    const auto rows = detail::packed_rows(h.matrix());
    MultiPoly p(courcelle_vars(h.labels()));
    std::vector<std::uint64_t> toggled(rows.size());
    detail::for_each_disjoint_pair(n, [&](std::uint64_t a, std::uint64_t b) {
        for (std::size_t i = 0; i < n; ++i) toggled[i] = rows[i] ^ (b & (std::uint64_t{1} << i));
        const auto nu = static_cast<std::uint32_t>(detail::subset_nullity(toggled, a | b));
        p.add_term(detail::courcelle_monomial(n, a, b, detail::popcount(a | b) - nu, nu), 1);
    });
    return p;
}

/**
 * Courcelle's polynomial of the loop-decorated interlace graph from traced partitions P_{A,B}:
 * flips at looped vertices of A and unlooped vertices of B, crosses at the rest of A u B.
 */
inline MultiPoly courcelle_from_partitions_masked(const EulerSystem& es, std::uint64_t loop_mask,
                                                  std::size_t cap = default_pair_cap) {
    const std::size_t n = es.graph().vertex_count();
    detail::check_sweep_size(n, cap, 3, "disjoint pairs");
    const std::size_t c = es.component_count();
    detail::PartitionTracer tracer(es);
    MultiPoly p(courcelle_vars(es.graph().labels()));
    detail::for_each_disjoint_pair(n, [&](std::uint64_t a, std::uint64_t b) {
        for (std::size_t v = 0; v < n; ++v) {
            const std::uint64_t bit = std::uint64_t{1} << v;
            const bool looped = loop_mask & bit;
            Transition t = Transition::Follow;
            if (a & bit) t = looped ? Transition::Flip : Transition::Cross;
            else if (b & bit) t = looped ? Transition::Cross : Transition::Flip;
            tracer.set(v, t);
        }
        const std::size_t size = tracer.circuit_count();
        const std::uint32_t k = detail::popcount(a | b);
        if (size < c || size - c > k)
            throw std::logic_error("negative exponent in Courcelle expansion: |P| = " + std::to_string(size) +
                                   ", |A u B| = " + std::to_string(k));
        const auto nu = static_cast<std::uint32_t>(size - c);
        p.add_term(detail::courcelle_monomial(n, a, b, k - nu, nu), 1);
    });
    return p;
}

template <typename LabelRange>
MultiPoly courcelle_from_partitions(const EulerSystem& es, const LabelRange& loop_set,
                                    std::size_t cap = default_pair_cap) {
    return courcelle_from_partitions_masked(es, detail::label_mask(es.graph(), loop_set), cap);
}

/// Sets every y_b = 0, every x_a = 1, u = x - 1 and v = y - 1.
inline MultiPoly courcelle_to_q(const MultiPoly& c) {
    std::map<std::string, MultiPoly> bindings;
    for (const auto& var : c.vars()) {
        if (var.rfind("x_", 0) == 0) bindings.emplace(var, MultiPoly::constant(1));
        else if (var.rfind("y_", 0) == 0) bindings.emplace(var, MultiPoly::constant(0));
    }
    bindings.emplace("u", MultiPoly::variable("x") - MultiPoly::constant(1));
    bindings.emplace("v", MultiPoly::variable("y") - MultiPoly::constant(1));
    return substitute(c, bindings);
}

/// q(x, y) at x = 2.
inline MultiPoly q_at_x_equals_2(const MultiPoly& q) {
    return substitute(q, {{"x", MultiPoly::constant(2)}});
}

}  // namespace interlace
