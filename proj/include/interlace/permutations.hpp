#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "interlace/error.hpp"
#include "interlace/euler.hpp"
#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"
#include "interlace/partitions.hpp"

namespace interlace {

/// Bijection of {1..m}. Composition reads left to right: p.then(q) applies p first.
class Permutation {
public:
    Permutation() = default;

    /// image[i-1] is the image of i.
    explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
        std::vector<bool> hit(image_.size() + 1, false);
        for (std::size_t x : image_) {
            if (x < 1 || x > image_.size()) throw InputError("permutation value " + std::to_string(x) + " out of range");
            if (hit[x]) throw InputError("permutation value " + std::to_string(x) + " repeated");
            hit[x] = true;
        }
    }

    static Permutation identity(std::size_t m) {
        std::vector<std::size_t> img(m);
        for (std::size_t i = 0; i < m; ++i) img[i] = i + 1;
        return Permutation(std::move(img));
    }

    /// The cycle (1 2 ... m).
    static Permutation full_cycle(std::size_t m) {
        std::vector<std::size_t> img(m);
        for (std::size_t i = 0; i < m; ++i) img[i] = (i + 1) % m + 1;
        return Permutation(std::move(img));
    }

    static Permutation transposition(std::size_t m, std::size_t a, std::size_t b) {
        Permutation p = identity(m);
        if (a < 1 || b < 1 || a > m || b > m) throw InputError("transposition outside 1.." + std::to_string(m));
        std::swap(p.image_[a - 1], p.image_[b - 1]);
        return p;
    }

    [[nodiscard]] std::size_t size() const noexcept { return image_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t i) const { return image_.at(i - 1); }
    [[nodiscard]] const std::vector<std::size_t>& image() const noexcept { return image_; }

    [[nodiscard]] Permutation then(const Permutation& q) const {
        if (q.size() != size()) throw InputError("composing permutations of different sizes");
        std::vector<std::size_t> img(size());
        for (std::size_t i = 1; i <= size(); ++i) img[i - 1] = q((*this)(i));
        return Permutation(std::move(img));
    }

    [[nodiscard]] Permutation inverse() const {
        std::vector<std::size_t> img(size());
        for (std::size_t i = 1; i <= size(); ++i) img[(*this)(i) - 1] = i;
        return Permutation(std::move(img));
    }

    [[nodiscard]] std::vector<std::vector<std::size_t>> cycles() const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> seen(size() + 1, false);
        for (std::size_t i = 1; i <= size(); ++i) {
            if (seen[i]) continue;
            out.emplace_back();
            for (std::size_t j = i; !seen[j]; j = (*this)(j)) {
                seen[j] = true;
                out.back().push_back(j);
            }
        }
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> image_;
};

/// Cycles of length at least two, e.g. "(1 3 2)(4 5)"; "()" for the identity.
inline std::string to_cycle_string(const Permutation& p) {
    std::string out;
    for (const auto& c : p.cycles()) {
        if (c.size() < 2) continue;
        out += '(';
        for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + std::to_string(c[k]);
        out += ')';
    }
    return out.empty() ? "()" : out;
}

inline std::string to_image_string(const Permutation& p) {
    std::string out;
    for (std::size_t i = 1; i <= p.size(); ++i) out += (i > 1 ? " " : "") + std::to_string(p(i));
    return out;
}

/**
 * One-line image notation "3 1 2 5 4" or cycle notation "(1 3 2)(4 5)". In cycle notation
 * fixed points may be omitted; the size is the largest value mentioned unless `size` is larger.
 */
inline Permutation parse_permutation(const std::string& text, std::size_t size = 0) {
    auto parse_number = [](const std::string& tok) {
        if (!is_numeric_label(tok)) throw InputError("'" + tok + "' is not a positive integer");
        return static_cast<std::size_t>(std::stoull(tok));
    };
    if (text.find('(') == std::string::npos) {
        std::vector<std::size_t> img;
        for (const auto& tok : split_whitespace(text)) img.push_back(parse_number(tok));
        if (size && size != img.size())
            throw InputError("image notation has " + std::to_string(img.size()) + " entries, expected " +
                             std::to_string(size));
        return Permutation(std::move(img));
    }

    std::vector<std::vector<std::size_t>> cycles;
    std::size_t largest = 0;
    bool open = false;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        if (!open) throw InputError("value '" + tok + "' outside parentheses");
        const std::size_t x = parse_number(tok);
        if (x == 0) throw InputError("permutation values start at 1");
        cycles.back().push_back(x);
        largest = std::max(largest, x);
        tok.clear();
    };
    for (char ch : text) {
        if (ch == '(') {
            flush();
            if (open) throw InputError("nested '(' in cycle notation");
            open = true;
            cycles.emplace_back();
        } else if (ch == ')') {
            flush();
            if (!open) throw InputError("unmatched ')' in cycle notation");
            open = false;
        } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            flush();
        } else {
            tok += ch;
        }
    }
    flush();
    if (open) throw InputError("unclosed '(' in cycle notation");

    const std::size_t m = std::max(size, largest);
    if (size && largest > size) throw InputError("cycle mentions " + std::to_string(largest) + " > size " + std::to_string(size));
    std::vector<std::size_t> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = i + 1;
    std::vector<bool> used(m + 1, false);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (used[c[k]]) throw InputError("value " + std::to_string(c[k]) + " appears in two cycles");
            used[c[k]] = true;
            img[c[k] - 1] = c[(k + 1) % c.size()];
        }
    }
    return Permutation(std::move(img));
}

/// Number of cycles, counted by direct iteration.
inline std::size_t orbit_count(const Permutation& p) {
    std::vector<bool> seen(p.size() + 1, false);
    std::size_t orbits = 0;
    for (std::size_t i = 1; i <= p.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        for (std::size_t j = i; !seen[j]; j = p(j)) seen[j] = true;
    }
    return orbits;
}

using Transpositions = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {
inline Transpositions normalized_transpositions(std::size_t m, const Transpositions& ts) {
    Transpositions out;
    std::vector<bool> used(m + 1, false);
    for (auto [a, b] : ts) {
        if (a > b) std::swap(a, b);
        if (a < 1 || b > m || a == b)
            throw InputError("(" + std::to_string(a) + " " + std::to_string(b) + ") is not a transposition of 1.." +
                             std::to_string(m));
        for (std::size_t x : {a, b}) {
            if (used[x]) throw InputError("transpositions overlap at " + std::to_string(x));
            used[x] = true;
        }
        out.emplace_back(a, b);
    }
    return out;
}
}  // namespace detail

/// k x k matrix with entry (i, j) = 1 iff the i-th and j-th transpositions interleave (a < c < b < d).
inline Gf2Matrix cohn_lempel_matrix(std::size_t m, const Transpositions& transpositions) {
    const auto ts = detail::normalized_transpositions(m, transpositions);
    Gf2Matrix out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const auto [a, b] = ts[i];
            const auto [c, d] = ts[j];
            if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) out.set(i, j, true);
        }
    }
    return out;
}

/// (1 2 ... m) followed by each transposition in turn.
inline Permutation compose_cohn_lempel(std::size_t m, const Transpositions& transpositions) {
    const auto ts = detail::normalized_transpositions(m, transpositions);
    Permutation p = Permutation::full_cycle(m);
    for (const auto& [a, b] : ts) p = p.then(Permutation::transposition(m, a, b));
    return p;
}

inline std::size_t orbit_count_via_nullity(std::size_t m, const Transpositions& transpositions) {
    return 1 + nullity(cohn_lempel_matrix(m, transpositions));
}

/**
 * Writes p as (1 2 ... m) followed by disjoint transpositions, if possible: the remainder
 * (1 2 ... m)^-1 then p must be an involution.
 */
inline std::optional<Transpositions> cohn_lempel_factors(const Permutation& p) {
    if (p.size() == 0) return std::nullopt;
    const Permutation rest = Permutation::full_cycle(p.size()).inverse().then(p);
    Transpositions ts;
    for (std::size_t i = 1; i <= rest.size(); ++i) {
        const std::size_t j = rest(i);
        if (rest(j) != i) return std::nullopt;
        if (i < j) ts.emplace_back(i, j);
    }
    return ts;
}

/// Odd m: the permutation of {1..m+1} that sends m to m+1 and m+1 to p(m). Even m: p itself.
inline Permutation even_extension(const Permutation& p) {
    const std::size_t m = p.size();
    if (m % 2 == 0) return p;
    std::vector<std::size_t> img(p.image());
    img[m - 1] = m + 1;
    img.push_back(p(m));
    return Permutation(std::move(img));
}

/// The 2-in, 2-out digraph of a permutation of {1..2n} under a pairing of {1..2n}.
struct PermutationDigraph {
    Permutation permutation;                      // even-sized
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::shared_ptr<const Multigraph> graph;      // vertex "j" is the j-th pair; edge i-1 is element i
    std::vector<bool> tail;                       // tail[h]: h is where its edge starts
    std::vector<HalfEdge> transitions;            // element i continues as element p(i)
};

inline std::vector<std::pair<std::size_t, std::size_t>> default_pairing(std::size_t size) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i + 1 <= size; i += 2) pairs.emplace_back(i, i + 1);
    return pairs;
}

/**
 * Vertices are the pairs; element i becomes an edge from the pair containing i to the pair
 * containing p(i). Odd-sized inputs are first replaced by their even extension.
 */
inline PermutationDigraph permutation_to_digraph(
    const Permutation& input, std::optional<std::vector<std::pair<std::size_t, std::size_t>>> pairing = std::nullopt) {
    PermutationDigraph d;
    d.permutation = even_extension(input);
    const std::size_t size = d.permutation.size();
    d.pairs = pairing ? *pairing : default_pairing(size);

    std::vector<std::size_t> pair_of(size + 1, 0);
    if (d.pairs.size() * 2 != size) throw InputError("pairing must split 1.." + std::to_string(size) + " into pairs");
    for (std::size_t j = 0; j < d.pairs.size(); ++j) {
        for (std::size_t x : {d.pairs[j].first, d.pairs[j].second}) {
            if (x < 1 || x > size) throw InputError("pairing value " + std::to_string(x) + " out of range");
            if (pair_of[x]) throw InputError("pairing uses " + std::to_string(x) + " twice");
            pair_of[x] = j + 1;
        }
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 1; i <= size; ++i)
        edges.emplace_back(std::to_string(pair_of[i]), std::to_string(pair_of[d.permutation(i)]));
    d.graph = std::make_shared<const Multigraph>(Multigraph::from_edge_list(edges));

    d.tail.assign(2 * size, false);
    d.transitions.assign(2 * size, 0);
    for (std::size_t i = 1; i <= size; ++i) {
        const HalfEdge tail_i = 2 * (i - 1);
        const HalfEdge head_i = tail_i + 1;
        const HalfEdge tail_next = 2 * (d.permutation(i) - 1);
        d.tail[tail_i] = true;
        d.transitions[head_i] = tail_next;
        d.transitions[tail_next] = head_i;
    }
    return d;
}

struct ReductionReport {
    std::string permutation;      // as given
    std::size_t orbits = 0;       // of the even-sized permutation
    std::size_t original_orbits = 0;
    std::size_t traced = 0;
    std::size_t nullity = 0;
    std::size_t components = 0;
    std::string assignment;
    bool orientation_consistent = true;
    bool extended = false;

    [[nodiscard]] std::size_t predicted() const noexcept { return nullity + components; }
    [[nodiscard]] bool ok() const noexcept {
        return orientation_consistent && orbits == predicted() && traced == orbits && original_orbits == orbits;
    }
};

inline constexpr std::size_t default_permutation_cap = 4096;

/**
 * Counts the orbits of p through the circuit-partition route: build the digraph, take a
 * directed Euler system, express the permutation's transitions as an assignment and compare
 * the orbit count with nullity(I_P) + c.
 */
inline ReductionReport verify_permutation_reduction(const Permutation& p,
                                                    std::size_t cap = default_permutation_cap) {
    if (p.size() > cap)
        throw CapExceeded(p.size(), cap, "a reduction of a permutation of " + std::to_string(p.size()) + " elements");
    ReductionReport r;
    r.permutation = to_cycle_string(p);
    r.extended = p.size() % 2 == 1;
    r.original_orbits = orbit_count(p);
    if (p.size() == 0) return r;

    const PermutationDigraph d = permutation_to_digraph(p);
    r.orbits = orbit_count(d.permutation);
    const EulerSystem es = euler_system(d.graph, d.tail);
    const auto t = classify_transitions(es, d.transitions);
    if (!t) throw std::logic_error("permutation transitions are not a transition system");
    for (Transition c : t->choices())
        if (c == Transition::Flip) r.orientation_consistent = false;
    r.assignment = format_assignment(es.graph(), *t);
    r.traced = trace_transitions(es.graph(), d.transitions).size();
    r.nullity = nullity(partition_matrix(es, *t));
    r.components = es.component_count();
    return r;
}

inline nlohmann::json to_json(const ReductionReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    if (!r.ok()) failures.push_back({{"assignment", r.assignment}, {"traced", r.orbits}, {"predicted", r.predicted()}});
    return {{"checked", 1},
            {"failures", failures},
            {"permutation", r.permutation},
            {"orbits", r.original_orbits},
            {"nullity", r.nullity},
            {"components", r.components},
            {"extended", r.extended}};
}

}  // namespace interlace
