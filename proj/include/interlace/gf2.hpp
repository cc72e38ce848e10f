#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/labels.hpp"

namespace interlace {

/**
 * Square matrix over GF(2) with one label per row/column.
 *
 * Rows are bit-packed into 64-bit words; column j of row i lives in bit (j % 64)
 * of word (j / 64). The 0x0 matrix is a valid value.
 */
class Gf2Matrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Gf2Matrix() = default;

    /// Zero matrix labelled "1".."n".
    explicit Gf2Matrix(std::size_t n) : Gf2Matrix(default_labels(n)) {}

    /// Zero matrix with the given labels, which must be distinct.
    explicit Gf2Matrix(std::vector<std::string> labels)
        : n_(labels.size()), words_(words_for(labels.size())), labels_(std::move(labels)),
          bits_(n_ * words_, 0) {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_) {
            if (!seen.insert(l).second) throw InputError("duplicate matrix label '" + l + "'");
        }
    }

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    /// Builds from nested 0/1 rows; labels default to "1".."n".
    static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows,
                               std::vector<std::string> labels = {}) {
        if (labels.empty()) labels = default_labels(rows.size());
        if (labels.size() != rows.size()) throw InputError("label count does not match row count");
        Gf2Matrix m(std::move(labels));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw InputError("matrix is not square");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[i][j] != 0 && rows[i][j] != 1) throw InputError("matrix entries must be 0 or 1");
                m.set(i, j, rows[i][j] == 1);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool empty() const noexcept { return n_ == 0; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    [[nodiscard]] std::size_t require_index(const std::string& label) const {
        if (auto i = index_of(label)) return *i;
        throw InputError("unknown matrix label '" + label + "'");
    }

    [[nodiscard]] bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / word_bits] >> (j % word_bits)) & 1U;
    }
    [[nodiscard]] bool operator()(std::size_t i, std::size_t j) const { return get(i, j); }

    void set(std::size_t i, std::size_t j, bool value) {
        Word& w = bits_[i * words_ + j / word_bits];
        const Word mask = Word{1} << (j % word_bits);
        w = value ? (w | mask) : (w & ~mask);
    }

    [[nodiscard]] std::span<const Word> row_words(std::size_t i) const {
        return {bits_.data() + i * words_, words_};
    }
    [[nodiscard]] std::size_t words_per_row() const noexcept { return words_; }

    [[nodiscard]] bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (get(i, j) != get(j, i)) return false;
        return true;
    }

    /// Entries only; labels are ignored.
    [[nodiscard]] bool same_entries(const Gf2Matrix& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
        return a.n_ == b.n_ && a.labels_ == b.labels_ && a.bits_ == b.bits_;
    }

    [[nodiscard]] std::vector<std::vector<int>> to_rows() const {
        std::vector<std::vector<int>> rows(n_, std::vector<int>(n_, 0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) rows[i][j] = get(i, j) ? 1 : 0;
        return rows;
    }

    static std::vector<std::string> default_labels(std::size_t n) {
        std::vector<std::string> out;
        out.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
        return out;
    }

private:
    static std::size_t words_for(std::size_t n) { return (n + word_bits - 1) / word_bits; }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::string> labels_;
    std::vector<Word> bits_;
};

/// Rank over GF(2). Pivots are taken column by column, first nonzero row from the top.
inline std::size_t rank(const Gf2Matrix& m) {
    const std::size_t n = m.size();
    const std::size_t w = m.words_per_row();
    std::vector<Gf2Matrix::Word> rows;
    rows.reserve(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = m.row_words(i);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    auto row = [&](std::size_t i) { return rows.data() + i * w; };

    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
        const std::size_t word = col / Gf2Matrix::word_bits;
        const Gf2Matrix::Word mask = Gf2Matrix::Word{1} << (col % Gf2Matrix::word_bits);
        std::size_t pivot = r;
        while (pivot < n && !(row(pivot)[word] & mask)) ++pivot;
        if (pivot == n) continue;
        if (pivot != r) std::swap_ranges(row(pivot), row(pivot) + w, row(r));
        for (std::size_t i = r + 1; i < n; ++i) {
            if (row(i)[word] & mask) {
                // columns before `word` are already zero in both rows
                for (std::size_t k = word; k < w; ++k) row(i)[k] ^= row(r)[k];
            }
        }
        ++r;
    }
    return r;
}

inline std::size_t nullity(const Gf2Matrix& m) { return m.size() - rank(m); }

/// Rows/columns whose labels are in `keep`, in the original relative order.
template <typename LabelRange>
Gf2Matrix principal_submatrix(const Gf2Matrix& m, const LabelRange& keep) {
    std::vector<bool> kept(m.size(), false);
    for (const auto& label : keep) kept[m.require_index(std::string(label))] = true;

    std::vector<std::size_t> idx;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (kept[i]) {
            idx.push_back(i);
            labels.push_back(m.label(i));
        }
    }
    Gf2Matrix out(std::move(labels));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out.set(a, b, m.get(idx[a], idx[b]));
    return out;
}

inline Gf2Matrix principal_submatrix(const Gf2Matrix& m, std::initializer_list<std::string> keep) {
    return principal_submatrix(m, std::vector<std::string>(keep));
}

inline Gf2Matrix set_diagonal(const Gf2Matrix& m, const std::string& label, bool value) {
    Gf2Matrix out = m;
    const std::size_t i = m.require_index(label);
    out.set(i, i, value);
    return out;
}

namespace detail {

/// Rank of a set of single-word GF(2) row vectors (xor basis keyed by highest set bit).
inline std::size_t word_rank(std::span<const std::uint64_t> rows) {
    std::uint64_t basis[64] = {};
    std::size_t r = 0;
    for (std::uint64_t v : rows) {
        while (v) {
            const int top = 63 - std::countl_zero(v);
            if (!basis[top]) {
                basis[top] = v;
                ++r;
                break;
            }
            v ^= basis[top];
        }
    }
    return r;
}

/**
 * Nullity of the principal submatrix selected by `subset`, for matrices of at most 64 rows
 * given as one word per row. Masking rows to the subset's columns keeps the rank unchanged.
 */
inline std::size_t subset_nullity(std::span<const std::uint64_t> rows, std::uint64_t subset) {
    std::uint64_t picked[64];
    std::size_t k = 0;
    for (std::uint64_t s = subset; s; s &= s - 1) picked[k++] = rows[std::countr_zero(s)] & subset;
    return k - word_rank({picked, k});
}

/// One word per row; requires size() <= 64.
inline std::vector<std::uint64_t> packed_rows(const Gf2Matrix& m) {
    if (m.size() > 64) throw InputError("packed rows need at most 64 vertices");
    std::vector<std::uint64_t> rows(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!m.empty()) rows[i] = m.row_words(i)[0];
    return rows;
}

}  // namespace detail

/**
 * Text format: a line with n, an optional "labels: a b c" line, then n rows of n
 * space-separated 0/1 digits. Blank lines and '#' comments are ignored.
 */
inline Gf2Matrix read_matrix(std::istream& in) {
    std::optional<std::size_t> n;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> rows;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto tokens = split_whitespace(strip_comment(raw));
        if (tokens.empty()) continue;
        if (tokens.front() == "labels:") {
            if (!labels.empty() || !rows.empty()) throw ParseError(lineno, "unexpected labels line");
            labels.assign(tokens.begin() + 1, tokens.end());
            continue;
        }
        if (!n) {
            if (tokens.size() != 1 || !is_numeric_label(tokens[0]))
                throw ParseError(lineno, "expected matrix dimension");
            n = std::stoul(tokens[0]);
            continue;
        }
        if (rows.size() == *n) throw ParseError(lineno, "more than " + std::to_string(*n) + " rows");
        if (tokens.size() != *n)
            throw ParseError(lineno, "expected " + std::to_string(*n) + " entries, got " +
                                         std::to_string(tokens.size()));
        std::vector<int> row;
        for (const auto& t : tokens) {
            if (t != "0" && t != "1") throw ParseError(lineno, "entry '" + t + "' is not 0 or 1");
            row.push_back(t == "1");
        }
        rows.push_back(std::move(row));
    }
    if (!n) throw ParseError(lineno, "missing matrix dimension");
    if (rows.size() != *n)
        throw ParseError(lineno, "expected " + std::to_string(*n) + " rows, got " + std::to_string(rows.size()));
    if (!labels.empty() && labels.size() != *n)
        throw ParseError(lineno, "labels line has " + std::to_string(labels.size()) + " labels for " +
                                     std::to_string(*n) + " rows");
    return Gf2Matrix::from_rows(rows, std::move(labels));
}

inline void write_matrix(std::ostream& out, const Gf2Matrix& m) {
    out << m.size() << '\n';
    out << "labels:";
    for (const auto& l : m.labels()) out << ' ' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << (m.get(i, j) ? '1' : '0');
        out << '\n';
    }
}

inline std::string to_string(const Gf2Matrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

}  // namespace interlace
