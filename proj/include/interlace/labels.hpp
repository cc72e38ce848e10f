#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace interlace {

inline bool is_numeric_label(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// Canonical vertex order: numeric when every label is a digit string, lexicographic otherwise.
inline void sort_labels(std::vector<std::string>& labels) {
    const bool numeric = std::all_of(labels.begin(), labels.end(),
                                     [](const std::string& s) { return is_numeric_label(s); });
    if (numeric) {
        // digit strings compare by value without overflow; leading zeros tie-break lexicographically
        auto value_less = [](const std::string& a, const std::string& b) {
            auto strip = [](const std::string& s) {
                std::string_view v = s;
                while (v.size() > 1 && v.front() == '0') v.remove_prefix(1);
                return v;
            };
            const auto sa = strip(a), sb = strip(b);
            if (sa.size() != sb.size()) return sa.size() < sb.size();
            if (sa != sb) return sa < sb;
            return a < b;
        };
        std::sort(labels.begin(), labels.end(), value_less);
    } else {
        std::sort(labels.begin(), labels.end());
    }
}

inline std::vector<std::string> split_whitespace(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

/// Drops a trailing "# ..." comment.
inline std::string_view strip_comment(std::string_view line) {
    if (const auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
    return line;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace interlace
