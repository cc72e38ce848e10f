#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace interlace {

/// Invalid caller input: bad labels, malformed files, non-4-regular graphs.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A text parse failure that knows which line it came from (1-based).
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An exhaustive sweep was refused because it would exceed the vertex cap.
class CapExceeded : public InputError {
public:
    CapExceeded(std::size_t vertices, std::size_t cap, const std::string& sweep)
        : InputError("sweep of " + sweep + " over " + std::to_string(vertices) +
                     " vertices exceeds the cap of " + std::to_string(cap)),
          vertices_(vertices), cap_(cap), sweep_(sweep) {}

    [[nodiscard]] std::size_t vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t cap() const noexcept { return cap_; }
    /// Human-readable size of the refused sweep, e.g. "3^15 = 14348907 assignments".
    [[nodiscard]] const std::string& sweep() const noexcept { return sweep_; }

private:
    std::size_t vertices_;
    std::size_t cap_;
    std::string sweep_;
};

/// Throws CapExceeded when n > cap, describing the base^n sweep that was refused.
inline void check_cap(std::size_t n, std::size_t cap, unsigned base, const char* unit) {
    if (n <= cap) return;
    std::string sweep = std::to_string(base) + "^" + std::to_string(n);
    unsigned long long total = 1;
    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i) {
        if (total > ~0ULL / base) fits = false;
        else total *= base;
    }
    if (fits) sweep += " = " + std::to_string(total);
    sweep += " ";
    sweep += unit;
    throw CapExceeded(n, cap, sweep);
}

}  // namespace interlace
