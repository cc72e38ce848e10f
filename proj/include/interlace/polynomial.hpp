#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "interlace/error.hpp"

namespace interlace {

using Integer = boost::multiprecision::cpp_int;

/**
 * Sparse multivariate polynomial with exact integer coefficients.
 *
 * Terms map exponent vectors (one entry per variable, in `vars()` order) to nonzero
 * coefficients. Polynomials over different variable lists are aligned on demand; two
 * polynomials compare equal when they are equal as polynomials.
 */
class MultiPoly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using Terms = std::map<Exponents, Integer>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw InputError("duplicate variable '" + vars_[i] + "'");
    }

    static MultiPoly constant(const Integer& c, std::vector<std::string> vars = {}) {
        MultiPoly p(std::move(vars));
        p.add_term(Exponents(p.vars_.size(), 0), c);
        return p;
    }

    static MultiPoly variable(const std::string& name) {
        MultiPoly p({name});
        p.add_term({1}, 1);
        return p;
    }

    [[nodiscard]] const std::vector<std::string>& vars() const noexcept { return vars_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }

    [[nodiscard]] std::optional<std::size_t> var_index(const std::string& name) const {
        const auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }

    void add_term(const Exponents& exps, const Integer& coef) {
        if (exps.size() != vars_.size()) throw InputError("exponent vector length does not match variables");
        if (coef == 0) return;
        auto [it, fresh] = terms_.try_emplace(exps, coef);
        if (!fresh) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Coefficient of the monomial given as (variable, exponent) pairs; absent variables have exponent 0.
    [[nodiscard]] Integer coefficient(const std::vector<std::pair<std::string, std::uint32_t>>& monomial) const {
        Exponents e(vars_.size(), 0);
        for (const auto& [name, power] : monomial) {
            const auto i = var_index(name);
            if (!i) {
                if (power == 0) continue;
                return 0;
            }
            e[*i] = power;
        }
        const auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Same polynomial over `vars`, which must contain every variable actually used.
    [[nodiscard]] MultiPoly with_vars(const std::vector<std::string>& vars) const {
        MultiPoly out(vars);
        std::vector<std::size_t> map(vars_.size(), vars.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (auto j = out.var_index(vars_[i])) map[i] = *j;
        for (const auto& [e, c] : terms_) {
            Exponents ne(vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (map[i] == vars.size()) throw InputError("variable '" + vars_[i] + "' missing from target list");
                ne[map[i]] = e[i];
            }
            out.add_term(ne, c);
        }
        return out;
    }

    /// Variables of a followed by those of b not already present.
    static std::vector<std::string> merged_vars(const MultiPoly& a, const MultiPoly& b) {
        std::vector<std::string> vars = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        return vars;
    }

    MultiPoly& operator+=(const MultiPoly& rhs) {
        if (rhs.vars_ != vars_) {
            const auto vars = merged_vars(*this, rhs);
            if (vars != vars_) *this = with_vars(vars);
            const MultiPoly r = rhs.with_vars(vars);
            for (const auto& [e, c] : r.terms_) add_term(e, c);
            return *this;
        }
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator*=(const Integer& k) {
        if (k == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= k;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) {
        MultiPoly nb = b;
        nb *= Integer(-1);
        return a += nb;
    }
    friend MultiPoly operator*(MultiPoly a, const Integer& k) { return a *= k; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        const auto vars = merged_vars(a, b);
        const MultiPoly x = a.with_vars(vars);
        const MultiPoly y = b.with_vars(vars);
        MultiPoly out(vars);
        Exponents e(vars.size());
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    [[nodiscard]] MultiPoly pow(unsigned k) const {
        MultiPoly result = constant(1, vars_);
        MultiPoly base = *this;
        while (k) {
            if (k & 1U) result = result * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return result;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        const auto vars = merged_vars(a, b);
        return a.with_vars(vars).terms_ == b.with_vars(vars).terms_;
    }

private:
    std::vector<std::string> vars_;
    Terms terms_;
};

/// Replaces each bound variable by its polynomial; unbound variables stay symbolic.
inline MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings) {
    std::vector<MultiPoly> image;
    for (const auto& v : p.vars()) {
        const auto it = bindings.find(v);
        image.push_back(it != bindings.end() ? it->second : MultiPoly::variable(v));
    }
    std::vector<std::map<std::uint32_t, MultiPoly>> powers(image.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
        auto it = powers[i].find(e);
        if (it == powers[i].end()) it = powers[i].emplace(e, image[i].pow(e)).first;
        return it->second;
    };

    MultiPoly out;
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * power(i, e[i]);
        out += term;
    }
    return out;
}

/// Exact value at a point; every variable with a nonzero exponent must be bound.
inline Integer evaluate(const MultiPoly& p, const std::map<std::string, Integer>& point) {
    std::vector<const Integer*> value(p.vars().size(), nullptr);
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        const auto it = point.find(p.vars()[i]);
        if (it != point.end()) value[i] = &it->second;
    }
    Integer total = 0;
    for (const auto& [e, c] : p.terms()) {
        Integer term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!value[i]) throw InputError("variable '" + p.vars()[i] + "' is unbound");
            term *= boost::multiprecision::pow(*value[i], e[i]);
        }
        total += term;
    }
    return total;
}

/// Terms in descending lexicographic exponent order, e.g. "3*x^2*y - y + 1".
inline std::string to_text(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Integer mag = c < 0 ? Integer(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            factors.push_back(e[i] == 1 ? p.vars()[i] : p.vars()[i] + "^" + std::to_string(e[i]));
        }
        if (factors.empty() || mag != 1) factors.insert(factors.begin(), mag.str());
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

/// {"vars":[...], "terms":[{"exps":[...], "coef":"..."}]} with terms in the same order as to_text.
inline nlohmann::json to_json(const MultiPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back({{"exps", it->first}, {"coef", it->second.str()}});
    return {{"vars", p.vars()}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const nlohmann::json& j) {
    MultiPoly p(j.at("vars").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
        const auto coef = t.at("coef").get<std::string>();
        Integer c;
        try {
            c = Integer(coef);
        } catch (const std::exception&) {
            throw InputError("bad coefficient '" + coef + "'");
        }
        p.add_term(t.at("exps").get<MultiPoly::Exponents>(), c);
    }
    return p;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << to_text(p); }

}  // namespace interlace
