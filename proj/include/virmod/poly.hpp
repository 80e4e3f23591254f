#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "virmod/scalar.hpp"

namespace virmod {

// Exponent vector for variables d0..dm. std::vector's lexicographic order
// (index 0 most significant) is exactly the term order used everywhere.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

inline std::string monomial_str(const Monomial& m) {
    std::string out;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += "d" + std::to_string(v);
        if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
    return out.empty() ? "1" : out;
}

// Sparse multivariate polynomial over Scalar with a fixed variable count.
// Invariant: no stored zero coefficients; all monomials have nvars entries.
class MultiPoly {
public:
    MultiPoly() : nvars_(1) {}
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Scalar& c) {
        MultiPoly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t var) {
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m.at(var) = 1;
        p.add_term(m, Scalar(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Scalar& c) {
        if (m.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly out(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(nvars_);
                for (std::size_t v = 0; v < nvars_; ++v) m[v] = ma[v] + mb[v];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    MultiPoly scaled(const Scalar& c) const {
        MultiPoly out(nvars_);
        if (c == 0) return out;
        for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
        return out;
    }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Leading term under the lexicographic order, index 0 most significant.
    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return terms_.rbegin()->first;
    }

    int degree_in(std::size_t var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.at(var));
        return d;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += "(" + it->second.str() + ")*" + monomial_str(it->first);
        }
        return out;
    }

private:
    std::size_t nvars_;
    std::map<Monomial, Scalar> terms_;
};

// Coefficients of (x - k)^p as a dense vector indexed by x-power.
inline std::vector<Scalar> shifted_power(int p, const Scalar& k) {
    std::vector<Scalar> c(static_cast<std::size_t>(p) + 1);
    for (int i = 0; i <= p; ++i)
        c[static_cast<std::size_t>(i)] =
            binomial(static_cast<unsigned>(p), static_cast<unsigned>(i)) *
            pow_int(-k, p - i);
    return c;
}

// f with variable `var` replaced by (var - k), expanded and canonicalized.
inline MultiPoly poly_shift(const MultiPoly& f, std::size_t var, const Scalar& k) {
    if (var >= f.nvars()) throw std::invalid_argument("poly_shift: variable out of range");
    MultiPoly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto coeffs = shifted_power(m[var], k);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            Monomial mm = m;
            mm[var] = static_cast<int>(i);
            out.add_term(mm, c * coeffs[i]);
        }
    }
    return out;
}

}  // namespace virmod
