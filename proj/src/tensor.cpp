#include "virmod/tensor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace virmod {

bool TensorDescriptor::standard() const {
    std::set<Scalar> lambdas;
    lambdas.insert(factor0.lambda);
    for (const auto& f : factors) {
        if (f.alpha == 0) return false;
        lambdas.insert(f.lambda);
    }
    return lambdas.size() == nvars();
}

void TensorDescriptor::validate_params() const {
    if (factor0.lambda == 0) throw std::invalid_argument("lambda_0 must be nonzero");
    for (const auto& f : factors)
        if (f.lambda == 0) throw std::invalid_argument("every lambda_i must be nonzero");
}

void TensorElement::add_term(const Monomial& m, int vidx, const Scalar& c) {
    if (m.size() != nvars_) throw std::invalid_argument("tensor term arity mismatch");
    if (c == 0) return;
    TermKey key{m, vidx};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

TensorElement TensorElement::scaled(const Scalar& c) const {
    TensorElement out(nvars_);
    if (c == 0) return out;
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
    return out;
}

const Monomial& TensorElement::degree() const {
    if (terms_.empty()) throw std::logic_error("degree of the zero element");
    return terms_.rbegin()->first.first;
}

VVec TensorElement::leading_vvec() const {
    const Monomial& top = degree();
    VVec out;
    for (auto it = terms_.rbegin(); it != terms_.rend() && it->first.first == top; ++it)
        out.emplace(it->first.second, it->second);
    return out;
}

int TensorElement::max_exponent() const {
    int d = 0;
    for (const auto& [k, c] : terms_)
        for (int e : k.first) d = std::max(d, e);
    return d;
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += "(" + it->second.str() + ")*v" + std::to_string(it->first.second) + "(x)" +
               monomial_str(it->first.first);
    }
    return out;
}

MultiPoly act_omega(const OmegaParams& p, long m, const MultiPoly& f) {
    if (f.nvars() != 1) throw std::invalid_argument("act_omega expects a univariate polynomial");
    if (p.lambda == 0) throw std::invalid_argument("lambda must be nonzero");
    // lambda^m (d - m*alpha) f(d - m)
    MultiPoly shifted = poly_shift(f, 0, Scalar(m));
    MultiPoly mult = MultiPoly::variable(1, 0);
    mult -= MultiPoly::constant(1, Scalar(m) * p.alpha);
    return (mult * shifted).scaled(pow_int(p.lambda, m));
}

TensorElement act_tensor(const TensorDescriptor& d, long k, const TensorElement& elem) {
    d.validate_params();
    if (elem.nvars() != d.nvars())
        throw std::invalid_argument("element arity does not match descriptor");
    const int r = v_rank(d.v);
    const Scalar kq(k);
    TensorElement out(d.nvars());

    // lambda_i^k, computed once
    std::vector<Scalar> lampow(d.nvars());
    for (std::size_t i = 0; i < d.nvars(); ++i) lampow[i] = pow_int(d.factor(i).lambda, k);

    // k^{i+1}/(i+1)! for the Lb_i corrections
    std::vector<Scalar> kcoef(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i)
        kcoef[static_cast<std::size_t>(i)] =
            pow_int(kq, i + 1) / factorial(static_cast<unsigned>(i) + 1);

    for (const auto& [key, c] : elem.terms()) {
        const Monomial& mono = key.first;
        const int vidx = key.second;

        // Factor 0: v (x) lambda_0^k (d0 - k a0)(d0 - k)^{p0} ...
        {
            const auto sp = shifted_power(mono[0], kq);
            const Scalar pre = c * lampow[0];
            const Scalar ka = kq * d.factor0.alpha;
            for (std::size_t t = 0; t < sp.size(); ++t) {
                if (sp[t] == 0) continue;
                Monomial m1 = mono;
                m1[0] = static_cast<int>(t) + 1;
                out.add_term(m1, vidx, pre * sp[t]);
                if (ka != 0) {
                    m1[0] = static_cast<int>(t);
                    out.add_term(m1, vidx, -pre * ka * sp[t]);
                }
            }
            // ... + sum_i (k^{i+1}/(i+1)!) Lb_i v (x) lambda_0^k (d0 - k)^{p0} ...
            for (int i = 0; i <= r; ++i) {
                if (kcoef[static_cast<std::size_t>(i)] == 0) continue;
                VVec img = apply_vop(d.v, i, vidx);
                if (img.empty()) continue;
                const Scalar f = pre * kcoef[static_cast<std::size_t>(i)];
                for (const auto& [w, a] : img)
                    for (std::size_t t = 0; t < sp.size(); ++t) {
                        if (sp[t] == 0) continue;
                        Monomial m1 = mono;
                        m1[0] = static_cast<int>(t);
                        out.add_term(m1, w, f * a * sp[t]);
                    }
            }
        }

        // Factors i >= 1: v (x) ... lambda_i^k (di - k ai)(di - k)^{pi} ...
        for (std::size_t fi = 1; fi < d.nvars(); ++fi) {
            const auto sp = shifted_power(mono[fi], kq);
            const Scalar pre = c * lampow[fi];
            const Scalar ka = kq * d.factor(fi).alpha;
            for (std::size_t t = 0; t < sp.size(); ++t) {
                if (sp[t] == 0) continue;
                Monomial m1 = mono;
                m1[fi] = static_cast<int>(t) + 1;
                out.add_term(m1, vidx, pre * sp[t]);
                if (ka != 0) {
                    m1[fi] = static_cast<int>(t);
                    out.add_term(m1, vidx, -pre * ka * sp[t]);
                }
            }
        }
    }
    return out;
}

TensorElement act_m(const VDescriptor& v, const OmegaParams& p, long m,
                    const TensorElement& elem) {
    return act_tensor(TensorDescriptor{v, p, {}}, m, elem);
}

BracketCertificate check_bracket(const TensorDescriptor& d, long m, long n,
                                 const std::vector<TensorElement>& probes) {
    BracketCertificate cert;
    cert.m = m;
    cert.n = n;
    cert.pass = true;
    for (const auto& x : probes) {
        TensorElement lhs = act_tensor(d, m, act_tensor(d, n, x)) -
                            act_tensor(d, n, act_tensor(d, m, x));
        TensorElement rhs = act_tensor(d, m + n, x).scaled(Scalar(n - m));
        // C acts as zero, so the (m^3 - m)/12 central term contributes nothing.
        BracketProbeResult pr;
        pr.residual = lhs - rhs;
        pr.pass = pr.residual.is_zero();
        if (!pr.pass) cert.pass = false;
        cert.probes.push_back(std::move(pr));
    }
    return cert;
}

}  // namespace virmod
