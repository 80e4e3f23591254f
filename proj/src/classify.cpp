#include "virmod/classify.hpp"

#include <algorithm>
#include <set>

namespace virmod {

IrreducibilityVerdict decide_irreducible(const TensorDescriptor& d) {
    d.validate_params();
    std::set<Scalar> lambdas;
    for (std::size_t i = 0; i < d.nvars(); ++i) lambdas.insert(d.factor(i).lambda);
    if (lambdas.size() != d.nvars())
        return {false, "reducible: lambda_0..lambda_m are not pairwise distinct"};
    for (std::size_t i = 1; i < d.nvars(); ++i)
        if (d.factor(i).alpha == 0)
            return {false, "reducible: alpha_" + std::to_string(i) + " = 0"};
    if (v_is_one_dim(d.v) && std::get<OneDim>(d.v).beta == d.factor0.alpha)
        return {false, "reducible: V isomorphic to V_{alpha_0}"};
    return {true, "lambdas pairwise distinct, alpha_i nonzero for i >= 1, V not V_{alpha_0}"};
}

NormalForm normal_form(const TensorDescriptor& d) {
    NormalForm nf;
    if (v_is_one_dim(d.v)) {
        nf.pure = true;
        nf.pure_factors.push_back(
            OmegaParams{d.factor0.lambda, d.factor0.alpha - std::get<OneDim>(d.v).beta});
        for (const auto& f : d.factors) nf.pure_factors.push_back(f);
    } else {
        nf.pure = false;
        nf.v = d.v;
        nf.lambda0 = d.factor0.lambda;
        nf.alpha0 = d.factor0.alpha;
        nf.rest = d.factors;
    }
    return nf;
}

namespace {

// Greedy multiset matching; returns sigma mapping positions of `a` into `b`,
// or empty on mismatch.
std::vector<int> match_factors(const std::vector<OmegaParams>& a,
                               const std::vector<OmegaParams>& b, int offset) {
    std::vector<int> sigma(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (a[i].lambda == b[j].lambda && a[i].alpha == b[j].alpha) {
                sigma[i] = static_cast<int>(j) + offset;
                used[j] = true;
                break;
            }
        }
        if (sigma[i] < 0) return {};
    }
    return sigma;
}

// Nullspace of (Phi A_i - B_i Phi = 0, i = 0..r) over n x n matrices Phi,
// then a deterministic search for an invertible element of that space.
std::optional<ExactMatrix> window_intertwiner(const std::vector<ExactMatrix>& a,
                                              const std::vector<ExactMatrix>& b,
                                              std::size_t n) {
    const std::size_t unknowns = n * n;
    const std::size_t eqs = a.size() * unknowns;
    ExactMatrix sys(eqs, unknowns);
    // (Phi A - B Phi)[p][q] = sum_t Phi[p][t] A[t][q] - B[p][t] Phi[t][q]
    for (std::size_t op = 0; op < a.size(); ++op)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                const std::size_t row = (op * n + p) * n + q;
                for (std::size_t t = 0; t < n; ++t) {
                    sys(row, p * n + t) += a[op](t, q);
                    sys(row, t * n + q) -= b[op](p, t);
                }
            }
    RrefResult r = rref(sys);
    if (r.rank == unknowns) return std::nullopt;
    // nullspace basis from the free columns
    std::vector<bool> is_pivot(unknowns, false);
    for (std::size_t p : r.pivot_cols) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> null_basis;
    for (std::size_t free = 0; free < unknowns; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(unknowns, Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t row = 0; row < r.pivot_cols.size(); ++row)
            v[r.pivot_cols[row]] = -r.reduced(row, free);
        null_basis.push_back(std::move(v));
    }
    auto as_matrix = [&](const std::vector<Scalar>& v) {
        ExactMatrix m(n, n);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) m(p, q) = v[p * n + q];
        return m;
    };
    auto invertible = [&](const ExactMatrix& m) { return rref(m).rank == n; };
    for (const auto& v : null_basis) {
        ExactMatrix m = as_matrix(v);
        if (invertible(m)) return m;
    }
    // small deterministic integer combinations
    for (int w1 = 1; w1 <= 3; ++w1)
        for (std::size_t i = 0; i < null_basis.size(); ++i)
            for (std::size_t j = i + 1; j < null_basis.size(); ++j) {
                std::vector<Scalar> v = null_basis[i];
                for (std::size_t t = 0; t < unknowns; ++t) v[t] += Scalar(w1) * null_basis[j][t];
                ExactMatrix m = as_matrix(v);
                if (invertible(m)) return m;
            }
    return std::nullopt;  // space exists but no invertible element was found
}

}  // namespace

IsoVerdict decide_iso(const TensorDescriptor& d1, const TensorDescriptor& d2) {
    if (!decide_irreducible(d1).irreducible || !decide_irreducible(d2).irreducible)
        throw std::invalid_argument("decide_iso classifies irreducible modules only");
    NormalForm n1 = normal_form(d1), n2 = normal_form(d2);
    IsoVerdict v;
    if (n1.pure != n2.pure) {
        v.reason = "no: one V is finite-dimensional, the other is not";
        return v;
    }
    if (n1.pure) {
        if (n1.pure_factors.size() != n2.pure_factors.size()) {
            v.reason = "no: factor counts differ";
            return v;
        }
        std::vector<int> sigma = match_factors(n1.pure_factors, n2.pure_factors, 0);
        if (sigma.empty()) {
            v.reason = "no: adjusted (lambda, alpha) multisets differ";
            return v;
        }
        v.answer = IsoAnswer::Yes;
        v.reason = "yes: equal adjusted factor multisets (one-dimensional V normalization)";
        v.sigma = std::move(sigma);
        return v;
    }
    if (n1.rest.size() != n2.rest.size()) {
        v.reason = "no: factor counts differ";
        return v;
    }
    if (n1.lambda0 != n2.lambda0) {
        v.reason = "no: lambda_0 mismatch";
        return v;
    }
    std::vector<int> sigma_rest = match_factors(n1.rest, n2.rest, 1);
    if (sigma_rest.empty()) {
        v.reason = "no: (lambda_i, alpha_i) multisets differ";
        return v;
    }
    v.sigma.push_back(0);
    for (int s : sigma_rest) v.sigma.push_back(s);

    // The module action carries L_bar_0 - alpha_0 (the alpha-term of the Omega
    // factor absorbs into the i = 0 slot with a minus sign), so family-level
    // comparison happens after twisting by -alpha_0.
    Scalar neg_a0 = -n1.alpha0, neg_b0 = -n2.alpha0;
    VDescriptor v1t = twist(n1.v, neg_a0);
    VDescriptor v2t = twist(n2.v, neg_b0);
    if (std::holds_alternative<ShiftModule>(v1t) && std::holds_alternative<ShiftModule>(v2t)) {
        // Translation f(x) -> f(x + a) conjugates c - x to (c - a) - x, so any
        // two twisted shift modules are isomorphic.
        v.answer = IsoAnswer::Yes;
        v.shift_offset = std::get<ShiftModule>(v1t).c - std::get<ShiftModule>(v2t).c;
        v.reason = "yes: twisted shift modules are isomorphic via translation";
        return v;
    }
    if (std::holds_alternative<MatrixModule>(v1t) && std::holds_alternative<MatrixModule>(v2t)) {
        const auto& m1 = std::get<MatrixModule>(v1t);
        const auto& m2 = std::get<MatrixModule>(v2t);
        if (m1.r != m2.r) {
            v.answer = IsoAnswer::No;
            v.reason = "no: quotient ranks r differ";
            v.sigma.clear();
            return v;
        }
        const std::size_t n = static_cast<std::size_t>(std::min(m1.window, m2.window));
        std::vector<ExactMatrix> a, b;
        for (int i = 0; i <= m1.r; ++i) {
            ExactMatrix ta(n, n), tb(n, n);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    ta(p, q) = m1.actions[static_cast<std::size_t>(i)](p, q);
                    tb(p, q) = m2.actions[static_cast<std::size_t>(i)](p, q);
                }
            a.push_back(std::move(ta));
            b.push_back(std::move(tb));
        }
        auto phi = window_intertwiner(a, b, n);
        if (!phi) {
            v.answer = IsoAnswer::Undecided;
            v.reason = "undecided-at-window: no invertible window intertwiner found";
            return v;
        }
        v.answer = IsoAnswer::Yes;
        v.has_matrix_map = true;
        v.matrix_map = *phi;
        v.reason = "yes: window intertwiner between twisted matrix modules (window evidence)";
        return v;
    }
    v.answer = IsoAnswer::Undecided;
    v.reason = "undecided-at-window: mixed family comparison beyond window evidence";
    return v;
}

TensorElement apply_intertwiner(const TensorDescriptor& d1, const TensorDescriptor& d2,
                                const IsoVerdict& verdict, const TensorElement& x) {
    if (verdict.answer != IsoAnswer::Yes)
        throw std::invalid_argument("intertwiner exists only for YES verdicts");
    const std::size_t nvars = d1.nvars();
    NormalForm n1 = normal_form(d1), n2 = normal_form(d2);
    TensorElement out(d2.nvars());
    for (const auto& [key, c] : x.terms()) {
        Monomial m2(d2.nvars(), 0);
        for (std::size_t i = 0; i < nvars; ++i)
            m2[static_cast<std::size_t>(verdict.sigma.at(i))] = key.first[i];
        if (n1.pure) {
            out.add_term(m2, 0, c);  // v (x) f -> f on both sides
        } else if (verdict.has_matrix_map) {
            const ExactMatrix& phi = verdict.matrix_map;
            for (std::size_t p = 0; p < phi.rows(); ++p) {
                const Scalar& a = phi(p, static_cast<std::size_t>(key.second));
                if (a != 0) out.add_term(m2, static_cast<int>(p), c * a);
            }
        } else {
            // translation x^n -> (x + a)^n
            const Scalar& a = verdict.shift_offset;
            const int nn = key.second;
            for (int t = 0; t <= nn; ++t) {
                Scalar coeff = binomial(static_cast<unsigned>(nn), static_cast<unsigned>(t)) *
                               pow_int(a, nn - t);
                if (coeff != 0) out.add_term(m2, t, c * coeff);
            }
        }
    }
    return out;
}

Certificate iso_intertwiner_evidence(const TensorDescriptor& d1, const TensorDescriptor& d2,
                                     const IsoVerdict& verdict, int degree_cap, long k_bound) {
    if (verdict.answer != IsoAnswer::Yes)
        throw std::invalid_argument("intertwiner evidence needs a YES verdict");
    Certificate cert;
    cert.kind = "iso_intertwiner";
    cert.inputs = json{{"d1", descriptor_to_json(d1)},
                       {"d2", descriptor_to_json(d2)},
                       {"verdict", iso_verdict_to_json(verdict)},
                       {"degree_cap", degree_cap},
                       {"k_bound", k_bound}};
    cert.verdict = "pass";
    int vc = std::min(v_window(d1.v), v_window(d2.v));
    if (!v_is_one_dim(d1.v)) vc = std::max(1, vc - 1);  // slack for one L_k application
    std::size_t checks = 0;
    json failures = json::array();
    for (const TensorElement& x : window_basis(d1.nvars(), degree_cap, vc)) {
        TensorElement px = apply_intertwiner(d1, d2, verdict, x);
        for (long k = -k_bound; k <= k_bound; ++k) {
            ++checks;
            TensorElement lhs = apply_intertwiner(d1, d2, verdict, act_tensor(d1, k, x));
            TensorElement rhs = act_tensor(d2, k, px);
            if (!(lhs - rhs).is_zero()) {
                cert.verdict = "fail";
                cert.residual = "nonzero";
                failures.push_back(json{{"k", k}, {"elem", element_to_json(x)}});
            }
        }
    }
    cert.detail = json{{"checks", checks}, {"failures", failures}};
    cert.steps.push_back(CertStep{"intertwine_check", cert.inputs,
                                  json_hash(json{{"verdict", cert.verdict}, {"checks", checks}})});
    return cert;
}

json iso_verdict_to_json(const IsoVerdict& v) {
    json j;
    j["answer"] = v.answer == IsoAnswer::Yes ? "yes"
                : v.answer == IsoAnswer::No  ? "no"
                                             : "undecided";
    j["reason"] = v.reason;
    j["sigma"] = v.sigma;
    j["shift_offset"] = scalar_to_json(v.shift_offset);
    if (v.has_matrix_map) {
        json rows = json::array();
        for (std::size_t p = 0; p < v.matrix_map.rows(); ++p) {
            json row = json::array();
            for (std::size_t q = 0; q < v.matrix_map.cols(); ++q)
                row.push_back(scalar_to_json(v.matrix_map(p, q)));
            rows.push_back(std::move(row));
        }
        j["matrix_map"] = rows;
    }
    return j;
}

IsoVerdict iso_verdict_from_json(const json& j) {
    IsoVerdict v;
    const std::string a = j.at("answer").get<std::string>();
    v.answer = a == "yes" ? IsoAnswer::Yes : a == "no" ? IsoAnswer::No : IsoAnswer::Undecided;
    v.reason = j.value("reason", "");
    v.sigma = j.value("sigma", std::vector<int>{});
    if (j.contains("shift_offset")) v.shift_offset = scalar_from_json(j.at("shift_offset"));
    if (j.contains("matrix_map")) {
        const json& rows = j.at("matrix_map");
        ExactMatrix m(rows.size(), rows.empty() ? 0 : rows.at(0).size());
        for (std::size_t p = 0; p < m.rows(); ++p)
            for (std::size_t q = 0; q < m.cols(); ++q)
                m(p, q) = scalar_from_json(rows.at(p).at(q));
        v.matrix_map = std::move(m);
        v.has_matrix_map = true;
    }
    return v;
}

}  // namespace virmod
