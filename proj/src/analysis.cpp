#include "virmod/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace virmod {

namespace {

using Vec = SpanBasis<TermKey>::Vec;

Vec elem_to_vec(const TensorElement& e) {
    Vec v;
    for (const auto& [k, c] : e.terms()) v.emplace(k, c);
    return v;
}

TensorElement vec_to_elem(const Vec& v, std::size_t nvars) {
    TensorElement e(nvars);
    for (const auto& [k, c] : v) e.add_term(k.first, k.second, c);
    return e;
}

int elem_total_degree(const TensorElement& e) {
    int d = 0;
    for (const auto& [k, c] : e.terms()) d = std::max(d, total_degree(k.first));
    return d;
}

bool is_zero_degree(const TensorElement& e) {
    return !e.is_zero() && total_degree(e.degree()) == 0;
}

// How much one action application can raise a V basis index.
int v_slack(const VDescriptor& v) {
    return std::holds_alternative<ShiftModule>(v) ? 1 : 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, int cap) {
    std::vector<Monomial> out;
    Monomial m(nvars, 0);
    // odometer over total degree
    std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
        if (var + 1 == nvars) {
            for (int e = 0; e <= left; ++e) {
                m[var] = e;
                out.push_back(m);
            }
            m[var] = 0;
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[var] = e;
            rec(var + 1, left - e);
        }
        m[var] = 0;
    };
    rec(0, cap);
    return out;
}

std::vector<TensorElement> window_basis(std::size_t nvars, int degree_cap, int v_check) {
    std::vector<TensorElement> out;
    for (int w = 0; w < v_check; ++w)
        for (const Monomial& mono : monomials_up_to(nvars, degree_cap)) {
            TensorElement e(nvars);
            e.add_term(mono, w, Scalar(1));
            out.push_back(std::move(e));
        }
    return out;
}

ClosureResult closure(const TensorDescriptor& d, const std::vector<TensorElement>& seeds,
                      int degree_cap, long k_bound, bool with_extraction) {
    ClosureResult res;
    std::deque<TensorElement> work;
    for (const auto& s : seeds) {
        if (s.is_zero() || elem_total_degree(s) > degree_cap) continue;
        if (res.span.insert(elem_to_vec(s))) work.push_back(s);
    }
    auto offer = [&](const TensorElement& e) {
        if (e.is_zero() || elem_total_degree(e) > degree_cap) return;
        if (res.span.insert(elem_to_vec(e))) work.push_back(e);
    };
    // separation needs pairwise-distinct lambdas
    bool can_extract = with_extraction;
    if (can_extract)
        for (std::size_t i = 0; i < d.nvars() && can_extract; ++i)
            for (std::size_t j = i + 1; j < d.nvars(); ++j)
                if (d.factor(i).lambda == d.factor(j).lambda) {
                    can_extract = false;
                    break;
                }
    while (!work.empty()) {
        TensorElement x = work.front();
        work.pop_front();
        for (long k = -k_bound; k <= k_bound; ++k) {
            try {
                offer(act_tensor(d, k, x));
            } catch (const WindowOverflow&) {
                res.actions_skipped = true;
            }
        }
        if (can_extract) {
            try {
                for (auto& [sel, comp] : all_components(d, x)) offer(comp);
            } catch (const WindowOverflow&) {
                res.actions_skipped = true;
            }
        }
    }
    res.dimension = res.span.dimension();
    return res;
}

TensorElement reduce_degree(const TensorDescriptor& d, const TensorElement& w) {
    if (w.is_zero()) throw ReductionFailure("cannot reduce the zero element");
    if (!d.standard())
        throw std::invalid_argument(
            "reduce_degree needs pairwise-distinct lambdas and nonzero alpha_i (i >= 1)");
    const Monomial q = w.degree();
    if (total_degree(q) == 0) throw ReductionFailure("element already has degree 0");
    std::size_t ip = 0;
    while (q[ip] == 0) ++ip;

    const int r = v_rank(d.v);
    const int power = (ip == 0) ? q[0] + r + 1 : q[ip] + 1;
    TensorElement wp = extract_component(d, w, ip, power);
    if (wp.is_zero())
        throw ReductionFailure("extracted component vanished; configuration is not reducible-safe");
    if (!(wp.degree() < q))
        throw ReductionFailure("extracted component does not lower the degree");
    return wp;
}

GenerationResult generate_from(const TensorDescriptor& d, const TensorElement& start,
                               int degree_cap, long k_bound, int v_check) {
    if (start.is_zero() || !is_zero_degree(start))
        throw std::invalid_argument("generate_from needs a nonzero degree-0 start");
    GenerationResult res;
    ClosureResult cl = closure(d, {start}, degree_cap, k_bound, /*with_extraction=*/true);
    res.span = std::move(cl.span);
    res.dimension = res.span.dimension();
    res.full_window = true;
    for (const TensorElement& b : window_basis(d.nvars(), degree_cap, v_check)) {
        ++res.target_dimension;
        if (!res.span.contains(elem_to_vec(b))) res.full_window = false;
    }
    return res;
}

Certificate witness_irreducible(const TensorDescriptor& d,
                                const std::vector<TensorElement>& seeds, int degree_cap,
                                long k_bound, int v_check) {
    Certificate cert;
    cert.kind = "irreducibility_witness";
    cert.inputs = json{{"descriptor", descriptor_to_json(d)},
                       {"degree_cap", degree_cap},
                       {"k_bound", k_bound},
                       {"v_check", v_check},
                       {"seed_count", seeds.size()}};
    cert.verdict = "pass";
    json chains = json::array();
    for (const TensorElement& seed : seeds) {
        json chain = json::array();
        TensorElement w = seed;
        bool ok = !w.is_zero();
        std::string error;
        try {
            while (ok && !is_zero_degree(w)) {
                TensorElement next = reduce_degree(d, w);
                cert.steps.push_back(CertStep{
                    "reduce_degree",
                    json{{"descriptor", descriptor_to_json(d)}, {"elem", element_to_json(w)}},
                    json_hash(element_to_json(next))});
                chain.push_back(element_to_json(next));
                w = next;
            }
            if (ok) {
                GenerationResult gen = generate_from(d, w, degree_cap, k_bound, v_check);
                json gen_args = json{{"descriptor", descriptor_to_json(d)},
                                     {"start", element_to_json(w)},
                                     {"degree_cap", degree_cap},
                                     {"k_bound", k_bound},
                                     {"v_check", v_check}};
                json gen_result = json{{"dimension", gen.dimension},
                                       {"target_dimension", gen.target_dimension},
                                       {"full_window", gen.full_window}};
                cert.steps.push_back(CertStep{"generate_from", gen_args, json_hash(gen_result)});
                ok = gen.full_window;
                if (!ok) error = "generation did not reach the full window basis";
            }
        } catch (const ReductionFailure& e) {
            ok = false;
            error = e.what();
        } catch (const WindowOverflow& e) {
            ok = false;
            error = std::string("window overflow: ") + e.what();
        }
        if (!ok) cert.verdict = "fail";
        chains.push_back(json{{"seed", element_to_json(seed)},
                              {"chain_length", chain.size()},
                              {"chain", chain},
                              {"ok", ok},
                              {"error", error}});
    }
    cert.detail = json{{"chains", chains}};
    return cert;
}

namespace {

// Basis polynomial d0^a (d0+d1)^n (Left) or (d0+d1)^n d1^a (Right).
MultiPoly ws_poly(FiltrationSide side, int a, int n) {
    MultiPoly u = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
    MultiPoly un = MultiPoly::constant(2, Scalar(1));
    for (int t = 0; t < n; ++t) un = un * u;
    MultiPoly x = MultiPoly::variable(2, side == FiltrationSide::Left ? 0 : 1);
    MultiPoly xa = MultiPoly::constant(2, Scalar(1));
    for (int t = 0; t < a; ++t) xa = xa * x;
    return xa * un;
}

TensorElement poly_times_v(const MultiPoly& p, int vidx) {
    TensorElement e(p.nvars());
    for (const auto& [m, c] : p.terms()) e.add_term(m, vidx, c);
    return e;
}

// Span of {v_i (x) x^a u^n : i < v_span, a <= s, n <= n_cap}.
SpanBasis<TermKey> ws_span(FiltrationSide side, int s, int n_cap, int v_span) {
    SpanBasis<TermKey> span;
    for (int i = 0; i < v_span; ++i)
        for (int a = 0; a <= s; ++a)
            for (int n = 0; n <= n_cap; ++n)
                span.insert(elem_to_vec(poly_times_v(ws_poly(side, a, n), i)));
    return span;
}

}  // namespace

Certificate filtration_check(const VDescriptor& v, const Scalar& lambda, const Scalar& alpha0,
                             const Scalar& alpha1, const FiltrationOptions& opt) {
    if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
    TensorDescriptor d{v, OmegaParams{lambda, alpha0}, {OmegaParams{lambda, alpha1}}};
    const int vwin = v_window(v);
    const int slack = v_slack(v);
    const int vc_in = (opt.v_check > 0) ? opt.v_check : std::max(1, vwin - slack);
    const int v_span = std::min(vwin, vc_in + slack);
    const int n_span = opt.n_max + opt.s_max + 2;  // generous membership window

    Certificate cert;
    cert.kind = "filtration";
    cert.inputs = json{{"v", vdescriptor_to_json(v)},
                       {"lambda", scalar_to_json(lambda)},
                       {"alpha0", scalar_to_json(alpha0)},
                       {"alpha1", scalar_to_json(alpha1)},
                       {"s_max", opt.s_max},
                       {"n_max", opt.n_max},
                       {"k_bound", opt.k_bound}};
    cert.verdict = "pass";
    json failures = json::array();
    auto fail = [&](const std::string& what) {
        cert.verdict = "fail";
        failures.push_back(what);
    };

    std::size_t closure_checks = 0, chain_checks = 0, quotient_checks = 0;
    for (FiltrationSide side : {FiltrationSide::Left, FiltrationSide::Right}) {
        const char* side_name = side == FiltrationSide::Left ? "left" : "right";
        for (int s = 0; s <= opt.s_max; ++s) {
            SpanBasis<TermKey> member = ws_span(side, s, n_span, v_span);

            // (a) act-closedness of the V (x) W_s window
            for (int i = 0; i < vc_in; ++i)
                for (int a = 0; a <= s; ++a)
                    for (int n = 0; n < opt.n_max; ++n) {
                        TensorElement x = poly_times_v(ws_poly(side, a, n), i);
                        for (long k = -opt.k_bound; k <= opt.k_bound; ++k) {
                            ++closure_checks;
                            TensorElement y = act_tensor(d, k, x);
                            if (!member.contains(elem_to_vec(y)))
                                fail(std::string("closure fails: side=") + side_name +
                                     " s=" + std::to_string(s) + " a=" + std::to_string(a) +
                                     " n=" + std::to_string(n) + " k=" + std::to_string(k));
                        }
                    }

            // (b) chain inclusion V (x) W_{s-1} subset V (x) W_s
            if (s >= 1)
                for (int i = 0; i < v_span; ++i)
                    for (int a = 0; a < s; ++a)
                        for (int n = 0; n <= opt.n_max; ++n) {
                            ++chain_checks;
                            if (!member.contains(elem_to_vec(poly_times_v(ws_poly(side, a, n), i))))
                                fail("chain inclusion fails at s=" + std::to_string(s));
                        }

            // (c) quotient action = act_m with parameter s + alpha0 + alpha1
            SpanBasis<TermKey> lower =
                s >= 1 ? ws_span(side, s - 1, n_span, v_span) : SpanBasis<TermKey>();
            const OmegaParams qparams{lambda, Scalar(s) + alpha0 + alpha1};
            for (int i = 0; i < vc_in; ++i)
                for (int n = 0; n < opt.n_max; ++n) {
                    TensorElement x = poly_times_v(ws_poly(side, s, n), i);
                    TensorElement x1(1);
                    Monomial mono1(1, n);
                    x1.add_term(mono1, i, Scalar(1));
                    for (long k = -opt.k_bound; k <= opt.k_bound; ++k) {
                        ++quotient_checks;
                        TensorElement actual = act_tensor(d, k, x);
                        TensorElement expected1d = act_m(v, qparams, k, x1);
                        // map t^q back to the coset representative
                        TensorElement expected(2);
                        for (const auto& [key, c] : expected1d.terms()) {
                            MultiPoly rep = ws_poly(side, s, key.first[0]);
                            for (const auto& [m, pc] : rep.terms())
                                expected.add_term(m, key.second, pc * c);
                        }
                        TensorElement residual = actual - expected;
                        bool ok = s >= 1 ? lower.contains(elem_to_vec(residual))
                                         : residual.is_zero();
                        if (!ok)
                            fail(std::string("quotient mismatch: side=") + side_name +
                                 " s=" + std::to_string(s) + " n=" + std::to_string(n) +
                                 " k=" + std::to_string(k));
                    }
                }
        }
    }

    cert.detail = json{{"closure_checks", closure_checks},
                       {"chain_checks", chain_checks},
                       {"quotient_checks", quotient_checks},
                       {"failures", failures}};
    json args = cert.inputs;
    cert.steps.push_back(CertStep{"filtration_check", args,
                                  json_hash(json{{"verdict", cert.verdict},
                                                 {"closure_checks", closure_checks},
                                                 {"chain_checks", chain_checks},
                                                 {"quotient_checks", quotient_checks}})});
    if (cert.verdict == "fail") cert.residual = "nonzero";
    return cert;
}

Certificate exhibit_reducible(const TensorDescriptor& d, int degree_cap, long k_bound) {
    d.validate_params();
    std::string config;
    // which monomials span the invariant subspace
    std::function<bool(const Monomial&)> keep;
    std::size_t var_i = 0, var_j = 0;

    if (v_is_one_dim(d.v) && std::get<OneDim>(d.v).beta == d.factor0.alpha) {
        config = "v_isomorphic_to_v_alpha0";  // normalization sends it to Omega(lambda_0, 0)
        keep = [](const Monomial& m) { return m[0] >= 1; };
    } else {
        for (std::size_t i = 1; i < d.nvars() && config.empty(); ++i)
            if (d.factor(i).alpha == 0) {
                config = "omega_factor_alpha_zero";
                var_i = i;
                keep = [i](const Monomial& m) { return m[i] >= 1; };
            }
        if (config.empty()) {
            for (std::size_t i = 0; i < d.nvars() && config.empty(); ++i)
                for (std::size_t j = i + 1; j < d.nvars(); ++j)
                    if (d.factor(i).lambda == d.factor(j).lambda) {
                        config = "equal_lambda_w0";
                        var_i = i;
                        var_j = j;
                        break;
                    }
        }
    }
    if (config.empty())
        throw NotApplicable("descriptor is standard and V is not V_{alpha_0}: no exhibit");

    const int vwin = v_window(d.v);
    const int vc_in = std::max(1, vwin - v_slack(d.v));
    const std::size_t nvars = d.nvars();

    // Spanning elements of the candidate invariant subspace up to a degree cap.
    auto build = [&](int cap, int v_span) {
        std::vector<TensorElement> out;
        if (config == "equal_lambda_w0") {
            // v (x) (di + dj)^n * (monomials in the other variables)
            MultiPoly u = MultiPoly::variable(nvars, var_i) + MultiPoly::variable(nvars, var_j);
            for (int w = 0; w < v_span; ++w)
                for (const Monomial& rest : monomials_up_to(nvars, cap)) {
                    if (rest[var_i] != 0 || rest[var_j] != 0) continue;
                    MultiPoly un = MultiPoly::constant(nvars, Scalar(1));
                    for (int n = 0; n + total_degree(rest) <= cap; ++n) {
                        MultiPoly p(nvars);
                        for (const auto& [m, c] : un.terms()) {
                            Monomial mm = m;
                            for (std::size_t v2 = 0; v2 < nvars; ++v2) mm[v2] += rest[v2];
                            p.add_term(mm, c);
                        }
                        out.push_back(poly_times_v(p, w));
                        un = un * u;
                    }
                }
        } else {
            for (int w = 0; w < v_span; ++w)
                for (const Monomial& m : monomials_up_to(nvars, cap)) {
                    if (!keep(m)) continue;
                    TensorElement e(nvars);
                    e.add_term(m, w, Scalar(1));
                    out.push_back(std::move(e));
                }
        }
        return out;
    };

    std::vector<TensorElement> inner = build(degree_cap, vc_in);
    SpanBasis<TermKey> member;
    for (const TensorElement& e : build(degree_cap + 1, vwin)) member.insert(elem_to_vec(e));

    Certificate cert;
    cert.kind = "reducibility_exhibit";
    cert.inputs = json{{"descriptor", descriptor_to_json(d)},
                       {"degree_cap", degree_cap},
                       {"k_bound", k_bound}};
    cert.verdict = "pass";
    json failures = json::array();
    std::size_t checks = 0;
    for (const TensorElement& x : inner)
        for (long k = -k_bound; k <= k_bound; ++k) {
            ++checks;
            TensorElement y = act_tensor(d, k, x);
            if (!member.contains(elem_to_vec(y))) {
                cert.verdict = "fail";
                cert.residual = "nonzero";
                failures.push_back(json{{"k", k}, {"elem", element_to_json(x)}});
            }
        }

    SpanBasis<TermKey> window_span;
    for (const TensorElement& e : build(degree_cap, vwin)) window_span.insert(elem_to_vec(e));
    const std::size_t sub_dim = window_span.dimension();
    const std::size_t full_dim = static_cast<std::size_t>(vwin) *
                                 monomials_up_to(nvars, degree_cap).size();
    const bool proper = sub_dim > 0 && sub_dim < full_dim;
    if (!proper) cert.verdict = "fail";

    cert.detail = json{{"configuration", config},
                       {"invariance_checks", checks},
                       {"subspace_dimension", sub_dim},
                       {"window_dimension", full_dim},
                       {"proper_nonzero", proper},
                       {"failures", failures}};
    cert.steps.push_back(
        CertStep{"exhibit_reducible", cert.inputs,
                 json_hash(json{{"verdict", cert.verdict},
                                {"configuration", config},
                                {"subspace_dimension", sub_dim},
                                {"window_dimension", full_dim}})});
    return cert;
}

}  // namespace virmod
