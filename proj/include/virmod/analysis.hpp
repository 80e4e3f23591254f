#pragma once

#include <optional>

#include "virmod/certificate.hpp"
#include "virmod/expsolve.hpp"

namespace virmod {

// No strictly smaller component exists: the configuration is reducible or a
// precondition is violated.
struct ReductionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Submodule-closure result restricted to the degree window.
struct ClosureResult {
    SpanBasis<TermKey> span;
    std::size_t dimension = 0;
    bool actions_skipped = false;  // some L_k image left the V window
};

// Fixed point of span + act_tensor over |k| <= k_bound, keeping only
// elements of total degree <= degree_cap (results outside the window are
// discarded, so the span under-approximates the true submodule).
// with_extraction additionally closes under all separated components.
ClosureResult closure(const TensorDescriptor& d, const std::vector<TensorElement>& seeds,
                      int degree_cap, long k_bound, bool with_extraction = false);

// One step of the degree-descent argument: extracts the component of
// L_k(w) the proof prescribes and returns an element of the submodule
// generated by w with strictly smaller degree.
TensorElement reduce_degree(const TensorDescriptor& d, const TensorElement& w);

struct GenerationResult {
    std::size_t dimension = 0;
    std::size_t target_dimension = 0;
    bool full_window = false;
    SpanBasis<TermKey> span;
};

// Closure from a degree-0 start (with extraction), compared against the
// full window basis {v_i (x) monomial : i < v_check, total degree <= D}.
GenerationResult generate_from(const TensorDescriptor& d, const TensorElement& start,
                               int degree_cap, long k_bound, int v_check);

// Reduces each seed to degree 0, then checks generation of the full window.
Certificate witness_irreducible(const TensorDescriptor& d,
                                const std::vector<TensorElement>& seeds, int degree_cap,
                                long k_bound, int v_check);

enum class FiltrationSide { Left, Right };  // f(d0)(d0+d1)^n  vs  (d0+d1)^n f(d1)

struct FiltrationOptions {
    int s_max = 3;
    int n_max = 3;       // power cap on (d0+d1)^n for basis windows
    long k_bound = 5;
    int v_check = 0;     // 0: derive from the V window
};

// Verifies, for the equal-lambda two-factor module M(V,Omega(l,a0)) (x)
// Omega(l,a1): (a) each V (x) W_s window is act-closed, (b) the chain
// inclusion, (c) the quotient action matches act_m with parameter
// s + a0 + a1 exactly, on both spanning-family sides.
Certificate filtration_check(const VDescriptor& v, const Scalar& lambda, const Scalar& alpha0,
                             const Scalar& alpha1, const FiltrationOptions& opt);

// Produces and closure-verifies an explicit proper nonzero invariant
// subspace for a reducible configuration. Throws NotApplicable when the
// descriptor is standard with V not isomorphic to V_{alpha_0}.
Certificate exhibit_reducible(const TensorDescriptor& d, int degree_cap, long k_bound);

// Window basis {v_i (x) mono : i < v_check, total degree <= degree_cap}.
std::vector<TensorElement> window_basis(std::size_t nvars, int degree_cap, int v_check);

// All monomials in nvars variables of total degree <= cap, in order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int cap);

}  // namespace virmod
