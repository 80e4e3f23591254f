#pragma once

#include "virmod/analysis.hpp"

namespace virmod {

// Case (b) for two opaque matrix modules can exceed window evidence.
struct UnsupportedComparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IrreducibilityVerdict {
    bool irreducible = false;
    std::string reason;  // the decisive condition
};

// Irreducible iff lambdas are pairwise distinct, alpha_i != 0 for i >= 1,
// and V is not the one-dimensional module V_{alpha_0}.
IrreducibilityVerdict decide_irreducible(const TensorDescriptor& d);

// Descriptor up to the one-dim normalization: a OneDim(beta) V collapses
// into the factor list with alpha_0 replaced by alpha_0 - beta.
struct NormalForm {
    bool pure = false;
    std::vector<OmegaParams> pure_factors;  // pure case, adjusted, position 0 first
    VDescriptor v;                          // with_V case
    Scalar lambda0, alpha0;
    std::vector<OmegaParams> rest;          // factors i >= 1
};

NormalForm normal_form(const TensorDescriptor& d);

enum class IsoAnswer { Yes, No, Undecided };

struct IsoVerdict {
    IsoAnswer answer = IsoAnswer::No;
    std::string reason;
    // factor permutation: sigma[i] = index in d2 matched to factor i of d1
    std::vector<int> sigma;
    // case (b) V-map data: translation offset for shift modules, or an
    // explicit window matrix for matrix modules
    Scalar shift_offset = 0;
    bool has_matrix_map = false;
    ExactMatrix matrix_map;
};

// The isomorphism decision for two irreducible descriptors. YES comes with
// a permutation witness (and a V-family map); matrix-module family
// comparisons that fail the window search are reported Undecided, never
// guessed.
IsoVerdict decide_iso(const TensorDescriptor& d1, const TensorDescriptor& d2);

// Materializes the window intertwiner the verdict implies and checks
// phi(L_k x) = L_k phi(x) exactly on a window basis.
Certificate iso_intertwiner_evidence(const TensorDescriptor& d1, const TensorDescriptor& d2,
                                     const IsoVerdict& verdict, int degree_cap, long k_bound);

// The intertwiner applied to one element (exposed for replay).
TensorElement apply_intertwiner(const TensorDescriptor& d1, const TensorDescriptor& d2,
                                const IsoVerdict& verdict, const TensorElement& x);

json iso_verdict_to_json(const IsoVerdict& v);
IsoVerdict iso_verdict_from_json(const json& j);

}  // namespace virmod
