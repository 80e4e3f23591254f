#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "virmod/matrix.hpp"
#include "virmod/tensor.hpp"

namespace virmod {

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The samples do not lie in the span of m -> mu_i^m m^j; the caller's
// structure guess is wrong.
struct InconsistentSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model g(m) = sum_{i=1..s} sum_{j=0..k} mu_i^m m^j v_{i,j} with unknown
// vectors v_{i,j} in the ambient space.
struct ExpPolyStructure {
    std::vector<Scalar> mus;  // pairwise distinct, nonzero
    int degree_bound = 0;     // k

    void validate() const;
    // 1..s(k+1): provably nonsingular (the model functions satisfy a linear
    // recurrence with characteristic polynomial prod (t - mu_i)^{k+1}, so
    // consecutive integers form a Casorati window).
    std::vector<long> default_window() const;
};

struct SampleSet {
    std::vector<long> window;                 // distinct integers m
    std::vector<std::vector<Scalar>> values;  // one ambient-space vector per m
};

// Recovered coefficient table, indexed [i][j] -> ambient-space vector.
using CoefficientTable = std::vector<std::vector<std::vector<Scalar>>>;

// Solves the generalized Vandermonde system [mu_i^m m^j] coordinate-by-
// coordinate. Exact; throws SingularSystem / InconsistentSamples.
CoefficientTable separate(const ExpPolyStructure& structure, const SampleSet& samples);

// All exponential-polynomial components of k -> L_k(elem) at once, keyed by
// (factor index i, power j). Each component lies in every submodule
// containing elem. Requires pairwise-distinct lambdas.
std::map<std::pair<std::size_t, int>, TensorElement> all_components(
    const TensorDescriptor& d, const TensorElement& elem);

// Same with an explicit sample window (any distinct integers, size >= s(k+1)).
std::map<std::pair<std::size_t, int>, TensorElement> all_components(
    const TensorDescriptor& d, const TensorElement& elem, const std::vector<long>& window);

// The single component selected by (which lambda factor, which power of k).
TensorElement extract_component(const TensorDescriptor& d, const TensorElement& elem,
                                std::size_t factor_index, int power);
TensorElement extract_component(const TensorDescriptor& d, const TensorElement& elem,
                                const std::vector<long>& window, std::size_t factor_index,
                                int power);

// The k-degree bound of the expansion of L_k(elem): max exponent + r + 1.
int component_degree_bound(const TensorDescriptor& d, const TensorElement& elem);

}  // namespace virmod
