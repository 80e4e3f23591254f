#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "virmod/poly.hpp"
#include "virmod/vmodule.hpp"

namespace virmod {

// One tensor factor Omega(lambda, alpha) = C[d] with
//   L_m f(d) = lambda^m (d - m*alpha) f(d - m),  C f(d) = 0.
struct OmegaParams {
    Scalar lambda;  // must be nonzero
    Scalar alpha;
};

// The module M(V, Omega(lambda_0, alpha_0)) (x) Omega(lambda_1, alpha_1) (x) ...
// identified with V (x) C[d0, ..., dm].
struct TensorDescriptor {
    VDescriptor v;
    OmegaParams factor0;
    std::vector<OmegaParams> factors;  // i = 1..m

    std::size_t nvars() const { return factors.size() + 1; }
    const OmegaParams& factor(std::size_t i) const {
        return i == 0 ? factor0 : factors.at(i - 1);
    }
    // All lambda pairwise distinct and alpha_i != 0 for i >= 1.
    bool standard() const;
    void validate_params() const;  // throws std::invalid_argument on lambda = 0
};

// Coordinate key (monomial, V basis index). The map order puts the
// lexicographically maximal monomial last, so degree() is rbegin().
using TermKey = std::pair<Monomial, int>;

// Finite sum of (V basis index) (x) monomial with Scalar coefficients.
class TensorElement {
public:
    TensorElement() : nvars_(1) {}
    explicit TensorElement(std::size_t nvars) : nvars_(nvars) {}

    static TensorElement vacuum(std::size_t nvars) {  // v_0 (x) 1
        TensorElement e(nvars);
        e.add_term(Monomial(nvars, 0), 0, Scalar(1));
        return e;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<TermKey, Scalar>& terms() const { return terms_; }

    void add_term(const Monomial& m, int vidx, const Scalar& c);

    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    TensorElement scaled(const Scalar& c) const;
    bool operator==(const TensorElement& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    // The lexicographically maximal exponent vector among the terms.
    const Monomial& degree() const;
    // All terms carrying the maximal monomial, as a V vector.
    VVec leading_vvec() const;
    int max_exponent() const;  // max single-variable exponent over all terms

    std::string str() const;

private:
    std::size_t nvars_;
    std::map<TermKey, Scalar> terms_;
};

// L_m on a univariate polynomial in the Omega(lambda, alpha) module.
MultiPoly act_omega(const OmegaParams& p, long m, const MultiPoly& f);

// L_k on the full tensor module (Leibniz across factors; factor 0 carries
// the Lb_i correction terms). Throws WindowOverflow from the V action.
TensorElement act_tensor(const TensorDescriptor& d, long k, const TensorElement& elem);

// L_m on M(V, Omega(lambda, alpha)) alone (one variable).
TensorElement act_m(const VDescriptor& v, const OmegaParams& p, long m,
                    const TensorElement& elem);

struct BracketProbeResult {
    bool pass = false;
    TensorElement residual;
};

struct BracketCertificate {
    long m = 0, n = 0;
    bool pass = false;
    std::vector<BracketProbeResult> probes;
};

// Checks L_m(L_n x) - L_n(L_m x) = (n - m) L_{m+n} x exactly on every probe.
// The central term vanishes because C acts as zero on everything in scope.
BracketCertificate check_bracket(const TensorDescriptor& d, long m, long n,
                                 const std::vector<TensorElement>& probes);

}  // namespace virmod
