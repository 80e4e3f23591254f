#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "virmod/matrix.hpp"
#include "virmod/scalar.hpp"

namespace virmod {

// Raised when an operator image escapes the validated basis window.
// Callers enlarge the window and retry; results are never truncated.
struct WindowOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The one-dimensional module V_beta: Lb_0 v = beta v, Lb_i v = 0 for i >= 1.
struct OneDim {
    Scalar beta;
};

// Polynomials in x, basis v_n = x^n for n < window.
// Lb_0 = c - (multiplication by x), Lb_1 = f(x) -> f(x+1), Lb_i = 0 for i >= 2.
struct ShiftModule {
    Scalar c;
    int window = 8;
};

// User-supplied window matrices for Lb_0..Lb_r on basis v_0..v_{window-1}.
// actions[i] is window x window; entry (row, col) is the v_row coefficient
// of Lb_i v_col. Validity is window evidence only.
struct MatrixModule {
    int r = 1;
    int window = 4;
    std::vector<ExactMatrix> actions;  // size r+1
};

using VDescriptor = std::variant<OneDim, ShiftModule, MatrixModule>;

inline int v_rank(const VDescriptor& v) {
    if (std::holds_alternative<OneDim>(v)) return 0;
    if (std::holds_alternative<ShiftModule>(v)) return 1;
    return std::get<MatrixModule>(v).r;
}

inline int v_window(const VDescriptor& v) {
    if (std::holds_alternative<OneDim>(v)) return 1;
    if (std::holds_alternative<ShiftModule>(v)) return std::get<ShiftModule>(v).window;
    return std::get<MatrixModule>(v).window;
}

inline bool v_is_one_dim(const VDescriptor& v) { return std::holds_alternative<OneDim>(v); }

// Sparse V vector: basis index -> coefficient.
using VVec = std::map<int, Scalar>;

// Lb_i applied to basis vector v_idx. Throws WindowOverflow when the image
// has a component outside the window.
VVec apply_vop(const VDescriptor& v, int i, int idx);

// Lb_i applied to a sparse V vector.
VVec apply_vop(const VDescriptor& v, int i, const VVec& vec);

// Same underlying space and Lb_i for i >= 1; Lb_0 shifted by alpha * id.
VDescriptor twist(const VDescriptor& v, const Scalar& alpha);

struct VValidation {
    bool brackets_ok = false;
    bool injectivity_ok = false;      // Lb_r full column rank on the window
    bool injectivity_checked = false; // skipped for OneDim
    int cyclic_dimension = 0;         // dim of the in-window closure of v_0
    int window = 0;
    std::vector<std::string> failures;
    bool pass() const { return brackets_ok && (!injectivity_checked || injectivity_ok); }
};

// Checks the defining relations [Lb_i, Lb_j] = (j-i) Lb_{i+j} on the window,
// Lb_r injectivity (window column rank), and the in-window cyclic closure
// of v_0. Failures are reported, never thrown.
VValidation validate_vdescriptor(const VDescriptor& v);

}  // namespace virmod
