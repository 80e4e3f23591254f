#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virmod/vmodule.hpp"

using namespace virmod;

namespace {

// Bracket-exact finite window model of the L-bar subalgebra generated by
// L0, L1: A0 = diag(d, d+1, ..., d+w-1), A1 = lower shift (last column 0).
MatrixModule diag_shift_module(const Scalar& d, int w) {
    MatrixModule m;
    m.r = 1;
    m.window = w;
    ExactMatrix a0(static_cast<std::size_t>(w), static_cast<std::size_t>(w));
    ExactMatrix a1(static_cast<std::size_t>(w), static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
        a0(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = d + i;
        if (i + 1 < w) a1(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = 1;
    }
    m.actions = {a0, a1};
    return m;
}

}  // namespace

TEST_CASE("OneDim: brackets hold, rank check skipped") {
    VValidation r = validate_vdescriptor(OneDim{Scalar(5)});
    CHECK(r.brackets_ok);
    CHECK_FALSE(r.injectivity_checked);
    CHECK(r.pass());
    CHECK(v_rank(VDescriptor{OneDim{Scalar(5)}}) == 0);
}

TEST_CASE("ShiftModule: bracket relation verified on the whole window") {
    ShiftModule sm{Scalar(3), 8};
    VValidation r = validate_vdescriptor(sm);
    CHECK(r.brackets_ok);
    CHECK(r.injectivity_checked);
    CHECK(r.injectivity_ok);
    CHECK(r.cyclic_dimension == 8);
    CHECK(r.pass());

    // [L0, L1] x^n = L1 x^n, checked by hand for one basis vector:
    // L0 = c - x, L1 f(x) = f(x+1).
    VDescriptor v{sm};
    VVec x2{{2, Scalar(1)}};
    VVec l1 = apply_vop(v, 1, x2);            // (x+1)^2
    VVec l0l1 = apply_vop(v, 0, l1);
    VVec l1l0 = apply_vop(v, 1, apply_vop(v, 0, x2));
    VVec comm;
    for (const auto& [k, c] : l0l1) comm[k] += c;
    for (const auto& [k, c] : l1l0) comm[k] -= c;
    for (auto it = comm.begin(); it != comm.end();)
        it = (it->second == 0) ? comm.erase(it) : std::next(it);
    CHECK(comm == l1);
}

TEST_CASE("ShiftModule overflow is an exception, not truncation") {
    ShiftModule sm{Scalar(0), 4};
    VDescriptor v{sm};
    CHECK_THROWS_AS(apply_vop(v, 0, 3), WindowOverflow);  // -x * x^3 escapes
    CHECK_NOTHROW(apply_vop(v, 1, 3));                    // translation stays
}

TEST_CASE("MatrixModule with zero top action fails injectivity") {
    MatrixModule m;
    m.r = 1;
    m.window = 3;
    m.actions = {ExactMatrix(3, 3), ExactMatrix(3, 3)};  // L1 = 0, [L0,L1]=L1 holds
    VValidation r = validate_vdescriptor(m);
    CHECK(r.brackets_ok);
    CHECK(r.injectivity_checked);
    CHECK_FALSE(r.injectivity_ok);
    CHECK_FALSE(r.pass());
}

TEST_CASE("diag/shift matrix module is bracket-exact") {
    VValidation r = validate_vdescriptor(diag_shift_module(Scalar(2), 5));
    CHECK(r.brackets_ok);
    // truncated lower shift kills the top basis vector
    CHECK_FALSE(r.injectivity_ok);
}

TEST_CASE("bad matrix brackets are reported") {
    MatrixModule m = diag_shift_module(Scalar(0), 4);
    m.actions[0](0, 0) = Scalar(99);  // breaks [L0, L1] = L1
    VValidation r = validate_vdescriptor(m);
    CHECK_FALSE(r.brackets_ok);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.failures.empty());
}

TEST_CASE("twist: zero shift, additivity, shift-module parameter") {
    VDescriptor v{ShiftModule{Scalar(1), 8}};
    VDescriptor t0 = twist(v, Scalar(0));
    CHECK(std::get<ShiftModule>(t0).c == 1);

    VDescriptor t2 = twist(v, Scalar(2));
    CHECK(std::get<ShiftModule>(t2).c == 3);  // (c - x) + a = (c + a) - x

    VDescriptor tab = twist(twist(v, Scalar(3)), Scalar(-5));
    VDescriptor tsum = twist(v, Scalar(-2));
    CHECK(std::get<ShiftModule>(tab).c == std::get<ShiftModule>(tsum).c);

    VDescriptor o = twist(VDescriptor{OneDim{Scalar(4)}}, Scalar(3, 2));
    CHECK(std::get<OneDim>(o).beta == Scalar(11, 2));

    MatrixModule mm = diag_shift_module(Scalar(0), 3);
    VDescriptor tm = twist(VDescriptor{mm}, Scalar(7));
    CHECK(std::get<MatrixModule>(tm).actions[0](1, 1) == 8);
    CHECK(std::get<MatrixModule>(tm).actions[1] == mm.actions[1]);
}

TEST_CASE("twist preserves bracket validity") {
    for (const VDescriptor& v :
         {VDescriptor{ShiftModule{Scalar(-2), 6}}, VDescriptor{diag_shift_module(Scalar(1), 4)}}) {
        VDescriptor t = twist(v, Scalar(5, 3));
        CHECK(validate_vdescriptor(t).brackets_ok);
    }
}

TEST_CASE("shift module cyclicity from the bottom vector") {
    VValidation r = validate_vdescriptor(ShiftModule{Scalar(0), 6});
    CHECK(r.cyclic_dimension == 6);  // L0 ladders x^n -> x^{n+1}
}
