#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virmod/sampling.hpp"
#include "virmod/tensor.hpp"

using namespace virmod;

namespace {

MultiPoly uni(std::initializer_list<std::pair<int, Scalar>> terms) {
    MultiPoly p(1);
    for (const auto& [e, c] : terms) p.add_term({e}, c);
    return p;
}

TensorElement elem1(std::initializer_list<std::pair<Monomial, Scalar>> terms, int vidx = 0) {
    TensorElement e(terms.begin()->first.size());
    for (const auto& [m, c] : terms) e.add_term(m, vidx, c);
    return e;
}

TensorDescriptor one_dim_descriptor(const Scalar& beta, const OmegaParams& f0,
                                    std::vector<OmegaParams> rest = {}) {
    return TensorDescriptor{OneDim{beta}, f0, std::move(rest)};
}

}  // namespace

TEST_CASE("act_omega tabulated values") {
    // (lambda=1, alpha=0, m=0, f=1) -> d
    CHECK(act_omega({Scalar(1), Scalar(0)}, 0, uni({{0, Scalar(1)}})) ==
          uni({{1, Scalar(1)}}));

    // (lambda=2, alpha=1, m=1, f=1) -> 2d - 2
    CHECK(act_omega({Scalar(2), Scalar(1)}, 1, uni({{0, Scalar(1)}})) ==
          uni({{1, Scalar(2)}, {0, Scalar(-2)}}));

    // (lambda=1, alpha=1, m=1, f=d) -> (d-1)^2
    CHECK(act_omega({Scalar(1), Scalar(1)}, 1, uni({{1, Scalar(1)}})) ==
          uni({{2, Scalar(1)}, {1, Scalar(-2)}, {0, Scalar(1)}}));
}

TEST_CASE("act_omega with negative m uses exact inverse powers") {
    // lambda=2, alpha=0, m=-1, f=1: 2^{-1} (d - (-1)*0) * f(d+1) = (1/2) d
    CHECK(act_omega({Scalar(2), Scalar(0)}, -1, uni({{0, Scalar(1)}})) ==
          uni({{1, Scalar(1, 2)}}));
}

TEST_CASE("act_m tabulated values") {
    // V_beta, beta=1, lambda=1, alpha=0, m=1, f=1 -> v (x) (d+1)
    TensorElement r = act_m(OneDim{Scalar(1)}, {Scalar(1), Scalar(0)}, 1,
                            TensorElement::vacuum(1));
    CHECK(r == elem1({{{1}, Scalar(1)}, {{0}, Scalar(1)}}));

    // any V, m=0, f=1 -> v (x) d
    TensorElement r0 = act_m(ShiftModule{Scalar(7), 8}, {Scalar(3), Scalar(2)}, 0,
                             TensorElement::vacuum(1));
    CHECK(r0 == elem1({{{1}, Scalar(1)}}));

    // ShiftModule(0), lambda=1, alpha=0, m=1, f=1, v=v0:
    // v0 (x) d + (Lb0 v0) (x) 1 + 1/2 (Lb1 v0) (x) 1 = v0 (x) d - v1 (x) 1 + 1/2 v0 (x) 1
    TensorElement rs = act_m(ShiftModule{Scalar(0), 8}, {Scalar(1), Scalar(0)}, 1,
                             TensorElement::vacuum(1));
    TensorElement expect(1);
    expect.add_term({1}, 0, Scalar(1));
    expect.add_term({0}, 1, Scalar(-1));
    expect.add_term({0}, 0, Scalar(1, 2));
    CHECK(rs == expect);
}

TEST_CASE("act_tensor tabulated values") {
    // m=0 on v (x) 1 with one extra factor: v (x) (d0 + d1)
    TensorDescriptor d = one_dim_descriptor(Scalar(1), {Scalar(1), Scalar(0)},
                                            {{Scalar(2), Scalar(1)}});
    TensorElement r0 = act_tensor(d, 0, TensorElement::vacuum(2));
    CHECK(r0 == elem1({{{1, 0}, Scalar(1)}, {{0, 1}, Scalar(1)}}));

    // k=1: v (x) (d0+1) (x) 1 + 2 v (x) 1 (x) (d1 - 1)
    TensorElement r1 = act_tensor(d, 1, TensorElement::vacuum(2));
    CHECK(r1 == elem1({{{1, 0}, Scalar(1)}, {{0, 1}, Scalar(2)}, {{0, 0}, Scalar(-1)}}));
}

TEST_CASE("act_tensor restricted to one factor agrees with act_m") {
    std::mt19937_64 rng(5);
    for (const VDescriptor& v :
         {VDescriptor{OneDim{Scalar(3, 2)}}, VDescriptor{ShiftModule{Scalar(-1), 10}}}) {
        TensorDescriptor d{v, {Scalar(3), Scalar(-2)}, {}};
        std::size_t v_bound = std::holds_alternative<OneDim>(v) ? 1 : 2;
        auto probes = random_elements(1, 5, 3, v_bound, rng());
        for (long k = -3; k <= 3; ++k)
            for (const auto& p : probes)
                CHECK(act_tensor(d, k, p) == act_m(v, d.factor0, k, p));
    }
}

TEST_CASE("action is linear") {
    TensorDescriptor d{ShiftModule{Scalar(2), 10},
                       {Scalar(2), Scalar(1)},
                       {{Scalar(3), Scalar(-1)}}};
    auto probes = random_elements(2, 6, 2, 4, 99);
    for (long k : {-3L, 0L, 2L}) {
        TensorElement sum = probes[0] + probes[1].scaled(Scalar(5, 3));
        TensorElement lhs = act_tensor(d, k, sum);
        TensorElement rhs = act_tensor(d, k, probes[0]) +
                            act_tensor(d, k, probes[1]).scaled(Scalar(5, 3));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("degree behavior of act_tensor") {
    // L_k(v (x) 1) has degree (1,0,...): the d0-raising term leads.
    TensorDescriptor d = one_dim_descriptor(Scalar(0), {Scalar(2), Scalar(1)},
                                            {{Scalar(3), Scalar(1)}, {Scalar(5), Scalar(1)}});
    for (long k : {-2L, 1L, 3L}) {
        TensorElement r = act_tensor(d, k, TensorElement::vacuum(3));
        CHECK(r.degree() == Monomial{1, 0, 0});
    }
    // and it never raises any exponent by more than one
    auto probes = random_elements(3, 5, 2, 1, 17);
    for (const auto& p : probes) {
        TensorElement r = act_tensor(d, 2, p);
        if (!r.is_zero()) CHECK(r.max_exponent() <= p.max_exponent() + 1);
    }
}

TEST_CASE("bracket tabulated case: Omega(1,1), m=1, n=-1") {
    TensorDescriptor d = one_dim_descriptor(Scalar(0), {Scalar(1), Scalar(1)});
    TensorElement one = TensorElement::vacuum(1);
    // L_1 L_-1 1 - L_-1 L_1 1 = (n - m) L_0 1 = -2 L_0 1
    TensorElement comm = act_tensor(d, 1, act_tensor(d, -1, one));
    comm -= act_tensor(d, -1, act_tensor(d, 1, one));
    CHECK(comm == act_tensor(d, 0, one).scaled(Scalar(-2)));
}

TEST_CASE("bracket tabulated case: M(Shift(0), Omega(1,1)), m=2, n=-1 on v (x) d") {
    TensorDescriptor d{ShiftModule{Scalar(0), 12}, {Scalar(1), Scalar(1)}, {}};
    TensorElement x(1);
    x.add_term({1}, 0, Scalar(1));
    // L_2 L_-1 - L_-1 L_2 = (n - m) L_1 = -3 L_1, i.e. the reversed-order
    // commutator equals 3 L_1 exactly.
    TensorElement comm = act_tensor(d, -1, act_tensor(d, 2, x)) -
                         act_tensor(d, 2, act_tensor(d, -1, x));
    CHECK(comm == act_tensor(d, 1, x).scaled(Scalar(3)));
}

TEST_CASE("check_bracket passes on valid modules and sees an invalid one") {
    TensorDescriptor d{ShiftModule{Scalar(1), 10},
                       {Scalar(2), Scalar(0)},
                       {{Scalar(3), Scalar(1)}}};
    auto probes = random_elements(2, 5, 2, 4, 1234);
    for (long m = -3; m <= 3; ++m)
        for (long n = m; n <= 3; ++n) {
            BracketCertificate c = check_bracket(d, m, n, probes);
            CHECK(c.pass);
            CHECK(c.probes.size() == probes.size());
        }

    // A broken V action must produce a nonzero residual somewhere.
    MatrixModule bad;
    bad.r = 1;
    bad.window = 4;
    bad.actions = {ExactMatrix(4, 4), ExactMatrix(4, 4)};
    bad.actions[1](0, 0) = 1;  // [L0, L1] = 0 != L1
    TensorDescriptor db{bad, {Scalar(2), Scalar(0)}, {}};
    bool found_failure = false;
    auto probes1 = random_elements(1, 5, 2, 3, 77);
    for (long m = -2; m <= 2 && !found_failure; ++m)
        for (long n = m; n <= 2 && !found_failure; ++n)
            if (!check_bracket(db, m, n, probes1).pass) found_failure = true;
    CHECK(found_failure);
}

TEST_CASE("central element acts as zero: m + n = 0 cases carry no extra term") {
    // The (m^3 - m)/12 central contribution is zero on every module here, so
    // [L_-m, L_m] = 2m L_0 exactly.
    TensorDescriptor d = one_dim_descriptor(Scalar(0), {Scalar(3), Scalar(2)});
    auto probes = random_elements(1, 4, 3, 1, 5150);
    for (long m : {1L, 2L, 3L, 5L})
        for (const auto& p : probes) {
            TensorElement comm = act_tensor(d, -m, act_tensor(d, m, p)) -
                                 act_tensor(d, m, act_tensor(d, -m, p));
            CHECK(comm == act_tensor(d, 0, p).scaled(Scalar(2 * m)));
        }
}

TEST_CASE("element degree and leading data") {
    TensorElement e(2);
    e.add_term({1, 2}, 0, Scalar(1));
    e.add_term({2, 0}, 1, Scalar(3));
    e.add_term({2, 0}, 0, Scalar(-1));
    CHECK(e.degree() == Monomial{2, 0});
    VVec lead = e.leading_vvec();
    CHECK(lead.size() == 2);
    CHECK(lead.at(1) == 3);
    CHECK(e.max_exponent() == 2);
    e.add_term({2, 0}, 1, Scalar(-3));
    e.add_term({2, 0}, 0, Scalar(1));
    CHECK(e.degree() == Monomial{1, 2});  // cancellation reveals the next term
}
