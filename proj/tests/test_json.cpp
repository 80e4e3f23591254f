#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "virmod/analysis.hpp"
#include "virmod/certificate.hpp"
#include "virmod/classify.hpp"
#include "virmod/sampling.hpp"

using namespace virmod;

namespace {

json load_schema(const std::string& name) {
    for (const std::string& prefix : {"docs/", "../docs/", "../../docs/"}) {
        std::ifstream in(prefix + name);
        if (in) {
            json j;
            in >> j;
            return j;
        }
    }
    throw std::runtime_error("schema not found: " + name);
}

TensorDescriptor sample_descriptor() {
    return TensorDescriptor{ShiftModule{Scalar(1, 2), 9},
                            {Scalar(2), Scalar(-3, 4)},
                            {{Scalar(3), Scalar(1)}, {Scalar(-5), Scalar(7, 2)}}};
}

}  // namespace

TEST_CASE("scalar JSON: strings preserve exactness") {
    Scalar s(-22, 7);
    json j = scalar_to_json(s);
    CHECK(j.is_string());
    CHECK(scalar_from_json(j) == s);
    CHECK(scalar_from_json(json("123456789123456789/987654321987654321")) ==
          Scalar(Integer("123456789123456789"), Integer("987654321987654321")));
    CHECK_THROWS_AS(scalar_from_json(json("x")), std::invalid_argument);
}

TEST_CASE("descriptor round-trip, all V kinds") {
    TensorDescriptor d = sample_descriptor();
    TensorDescriptor d2 = descriptor_from_json(descriptor_to_json(d));
    CHECK(std::get<ShiftModule>(d2.v).c == Scalar(1, 2));
    CHECK(std::get<ShiftModule>(d2.v).window == 9);
    CHECK(d2.factor0.lambda == 2);
    REQUIRE(d2.factors.size() == 2);
    CHECK(d2.factors[1].alpha == Scalar(7, 2));

    TensorDescriptor od{OneDim{Scalar(-1, 3)}, {Scalar(1), Scalar(0)}, {}};
    CHECK(std::get<OneDim>(descriptor_from_json(descriptor_to_json(od)).v).beta == Scalar(-1, 3));

    MatrixModule m;
    m.r = 1;
    m.window = 2;
    m.actions = {ExactMatrix::identity(2), ExactMatrix(2, 2)};
    m.actions[1](1, 0) = Scalar(5, 3);
    TensorDescriptor md{m, {Scalar(2), Scalar(1)}, {}};
    MatrixModule m2 = std::get<MatrixModule>(descriptor_from_json(descriptor_to_json(md)).v);
    CHECK(m2.actions[1](1, 0) == Scalar(5, 3));
    CHECK(m2.actions[0] == ExactMatrix::identity(2));
}

TEST_CASE("element round-trip preserves every term") {
    auto elems = random_elements(3, 5, 3, 4, 2024);
    for (const auto& e : elems) {
        TensorElement back = element_from_json(element_to_json(e));
        CHECK(back == e);
    }
    TensorElement z(2);
    CHECK(element_from_json(element_to_json(z)).is_zero());
}

TEST_CASE("structure and samples round-trip") {
    ExpPolyStructure st{{Scalar(2), Scalar(-1, 2)}, 3};
    ExpPolyStructure st2 = structure_from_json(structure_to_json(st));
    CHECK(st2.mus == st.mus);
    CHECK(st2.degree_bound == 3);

    SampleSet s{{-1, 0, 4}, {{Scalar(1)}, {Scalar(2)}, {Scalar(3, 7)}}};
    SampleSet s2 = samples_from_json(samples_to_json(s));
    CHECK(s2.window == s.window);
    CHECK(s2.values == s.values);
}

TEST_CASE("json_hash is stable and order-insensitive") {
    json a = {{"x", 1}, {"y", "z"}};
    json b;
    b["y"] = "z";
    b["x"] = 1;
    CHECK(json_hash(a) == json_hash(b));
    CHECK(json_hash(a) != json_hash(json{{"x", 2}, {"y", "z"}}));
    CHECK(json_hash(a).size() == 16);  // fixed-width hex
}

TEST_CASE("descriptor schema accepts valid and rejects malformed input") {
    json schema = load_schema("descriptor.schema.json");
    json good = descriptor_to_json(sample_descriptor());
    CHECK(validate_against_schema(good, schema).empty());

    json missing = good;
    missing.erase("factor0");
    CHECK_FALSE(validate_against_schema(missing, schema).empty());

    json bad_kind = good;
    bad_kind["v"]["kind"] = "nonsense";
    CHECK_FALSE(validate_against_schema(bad_kind, schema).empty());

    json bad_type = good;
    bad_type["factors"] = 7;
    CHECK_FALSE(validate_against_schema(bad_type, schema).empty());
}

TEST_CASE("certificate schema accepts produced certificates") {
    json schema = load_schema("certificate.schema.json");
    TensorDescriptor d{ShiftModule{Scalar(0), 10}, {Scalar(2), Scalar(0)}, {{Scalar(3), Scalar(1)}}};
    Certificate cert = witness_irreducible(d, random_elements(2, 2, 1, 2, 7), 1, 3, 3);
    CHECK(validate_against_schema(cert.to_json(), schema).empty());

    json tampered = cert.to_json();
    tampered["verdict"] = "maybe";
    CHECK_FALSE(validate_against_schema(tampered, schema).empty());
}

TEST_CASE("certificate JSON round-trip and replay") {
    TensorDescriptor d{OneDim{Scalar(0)}, {Scalar(2), Scalar(1)}, {{Scalar(3), Scalar(1)}}};
    Certificate cert = witness_irreducible(d, {TensorElement::vacuum(2)}, 2, 3, 1);
    CHECK(cert.pass());
    Certificate back = Certificate::from_json(cert.to_json());
    CHECK(back.kind == cert.kind);
    CHECK(back.steps.size() == cert.steps.size());
    ReplayResult r = replay(back);
    CHECK(r.ok);
    CHECK(r.steps_checked == cert.steps.size());
}

TEST_CASE("replay detects tampered results") {
    TensorDescriptor d{OneDim{Scalar(0)}, {Scalar(2), Scalar(1)}, {}};
    Certificate cert;
    cert.kind = "probe";
    cert.verdict = "pass";
    json args = {{"descriptor", descriptor_to_json(d)},
                 {"k", 1},
                 {"elem", element_to_json(TensorElement::vacuum(1))}};
    cert.steps.push_back(make_step("act_tensor", args));
    CHECK(replay(cert).ok);

    Certificate bad = cert;
    bad.steps[0].result_hash = "0000000000000000";
    ReplayResult r = replay(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.first_mismatch.find("act_tensor") != std::string::npos);

    Certificate bad2 = cert;
    bad2.steps[0].args["k"] = 2;  // different computation, different hash
    CHECK_FALSE(replay(bad2).ok);

    Certificate bad3 = cert;
    bad3.steps[0].op = "no_such_op";
    ReplayResult r3 = replay(bad3);
    CHECK_FALSE(r3.ok);
    CHECK(r3.first_mismatch.find("raised") != std::string::npos);
}

TEST_CASE("run_op covers the recorded operations") {
    TensorDescriptor d{OneDim{Scalar(0)}, {Scalar(2), Scalar(1)}, {{Scalar(3), Scalar(1)}}};
    json dj = descriptor_to_json(d);
    json vac = element_to_json(TensorElement::vacuum(2));

    json r1 = run_op("act_tensor", {{"descriptor", dj}, {"k", 1}, {"elem", vac}});
    CHECK(element_from_json(r1) == act_tensor(d, 1, TensorElement::vacuum(2)));

    json r2 = run_op("extract_component",
                     {{"descriptor", dj}, {"elem", vac}, {"factor", 1}, {"power", 1}});
    CHECK(element_from_json(r2) ==
          extract_component(d, TensorElement::vacuum(2), 1, 1));

    json probes = json::array({vac});
    json r3 = run_op("check_bracket", {{"descriptor", dj}, {"m", 1}, {"n", -2}, {"probes", probes}});
    CHECK(r3.at("pass").get<bool>());

    json r4 = run_op("validate_v", {{"v", vdescriptor_to_json(ShiftModule{Scalar(0), 6})}});
    CHECK(r4.at("brackets_ok").get<bool>());

    CHECK_THROWS_AS(run_op("bogus", json::object()), std::invalid_argument);
}

TEST_CASE("malformed descriptors point at the offending field") {
    json good = descriptor_to_json(sample_descriptor());

    json bad = good;
    bad["factor0"]["lambda"] = "not-a-number";
    CHECK_THROWS_AS(descriptor_from_json(bad), std::invalid_argument);

    json bad2 = good;
    bad2["v"]["kind"] = "unknown";
    CHECK_THROWS_WITH_AS(descriptor_from_json(bad2),
                         doctest::Contains("kind"), std::invalid_argument);
}
