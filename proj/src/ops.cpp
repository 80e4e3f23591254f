#include "virmod/certificate.hpp"

#include "virmod/analysis.hpp"
#include "virmod/classify.hpp"

namespace virmod {

namespace {

std::vector<TensorElement> elements_from_json(const json& arr) {
    std::vector<TensorElement> out;
    for (const json& e : arr) out.push_back(element_from_json(e));
    return out;
}

json elements_to_json(const std::vector<TensorElement>& v) {
    json arr = json::array();
    for (const auto& e : v) arr.push_back(element_to_json(e));
    return arr;
}

}  // namespace

json bracket_result_to_json(const BracketCertificate& c) {
    std::size_t failing = 0;
    for (const auto& p : c.probes)
        if (!p.pass) ++failing;
    return json{{"pass", c.pass}, {"probes", c.probes.size()}, {"failing", failing}};
}

json run_op(const std::string& op, const json& args) {
    if (op == "act_tensor") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        return element_to_json(
            act_tensor(d, args.at("k").get<long>(), element_from_json(args.at("elem"))));
    }
    if (op == "reduce_degree") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        return element_to_json(reduce_degree(d, element_from_json(args.at("elem"))));
    }
    if (op == "extract_component") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        TensorElement e = element_from_json(args.at("elem"));
        const std::size_t factor = args.at("factor").get<std::size_t>();
        const int power = args.at("power").get<int>();
        if (args.contains("window"))
            return element_to_json(extract_component(
                d, e, args.at("window").get<std::vector<long>>(), factor, power));
        return element_to_json(extract_component(d, e, factor, power));
    }
    if (op == "separate") {
        ExpPolyStructure st = structure_from_json(args.at("structure"));
        SampleSet samples = samples_from_json(args.at("samples"));
        CoefficientTable table = separate(st, samples);
        json out = json::array();
        for (const auto& per_mu : table) {
            json row = json::array();
            for (const auto& vec : per_mu) {
                json coords = json::array();
                for (const auto& x : vec) coords.push_back(scalar_to_json(x));
                row.push_back(std::move(coords));
            }
            out.push_back(std::move(row));
        }
        return json{{"table", out}};
    }
    if (op == "check_bracket") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        BracketCertificate c = check_bracket(d, args.at("m").get<long>(),
                                             args.at("n").get<long>(),
                                             elements_from_json(args.at("probes")));
        return bracket_result_to_json(c);
    }
    if (op == "closure") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        ClosureResult c = closure(d, elements_from_json(args.at("seeds")),
                                  args.at("degree_cap").get<int>(),
                                  args.at("k_bound").get<long>(),
                                  args.value("with_extraction", false));
        return json{{"dimension", c.dimension}, {"actions_skipped", c.actions_skipped}};
    }
    if (op == "generate_from") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        GenerationResult g = generate_from(d, element_from_json(args.at("start")),
                                           args.at("degree_cap").get<int>(),
                                           args.at("k_bound").get<long>(),
                                           args.at("v_check").get<int>());
        return json{{"dimension", g.dimension},
                    {"target_dimension", g.target_dimension},
                    {"full_window", g.full_window}};
    }
    if (op == "filtration_check") {
        FiltrationOptions opt;
        opt.s_max = args.at("s_max").get<int>();
        opt.n_max = args.at("n_max").get<int>();
        opt.k_bound = args.at("k_bound").get<long>();
        Certificate c = filtration_check(vdescriptor_from_json(args.at("v")),
                                         scalar_from_json(args.at("lambda")),
                                         scalar_from_json(args.at("alpha0")),
                                         scalar_from_json(args.at("alpha1")), opt);
        return json{{"verdict", c.verdict},
                    {"closure_checks", c.detail.at("closure_checks")},
                    {"chain_checks", c.detail.at("chain_checks")},
                    {"quotient_checks", c.detail.at("quotient_checks")}};
    }
    if (op == "exhibit_reducible") {
        TensorDescriptor d = descriptor_from_json(args.at("descriptor"));
        Certificate c = exhibit_reducible(d, args.at("degree_cap").get<int>(),
                                          args.at("k_bound").get<long>());
        return json{{"verdict", c.verdict},
                    {"configuration", c.detail.at("configuration")},
                    {"subspace_dimension", c.detail.at("subspace_dimension")},
                    {"window_dimension", c.detail.at("window_dimension")}};
    }
    if (op == "intertwine_check") {
        TensorDescriptor d1 = descriptor_from_json(args.at("d1"));
        TensorDescriptor d2 = descriptor_from_json(args.at("d2"));
        IsoVerdict v = iso_verdict_from_json(args.at("verdict"));
        Certificate c = iso_intertwiner_evidence(d1, d2, v, args.at("degree_cap").get<int>(),
                                                 args.at("k_bound").get<long>());
        return json{{"verdict", c.verdict}, {"checks", c.detail.at("checks")}};
    }
    if (op == "validate_v") {
        VValidation r = validate_vdescriptor(vdescriptor_from_json(args.at("v")));
        return json{{"brackets_ok", r.brackets_ok},
                    {"injectivity_checked", r.injectivity_checked},
                    {"injectivity_ok", r.injectivity_ok},
                    {"cyclic_dimension", r.cyclic_dimension},
                    {"window", r.window},
                    {"failures", r.failures}};
    }
    throw std::invalid_argument("unknown operation: " + op);
}

ReplayResult replay(const Certificate& cert) {
    ReplayResult res;
    for (const CertStep& step : cert.steps) {
        std::string hash;
        try {
            hash = json_hash(run_op(step.op, step.args));
        } catch (const std::exception& e) {
            res.ok = false;
            res.first_mismatch = "step '" + step.op + "' raised: " + e.what();
            return res;
        }
        ++res.steps_checked;
        if (hash != step.result_hash) {
            res.ok = false;
            res.first_mismatch = "step '" + step.op + "' hash mismatch (got " + hash +
                                 ", recorded " + step.result_hash + ")";
            return res;
        }
    }
    return res;
}

}  // namespace virmod
