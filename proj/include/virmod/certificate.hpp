#pragma once

#include <string>
#include <vector>

#include "virmod/json_io.hpp"

namespace virmod {

// Replayable record of one library operation: op name, full arguments,
// and the content hash of the recomputable result.
struct CertStep {
    std::string op;
    json args;
    std::string result_hash;
};

// A verifiable claim. Replaying the steps through the library must
// reproduce every hash; residuals are exactly zero on pass.
struct Certificate {
    std::string kind;
    json inputs;
    std::vector<CertStep> steps;
    std::string verdict;  // "pass" | "fail" | "undecided"
    std::string residual = "0";
    json detail;

    bool pass() const { return verdict == "pass"; }
    json to_json() const {
        json steps_json = json::array();
        for (const auto& s : steps)
            steps_json.push_back(json{{"op", s.op}, {"args", s.args}, {"result_hash", s.result_hash}});
        return json{{"kind", kind},     {"inputs", inputs},     {"steps", steps_json},
                    {"verdict", verdict}, {"residual", residual}, {"detail", detail}};
    }
    static Certificate from_json(const json& j) {
        Certificate c;
        c.kind = j.at("kind").get<std::string>();
        c.inputs = j.value("inputs", json::object());
        c.verdict = j.at("verdict").get<std::string>();
        c.residual = j.value("residual", "0");
        c.detail = j.value("detail", json::object());
        for (const json& s : j.at("steps"))
            c.steps.push_back(CertStep{s.at("op").get<std::string>(), s.at("args"),
                                       s.at("result_hash").get<std::string>()});
        return c;
    }
};

// Executes a named library operation on JSON arguments and returns the
// JSON result. The single dispatch point shared by certificate creation
// and replay, so recorded steps are recomputable by construction.
json run_op(const std::string& op, const json& args);

// Convenience: run, hash, record.
inline CertStep make_step(const std::string& op, const json& args) {
    return CertStep{op, args, json_hash(run_op(op, args))};
}

struct ReplayResult {
    bool ok = true;
    std::size_t steps_checked = 0;
    std::string first_mismatch;  // empty when ok
};

ReplayResult replay(const Certificate& cert);

}  // namespace virmod
