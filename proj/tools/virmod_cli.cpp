// Command-line front end: descriptor files in, certificate JSON out.
// Exit codes: 0 pass, 1 verified failure, 2 usage error / overflow / undecided.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "virmod/analysis.hpp"
#include "virmod/certificate.hpp"
#include "virmod/classify.hpp"
#include "virmod/sampling.hpp"

namespace {

using namespace virmod;
namespace fs = std::filesystem;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

// Reports land in --out, or $VIRMOD_REPORT_DIR/<name> when --out is empty.
std::string resolve_out(const std::string& out, const std::string& default_name) {
    if (!out.empty()) return out;
    const char* dir = std::getenv("VIRMOD_REPORT_DIR");
    return (fs::path(dir ? dir : ".") / default_name).string();
}

// Atomic write: temp file in the target directory, then rename.
void write_report(const std::string& path, const json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp, path);
    std::cout << "report: " << path << "\n";
}

TensorDescriptor load_descriptor(const std::string& path) {
    return descriptor_from_json(read_json(path));
}

VDescriptor load_vdescriptor(const std::string& path) {
    json j = read_json(path);
    if (j.contains("v")) return vdescriptor_from_json(j.at("v"));
    return vdescriptor_from_json(j);
}

int verdict_exit(const Certificate& c) { return c.pass() ? 0 : 1; }

int slack_of(const VDescriptor& v, int applications) {
    return std::holds_alternative<ShiftModule>(v) ? applications : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic Virasoro tensor-module toolkit"};
    app.require_subcommand(1);

    std::string descriptor_path, descriptor2_path, input_path, out_path;
    int degree_cap = 3, s_max = 3, n_max = 3, seeds = 10, probes = 10, max_exp = 2, v_check = 0;
    long k_bound = 5, m_max = 6;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "report file (default: $VIRMOD_REPORT_DIR)");
    };

    auto* cmd_validate = app.add_subcommand("validate-v", "validate a V descriptor");
    cmd_validate->add_option("--descriptor", descriptor_path)->required();
    add_common(cmd_validate);

    auto* cmd_bracket = app.add_subcommand("check-bracket", "verify the bracket axiom");
    cmd_bracket->add_option("--descriptor", descriptor_path)->required();
    cmd_bracket->add_option("--mmax", m_max, "check all |m|,|n| <= mmax");
    cmd_bracket->add_option("--probes", probes);
    cmd_bracket->add_option("--maxexp", max_exp, "probe exponent bound");
    cmd_bracket->add_option("--seed", seed);
    add_common(cmd_bracket);

    auto* cmd_separate = app.add_subcommand("separate", "solve one separation instance");
    cmd_separate->add_option("--input", input_path, "JSON with structure and samples")->required();
    add_common(cmd_separate);

    auto* cmd_witness = app.add_subcommand("witness", "irreducibility witness chains");
    cmd_witness->add_option("--descriptor", descriptor_path)->required();
    cmd_witness->add_option("--window", degree_cap, "degree window D");
    cmd_witness->add_option("--seeds", seeds);
    cmd_witness->add_option("--maxexp", max_exp, "seed exponent bound");
    cmd_witness->add_option("--kbound", k_bound);
    cmd_witness->add_option("--vcheck", v_check, "V window portion to generate (0: auto)");
    cmd_witness->add_option("--seed", seed);
    add_common(cmd_witness);

    auto* cmd_generate = app.add_subcommand("generate", "generation from v (x) 1");
    cmd_generate->add_option("--descriptor", descriptor_path)->required();
    cmd_generate->add_option("--window", degree_cap);
    cmd_generate->add_option("--kbound", k_bound);
    cmd_generate->add_option("--vcheck", v_check);
    add_common(cmd_generate);

    auto* cmd_filtration = app.add_subcommand("filtration", "equal-lambda W_s filtration checks");
    cmd_filtration->add_option("--descriptor", descriptor_path,
                               "two-factor descriptor with lambda_0 = lambda_1")->required();
    cmd_filtration->add_option("--smax", s_max);
    cmd_filtration->add_option("--nmax", n_max);
    cmd_filtration->add_option("--kbound", k_bound);
    add_common(cmd_filtration);

    auto* cmd_exhibit = app.add_subcommand("exhibit", "explicit invariant subspace");
    cmd_exhibit->add_option("--descriptor", descriptor_path)->required();
    cmd_exhibit->add_option("--window", degree_cap);
    cmd_exhibit->add_option("--kbound", k_bound);
    add_common(cmd_exhibit);

    auto* cmd_classify = app.add_subcommand("classify", "isomorphism decision for two descriptors");
    cmd_classify->add_option("first", descriptor_path)->required();
    cmd_classify->add_option("second", descriptor2_path)->required();
    cmd_classify->add_option("--window", degree_cap);
    cmd_classify->add_option("--kbound", k_bound);
    add_common(cmd_classify);

    auto* cmd_replay = app.add_subcommand("replay", "recompute a certificate's steps");
    cmd_replay->add_option("certificate", input_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            VDescriptor v = load_vdescriptor(descriptor_path);
            Certificate cert;
            cert.kind = "v_validation";
            cert.inputs = json{{"v", vdescriptor_to_json(v)}};
            CertStep step = make_step("validate_v", cert.inputs);
            json result = run_op("validate_v", cert.inputs);
            cert.steps.push_back(step);
            VValidation r = validate_vdescriptor(v);
            cert.verdict = r.pass() ? "pass" : "fail";
            cert.detail = result;
            write_report(resolve_out(out_path, "v_validation.json"), cert.to_json());
            std::cout << (r.pass() ? "PASS" : "FAIL") << " brackets=" << r.brackets_ok
                      << " injective=" << (r.injectivity_checked ? (r.injectivity_ok ? "yes" : "NO") : "n/a")
                      << " cyclic_dim=" << r.cyclic_dimension << "/" << r.window << "\n";
            return verdict_exit(cert);
        }

        if (cmd_bracket->parsed()) {
            TensorDescriptor d = load_descriptor(descriptor_path);
            const int vb = std::max(1, v_window(d.v) - slack_of(d.v, 2));
            auto probe_set = random_elements(d.nvars(), probes, max_exp, vb, seed);
            Certificate cert;
            cert.kind = "bracket_axiom";
            cert.inputs = json{{"descriptor", descriptor_to_json(d)},
                               {"m_max", m_max},
                               {"probes", probes},
                               {"seed", seed}};
            cert.verdict = "pass";
            json probes_json = json::array();
            for (const auto& p : probe_set) probes_json.push_back(element_to_json(p));
            for (long m = -m_max; m <= m_max; ++m)
                for (long n = m; n <= m_max; ++n) {
                    BracketCertificate bc = check_bracket(d, m, n, probe_set);
                    json args = json{{"descriptor", descriptor_to_json(d)},
                                     {"m", m},
                                     {"n", n},
                                     {"probes", probes_json}};
                    cert.steps.push_back(
                        CertStep{"check_bracket", args, json_hash(bracket_result_to_json(bc))});
                    if (!bc.pass) cert.verdict = "fail";
                }
            if (cert.verdict == "fail") cert.residual = "nonzero";
            write_report(resolve_out(out_path, "bracket.json"), cert.to_json());
            std::cout << (cert.pass() ? "PASS" : "FAIL") << " (" << cert.steps.size()
                      << " (m,n) pairs, " << probes << " probes each)\n";
            return verdict_exit(cert);
        }

        if (cmd_separate->parsed()) {
            json in = read_json(input_path);
            json result = run_op("separate", in);
            write_report(resolve_out(out_path, "separate.json"), result);
            return 0;
        }

        if (cmd_witness->parsed()) {
            TensorDescriptor d = load_descriptor(descriptor_path);
            const int vwin = v_window(d.v);
            const int vb = std::max(1, vwin - slack_of(d.v, degree_cap + 4));
            const int vc = v_check > 0 ? v_check : std::max(1, vwin / 2);
            auto seed_set = random_elements(d.nvars(), seeds, max_exp, std::max(1, vb / 2), seed);
            Certificate cert = witness_irreducible(d, seed_set, degree_cap, k_bound, vc);
            cert.inputs["seed"] = seed;
            write_report(resolve_out(out_path, "witness.json"), cert.to_json());
            std::cout << (cert.pass() ? "PASS" : "FAIL") << " (" << seeds << " seeds)\n";
            return verdict_exit(cert);
        }

        if (cmd_generate->parsed()) {
            TensorDescriptor d = load_descriptor(descriptor_path);
            const int vc = v_check > 0 ? v_check : std::max(1, v_window(d.v) / 2);
            TensorElement start = TensorElement::vacuum(d.nvars());
            json args = json{{"descriptor", descriptor_to_json(d)},
                             {"start", element_to_json(start)},
                             {"degree_cap", degree_cap},
                             {"k_bound", k_bound},
                             {"v_check", vc}};
            json result = run_op("generate_from", args);
            Certificate cert;
            cert.kind = "generation";
            cert.inputs = args;
            cert.steps.push_back(CertStep{"generate_from", args, json_hash(result)});
            cert.verdict = result.at("full_window").get<bool>() ? "pass" : "fail";
            cert.detail = result;
            write_report(resolve_out(out_path, "generate.json"), cert.to_json());
            std::cout << (cert.pass() ? "PASS" : "FAIL") << " dim=" << result.at("dimension")
                      << " target=" << result.at("target_dimension") << "\n";
            return verdict_exit(cert);
        }

        if (cmd_filtration->parsed()) {
            TensorDescriptor d = load_descriptor(descriptor_path);
            if (d.factors.size() != 1 || d.factors[0].lambda != d.factor0.lambda) {
                std::cerr << "filtration needs exactly one extra factor with lambda_1 = lambda_0\n";
                return 2;
            }
            FiltrationOptions opt;
            opt.s_max = s_max;
            opt.n_max = n_max;
            opt.k_bound = k_bound;
            Certificate cert = filtration_check(d.v, d.factor0.lambda, d.factor0.alpha,
                                                d.factors[0].alpha, opt);
            write_report(resolve_out(out_path, "filtration.json"), cert.to_json());
            std::cout << (cert.pass() ? "PASS" : "FAIL") << "\n";
            return verdict_exit(cert);
        }

        if (cmd_exhibit->parsed()) {
            TensorDescriptor d = load_descriptor(descriptor_path);
            Certificate cert = exhibit_reducible(d, degree_cap, k_bound);
            write_report(resolve_out(out_path, "exhibit.json"), cert.to_json());
            std::cout << (cert.pass() ? "PASS" : "FAIL") << " "
                      << cert.detail.at("configuration").get<std::string>() << " dim "
                      << cert.detail.at("subspace_dimension") << "/"
                      << cert.detail.at("window_dimension") << "\n";
            return verdict_exit(cert);
        }

        if (cmd_classify->parsed()) {
            TensorDescriptor d1 = load_descriptor(descriptor_path);
            TensorDescriptor d2 = load_descriptor(descriptor2_path);
            IsoVerdict v = decide_iso(d1, d2);
            json report = json{{"verdict", iso_verdict_to_json(v)}};
            const std::string out = resolve_out(out_path, "classify.json");
            if (v.answer == IsoAnswer::Yes) {
                Certificate ev = iso_intertwiner_evidence(d1, d2, v, degree_cap, k_bound);
                const std::string evidence_path =
                    (fs::path(out).parent_path() / (fs::path(out).stem().string() + "-evidence.json"))
                        .string();
                write_report(evidence_path, ev.to_json());
                report["evidence"] = evidence_path;
                report["evidence_verdict"] = ev.verdict;
            }
            write_report(out, report);
            std::cout << v.reason << "\n";
            if (v.answer == IsoAnswer::Yes) return 0;
            if (v.answer == IsoAnswer::No) return 1;
            return 2;
        }

        if (cmd_replay->parsed()) {
            Certificate cert = Certificate::from_json(read_json(input_path));
            ReplayResult r = replay(cert);
            if (r.ok) {
                std::cout << "REPLAY OK (" << r.steps_checked << " steps)\n";
                return 0;
            }
            std::cout << "REPLAY MISMATCH: " << r.first_mismatch << "\n";
            return 1;
        }
    } catch (const WindowOverflow& e) {
        std::cerr << "window overflow: " << e.what() << "\n";
        return 2;
    } catch (const SingularSystem& e) {
        std::cerr << "singular system: " << e.what() << "\n";
        return 2;
    } catch (const InconsistentSamples& e) {
        std::cerr << "inconsistent samples: " << e.what() << "\n";
        return 1;
    } catch (const NotApplicable& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
