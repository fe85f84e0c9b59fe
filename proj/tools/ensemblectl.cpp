#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ectl/canon.hpp"
#include "ectl/decide.hpp"
#include "ectl/errors.hpp"
#include "ectl/io.hpp"
#include "ectl/steer.hpp"
#include "ectl/version.hpp"

namespace {

constexpr int kExitNegative = 1;       // Uncontrollable / not controllable at eta
constexpr int kExitIndeterminate = 2;  // could not certify at max precision
constexpr int kExitUsage = 64;         // bad invocation or unparseable input
constexpr int kExitData = 65;          // structurally invalid data
constexpr int kExitInternal = 70;

int default_precision() {
    const char* env = std::getenv("ENSEMBLECTL_PRECISION");
    if (!env) return 256;
    try {
        const int v = std::stoi(env);
        if (v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid ENSEMBLECTL_PRECISION='" << env << "'\n";
    return 256;
}

std::vector<ectl::Rational> parse_eta_list(const std::string& s) {
    std::vector<ectl::Rational> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const auto a = tok.find_first_not_of(" \t");
        const auto b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw ectl::ParseError("empty eta coordinate");
        out.push_back(ectl::parse_rational(tok.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void print_qmatrix(std::ostream& os, const std::string& name, const ectl::QMatrix& m) {
    os << name << " =\n";
    for (int i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << ectl::to_string(m.at(i, j));
        }
        os << "]\n";
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ectl::ParseError("cannot write output file '" + path + "'");
    out << content;
}

int cmd_analyze(const std::string& path, int grid, int precision,
                const std::string& report_path) {
    const ectl::EnsembleSystem sys = ectl::load_system(path);
    ectl::DecisionConfig cfg;
    cfg.grid_density = grid;
    cfg.max_bits = precision;
    cfg.eval_bits = std::min(64, precision);
    const ectl::ControllabilityReport rep = ectl::decide_uec(sys, cfg);

    std::cout << "verdict: " << ectl::to_string(rep.verdict) << "\n";
    std::cout << "tested points: " << rep.tested_points << "\n";
    if (rep.witness) {
        const ectl::Witness& w = *rep.witness;
        std::cout << "witness kind: " << ectl::to_string(w.kind) << "\n";
        if (w.kind == ectl::Witness::Kind::ConstantEigenfunction) {
            std::cout << "constant eigenvalue function at diagonal index " << w.eigen_index
                      << "\n";
        } else {
            std::cout << "witness eta: (";
            for (std::size_t i = 0; i < w.point.eta.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << ectl::to_string(w.point.eta[i]);
            }
            std::cout << ")\n";
            if (w.ctrl) {
                print_qmatrix(std::cout, "controllability matrix", *w.ctrl);
                std::cout << "rank: " << w.rank << " of " << w.required << " required\n";
            }
        }
    }
    if (!rep.indeterminate_points.empty())
        std::cout << "uncertified points: " << rep.indeterminate_points.size() << "\n";

    if (!report_path.empty())
        write_text_file(report_path, ectl::report_to_json(rep).dump(2) + "\n");

    switch (rep.verdict) {
        case ectl::Verdict::Controllable: return 0;
        case ectl::Verdict::Uncontrollable: return kExitNegative;
        case ectl::Verdict::Indeterminate: return kExitIndeterminate;
    }
    return kExitInternal;
}

int cmd_rcf(const std::string& path) {
    const ectl::QMatrix a = ectl::load_qmatrix(path);
    const ectl::RcfResult r = ectl::rcf(a);

    std::cout << "invariant factors (descending divisibility):\n";
    for (std::size_t i = 0; i < r.factors.factors.size(); ++i)
        std::cout << "  a_" << i + 1 << " = " << r.factors.factors[i].str("x") << "\n";
    print_qmatrix(std::cout, "C", r.C);
    print_qmatrix(std::cout, "P", r.P);

    ectl::ordered_json j;
    j["tool"] = ectl::ordered_json{{"name", ectl::kToolName}, {"version", ectl::kToolVersion}};
    ectl::ordered_json factors = ectl::ordered_json::array();
    for (const auto& f : r.factors.factors) {
        ectl::ordered_json e = ectl::poly_to_json(f);
        e["display"] = f.str("x");
        factors.push_back(std::move(e));
    }
    j["invariant_factors"] = std::move(factors);
    j["degrees"] = r.factors.degrees;
    j["C"] = ectl::qmatrix_to_json(r.C);
    j["P"] = ectl::qmatrix_to_json(r.P);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_canon(const std::string& path, bool have_eta, const std::string& eta_str) {
    const ectl::EnsembleSystem sys = ectl::load_system(path);
    if (have_eta) {
        const ectl::FunctionalCanonicalSample fc =
            ectl::ensemble_canonical_form(sys, parse_eta_list(eta_str));
        std::cout << "eta: (";
        for (std::size_t i = 0; i < fc.eta.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << ectl::to_string(fc.eta[i]);
        }
        std::cout << ")\n";
        std::cout << "k (companion blocks): " << fc.k << "\n";
        print_qmatrix(std::cout, "Adiag", fc.Adiag);
        print_qmatrix(std::cout, "D", fc.D);
        print_qmatrix(std::cout, "C", fc.C);
        print_qmatrix(std::cout, "Bbar", fc.Bbar);
        print_qmatrix(std::cout, "P", fc.P);

        ectl::ordered_json j;
        j["tool"] =
            ectl::ordered_json{{"name", ectl::kToolName}, {"version", ectl::kToolVersion}};
        ectl::ordered_json eta = ectl::ordered_json::array();
        for (const auto& q : fc.eta) eta.push_back(ectl::to_string(q));
        j["eta"] = std::move(eta);
        j["k"] = fc.k;
        j["block_sizes"] = fc.block_sizes;
        j["Adiag"] = ectl::qmatrix_to_json(fc.Adiag);
        j["D"] = ectl::qmatrix_to_json(fc.D);
        j["C"] = ectl::qmatrix_to_json(fc.C);
        j["Bbar"] = ectl::qmatrix_to_json(fc.Bbar);
        j["P"] = ectl::qmatrix_to_json(fc.P);
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (sys.m != 1)
        throw ectl::ParseError("canon without --eta needs a single-input system; pass --eta");
    const ectl::SingleInputCanonical sc = ectl::single_input_canonical(sys);
    const std::string& v = sys.param_name;
    std::cout << "C(" << v << ") =\n";
    for (int i = 0; i < sc.C.rows(); ++i) {
        std::cout << "  [";
        for (int c = 0; c < sc.C.cols(); ++c) {
            if (c) std::cout << ", ";
            std::cout << sc.C.at(i, c).str(v);
        }
        std::cout << "]\n";
    }
    std::cout << "bbar = e_1\n";
    std::cout << "det P(" << v << ") = " << sc.detP.str(v) << "\n";

    ectl::ordered_json j;
    j["tool"] = ectl::ordered_json{{"name", ectl::kToolName}, {"version", ectl::kToolVersion}};
    j["C"] = ectl::ratfun_matrix_to_json(sc.C, v);
    j["P"] = ectl::polymatrix_to_json(sc.P, v);
    j["detP"] = sc.detP.str(v);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_steer(const std::string& path, const std::string& target_path, int samples, int steps,
              double time_horizon, const std::string& prefix) {
    const ectl::EnsembleSystem sys = ectl::load_system(path);
    const ectl::SteerTarget tgt = ectl::load_target(target_path, sys.n);
    const ectl::DiscretizedEnsemble de = ectl::discretize(sys, samples);

    ectl::SteeringProblem pr;
    pr.T = time_horizon;
    pr.steps = steps;
    pr.x0.resize(de.state_size());
    pr.xF.resize(de.state_size());
    for (std::size_t s = 0; s < de.samples.size(); ++s)
        for (int i = 0; i < de.n; ++i) {
            pr.x0(static_cast<int>(s) * de.n + i) = tgt.x0[i].eval_double(de.samples[s]);
            pr.xF(static_cast<int>(s) * de.n + i) = tgt.xF[i].eval_double(de.samples[s]);
        }

    const ectl::SteeringResult res = ectl::synthesize(de, pr);

    {
        std::ofstream out(prefix + "_controls.csv");
        if (!out) throw ectl::ParseError("cannot write '" + prefix + "_controls.csv'");
        ectl::write_controls_csv(out, res, pr.T);
    }
    {
        std::ofstream out(prefix + "_residuals.csv");
        if (!out) throw ectl::ParseError("cannot write '" + prefix + "_residuals.csv'");
        ectl::write_residuals_csv(out, de, res);
    }
    write_text_file(prefix + "_summary.json",
                    ectl::steer_summary_json(de, pr, res).dump(2) + "\n");

    std::cout << "residual_sup: " << ectl::format_double(res.residual_sup) << "\n";
    std::cout << "reachability rank: " << res.reachability_rank << "\n";
    std::cout << "outputs: " << prefix << "_controls.csv, " << prefix << "_residuals.csv, "
              << prefix << "_summary.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform ensemble controllability analysis for parameterized linear systems"};
    app.set_version_flag("--version", std::string(ectl::kToolName) + " " + ectl::kToolVersion);
    app.require_subcommand(1);

    std::string sys_path, report_path, matrix_path, eta_str, target_path;
    std::string out_prefix = "steer";
    int grid = 17;
    int precision = default_precision();
    int samples = 9;
    int steps = 32;
    double time_horizon = 1.0;

    CLI::App* analyze = app.add_subcommand("analyze", "Decide uniform ensemble controllability");
    analyze->add_option("system", sys_path, "system JSON file")->required();
    analyze->add_option("--grid", grid, "rational grid density per spectral axis");
    analyze->add_option("--precision", precision, "interval refinement ceiling in bits");
    analyze->add_option("--report", report_path, "write the JSON report to this path");

    CLI::App* rcf_cmd = app.add_subcommand("rcf", "Rational canonical form of a rational matrix");
    rcf_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();

    CLI::App* canon = app.add_subcommand(
        "canon", "Ensemble canonical form at a spectral point, or symbolic when m = 1");
    canon->add_option("system", sys_path, "system JSON file")->required();
    canon->add_option("--eta", eta_str, "comma-separated rational spectral point");

    CLI::App* steer = app.add_subcommand("steer", "Synthesize a steering control numerically");
    steer->add_option("system", sys_path, "system JSON file")->required();
    steer->add_option("--target", target_path, "target JSON file")->required();
    steer->add_option("--samples", samples, "ensemble sample count");
    steer->add_option("--steps", steps, "piecewise-constant control steps");
    steer->add_option("--time", time_horizon, "steering horizon T");
    steer->add_option("--out", out_prefix, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(sys_path, grid, precision, report_path);
        if (rcf_cmd->parsed()) return cmd_rcf(matrix_path);
        if (canon->parsed()) return cmd_canon(sys_path, canon->count("--eta") > 0, eta_str);
        if (steer->parsed())
            return cmd_steer(sys_path, target_path, samples, steps, time_horizon, out_prefix);
        std::cerr << "error: no command selected\n";
        return kExitUsage;
    } catch (const ectl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ectl::NotControllableAtEta& e) {
        std::cerr << "not controllable: " << e.what() << "\n";
        return kExitNegative;
    } catch (const ectl::PointwiseUncontrollable& e) {
        std::cerr << "not controllable: " << e.what() << "\n";
        return kExitNegative;
    } catch (const ectl::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const ectl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
