#include "ectl/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "ectl/errors.hpp"
#include "ectl/version.hpp"

namespace ectl {

namespace {

const ordered_json& require(const ordered_json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int require_int(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string require_string(const ordered_json& v, const std::string& what) {
    if (!v.is_string()) throw ParseError(what + " must be a string");
    return v.get<std::string>();
}

PolyMatrix parse_poly_matrix(const ordered_json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ParseError(what + " must be a non-empty 2D array");
    const int rows = static_cast<int>(j.size());
    if (!j.at(0).is_array() || j.at(0).empty())
        throw ParseError(what + " must be a non-empty 2D array");
    const int cols = static_cast<int>(j.at(0).size());
    PolyMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(what + " must be rectangular");
        for (int c = 0; c < cols; ++c) m.at(i, c) = parse_poly_json(row.at(c));
    }
    return m;
}

ordered_json eta_to_json(const std::vector<RealValue>& eta) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : eta) arr.push_back(to_string(v));
    return arr;
}

ordered_json checks_to_json(const NecessaryChecks& nc) {
    ordered_json j;
    j["injective"] = nc.injective;
    ordered_json overlaps = ordered_json::array();
    for (const auto& [a, b] : nc.overlaps) overlaps.push_back(ordered_json::array({a, b}));
    j["overlaps"] = std::move(overlaps);
    j["constant_eigenfunctions"] = nc.constant_eigenfunctions;
    j["max_k_critical"] = nc.max_k_critical;
    j["single_input_ok"] = nc.single_input_ok;
    j["multiplicity_ok"] = nc.multiplicity_ok;
    j["passed"] = nc.passed;
    return j;
}

ordered_json witness_to_json(const Witness& w) {
    ordered_json j;
    j["kind"] = to_string(w.kind);
    if (w.kind == Witness::Kind::ConstantEigenfunction) {
        j["eigen_index"] = w.eigen_index;
        return j;
    }
    j["eta"] = eta_to_json(w.point.eta);
    j["kappas"] = w.point.kappas;
    ordered_json pre = ordered_json::array();
    for (const auto& ps : w.point.pre) {
        ordered_json axis = ordered_json::array();
        for (const auto& p : ps.points) axis.push_back(to_string(p));
        pre.push_back(std::move(axis));
    }
    j["preimages"] = std::move(pre);
    j["required"] = w.required;
    if (w.ctrl) {
        j["controllability_matrix"] = qmatrix_to_json(*w.ctrl);
        j["rank"] = w.rank;
    } else {
        j["controllability_matrix"] = nullptr;
        j["rank"] = nullptr;
    }
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Poly parse_poly_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw ParseError("polynomial entries must be objects with a 'coeffs' array");
    std::vector<Rational> c;
    for (const auto& e : j.at("coeffs"))
        c.push_back(parse_rational(require_string(e, "polynomial coefficient")));
    return Poly::from_coeffs(std::move(c));
}

ordered_json poly_to_json(const Poly& p) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
    ordered_json j;
    j["coeffs"] = std::move(coeffs);
    return j;
}

EnsembleSystem parse_system_json(const ordered_json& j) {
    if (!j.is_object()) throw ParseError("system file must be a JSON object");
    EnsembleSystem sys;
    sys.n = require_int(j, "state_dim");
    sys.m = require_int(j, "input_dim");

    const auto& par = require(j, "parameter");
    if (!par.is_object()) throw ParseError("'parameter' must be an object");
    if (par.contains("name")) sys.param_name = require_string(par.at("name"), "parameter name");
    const auto& iv = require(par, "interval");
    if (!iv.is_array() || iv.size() != 2)
        throw ParseError("'interval' must be an array of two rational strings");
    sys.beta_lo = parse_rational(require_string(iv.at(0), "interval endpoint"));
    sys.beta_hi = parse_rational(require_string(iv.at(1), "interval endpoint"));

    const std::string form = require_string(require(j, "form"), "'form'");
    if (form == "diagonal")
        sys.form = SystemForm::Diagonal;
    else if (form == "upper-triangular")
        sys.form = SystemForm::UpperTriangular;
    else
        throw ParseError("'form' must be \"diagonal\" or \"upper-triangular\"");

    sys.A = parse_poly_matrix(require(j, "A"), "'A'");
    sys.B = parse_poly_matrix(require(j, "B"), "'B'");
    return validate(sys);
}

EnsembleSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read system file '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_system_json(j);
}

ordered_json system_to_json(const EnsembleSystem& sys) {
    ordered_json j;
    j["state_dim"] = sys.n;
    j["input_dim"] = sys.m;
    ordered_json par;
    par["name"] = sys.param_name;
    par["interval"] = ordered_json::array({to_string(sys.beta_lo), to_string(sys.beta_hi)});
    j["parameter"] = std::move(par);
    j["form"] = sys.form == SystemForm::Diagonal ? "diagonal" : "upper-triangular";
    auto mat = [](const PolyMatrix& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(poly_to_json(m.at(i, c)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["A"] = mat(sys.A);
    j["B"] = mat(sys.B);
    return j;
}

ordered_json qmatrix_to_json(const QMatrix& a) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < a.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(to_string(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json polymatrix_to_json(const PolyMatrix& a, const std::string& var) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < a.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j).str(var));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json ratfun_matrix_to_json(const RatFunMatrix& a, const std::string& var) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < a.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j).str(var));
        rows.push_back(std::move(row));
    }
    return rows;
}

QMatrix parse_qmatrix(const ordered_json& doc) {
    const ordered_json& j = doc.is_object() && doc.contains("matrix") ? doc.at("matrix") : doc;
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty 2D array");
    const int rows = static_cast<int>(j.size());
    if (!j.at(0).is_array() || j.at(0).empty())
        throw ParseError("matrix must be a non-empty 2D array");
    const int cols = static_cast<int>(j.at(0).size());
    QMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix must be rectangular");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = parse_rational(require_string(row.at(c), "matrix entry"));
    }
    return m;
}

QMatrix load_qmatrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read matrix file '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_qmatrix(j);
}

SteerTarget load_target(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read target file '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    const auto parse_vec = [&](const ordered_json& arr, const char* what) {
        if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
        std::vector<Poly> v;
        for (const auto& e : arr) v.push_back(parse_poly_json(e));
        if (static_cast<int>(v.size()) != n)
            throw MalformedShape(std::string(what) + " must have one entry per state dimension");
        return v;
    };
    SteerTarget t;
    t.xF = parse_vec(require(j, "xF"), "'xF'");
    if (j.contains("x0"))
        t.x0 = parse_vec(j.at("x0"), "'x0'");
    else
        t.x0.assign(n, Poly());
    return t;
}

ordered_json report_to_json(const ControllabilityReport& rep) {
    ordered_json j;
    j["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
    j["config"] = ordered_json{{"grid_density", rep.config.grid_density},
                               {"eval_bits", rep.config.eval_bits},
                               {"max_bits", rep.config.max_bits}};
    j["verdict"] = to_string(rep.verdict);
    j["necessary_checks"] = checks_to_json(rep.checks);
    j["tested_point_count"] = rep.tested_points;
    j["witness"] = rep.witness ? witness_to_json(*rep.witness) : ordered_json(nullptr);
    ordered_json samples = ordered_json::array();
    for (const auto& s : rep.canonical_samples) {
        ordered_json e;
        ordered_json eta = ordered_json::array();
        for (const auto& q : s.eta) eta.push_back(to_string(q));
        e["eta"] = std::move(eta);
        e["k"] = s.k;
        e["block_sizes"] = s.block_sizes;
        e["C"] = qmatrix_to_json(s.C);
        e["Bbar"] = qmatrix_to_json(s.Bbar);
        samples.push_back(std::move(e));
    }
    j["canonical_samples"] = std::move(samples);
    ordered_json ind = ordered_json::array();
    for (const auto& p : rep.indeterminate_points) ind.push_back(eta_to_json(p));
    j["indeterminate_points"] = std::move(ind);
    ordered_json junc = ordered_json::array();
    for (const auto& p : rep.junction_points) junc.push_back(eta_to_json(p));
    j["junction_points"] = std::move(junc);
    return j;
}

void write_controls_csv(std::ostream& os, const SteeringResult& res, double T) {
    os << "step,t";
    for (int c = 0; c < res.controls.cols(); ++c) os << ",u" << c + 1;
    os << "\n";
    const int steps = static_cast<int>(res.controls.rows());
    const double dt = T / steps;
    for (int j = 0; j < steps; ++j) {
        os << j << ',' << format_double(j * dt);
        for (int c = 0; c < res.controls.cols(); ++c)
            os << ',' << format_double(res.controls(j, c));
        os << "\n";
    }
}

void write_residuals_csv(std::ostream& os, const DiscretizedEnsemble& de,
                         const SteeringResult& res) {
    os << "beta,residual\n";
    for (size_t s = 0; s < de.samples.size(); ++s)
        os << format_double(de.samples[s]) << ',' << format_double(res.residual_per_sample[s])
           << "\n";
}

ordered_json steer_summary_json(const DiscretizedEnsemble& de, const SteeringProblem& pr,
                                const SteeringResult& res) {
    ordered_json j;
    j["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
    j["samples"] = static_cast<int>(de.samples.size());
    j["steps"] = pr.steps;
    j["time"] = pr.T;
    j["residual_sup"] = res.residual_sup;
    j["residual_per_sample"] = res.residual_per_sample;
    j["reachability_rank"] = res.reachability_rank;
    ordered_json sv = ordered_json::array();
    for (int i = 0; i < res.singular_values.size(); ++i) sv.push_back(res.singular_values(i));
    j["singular_values"] = std::move(sv);
    j["cutoff"] = res.cutoff;
    return j;
}

}  // namespace ectl
