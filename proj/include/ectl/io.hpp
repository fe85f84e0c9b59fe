#pragma once

#include <json.hpp>
#include <iosfwd>
#include <string>
#include <vector>

#include "ectl/decide.hpp"
#include "ectl/ensemble.hpp"
#include "ectl/steer.hpp"

namespace ectl {

using ordered_json = nlohmann::ordered_json;

// Round-trippable double formatting (%.17g).
std::string format_double(double v);

// System files: {"state_dim", "input_dim", "parameter": {"name", "interval"},
// "form", "A", "B"} with matrix entries {"coeffs": [rational strings,
// ascending]}.  Structural problems raise ParseError; semantic ones surface
// through validate().
EnsembleSystem parse_system_json(const ordered_json& j);
EnsembleSystem load_system(const std::string& path);
ordered_json system_to_json(const EnsembleSystem& sys);  // round-trips

ordered_json poly_to_json(const Poly& p);
Poly parse_poly_json(const ordered_json& j);
ordered_json qmatrix_to_json(const QMatrix& a);
ordered_json polymatrix_to_json(const PolyMatrix& a, const std::string& var);
ordered_json ratfun_matrix_to_json(const RatFunMatrix& a, const std::string& var);

// Rational matrix input for the classical canonical-form command: either a
// bare 2D array of rational strings or {"matrix": [...]}.
QMatrix parse_qmatrix(const ordered_json& j);
QMatrix load_qmatrix(const std::string& path);

// Steering target: one final-state polynomial in beta per coordinate, and
// optionally initial-state polynomials (origin when absent).
struct SteerTarget {
    std::vector<Poly> xF;
    std::vector<Poly> x0;
};
SteerTarget load_target(const std::string& path, int n);

ordered_json report_to_json(const ControllabilityReport& rep);

void write_controls_csv(std::ostream& os, const SteeringResult& res, double T);
void write_residuals_csv(std::ostream& os, const DiscretizedEnsemble& de,
                         const SteeringResult& res);
ordered_json steer_summary_json(const DiscretizedEnsemble& de, const SteeringProblem& pr,
                                const SteeringResult& res);

}  // namespace ectl
