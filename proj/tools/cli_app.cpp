// Copyright 2026 The lindblad-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lindblad/conditional_expectation.hpp"
#include "lindblad/functional.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/gradient.hpp"
#include "lindblad/json_io.hpp"
#include "lindblad/optics.hpp"
#include "lindblad/order.hpp"

namespace lindblad::cli {

namespace {

constexpr const char* kSchema = "lindblad-lab/1";

struct Options {
  std::string command;
  std::string input = "-";
  std::string out;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  unsigned jobs = 1;
  std::string mode = "both";
  std::optional<double> epsilon;
  std::string l_name = "L";
  std::string lp_name = "Lp";
  std::string state_name = "rho";
  bool jump_maps = false;
};

// Problem file accessors.
struct Problem {
  Json root;

  bool has_generator(const std::string& name) const {
    if (root.contains("generators") && root["generators"].contains(name)) return true;
    return name == "L" && root.contains("generator");
  }
  LindbladGenerator generator(const std::string& name) const {
    if (root.contains("generators") && root["generators"].contains(name))
      return generator_from_json(root["generators"][name]);
    if (name == "L" && root.contains("generator")) return generator_from_json(root["generator"]);
    throw Error(ErrorKind::InputError, "problem file has no generator named '" + name + "'");
  }
  DensityMatrix sigma() const {
    if (!root.contains("sigma")) throw Error(ErrorKind::InputError, "problem file has no 'sigma'");
    return DensityMatrix(matrix_from_json(root["sigma"]), true);
  }
  DensityMatrix state(const std::string& name) const {
    if (root.contains("states") && root["states"].contains(name))
      return DensityMatrix(matrix_from_json(root["states"][name]));
    if (name == "rho" && root.contains("rho")) return DensityMatrix(matrix_from_json(root["rho"]));
    throw Error(ErrorKind::InputError, "problem file has no state named '" + name + "'");
  }
  std::optional<SubalgebraSpec> spec() const {
    if (!root.contains("spec")) return std::nullopt;
    return spec_from_json(root["spec"]);
  }
  Json experiment() const { return root.value("experiment", Json::object()); }
};

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* boolstr(bool b) { return b ? "true" : "false"; }

std::vector<double> epsilons(const Options& o, const Json& exp) {
  if (o.epsilon) return {*o.epsilon};
  if (exp.contains("epsilons")) return exp["epsilons"].get<std::vector<double>>();
  if (exp.contains("epsilon")) return {exp["epsilon"].get<double>()};
  return {0.05, 0.1, 0.2, 0.4};
}

double epsilon(const Options& o, const Json& exp) {
  if (o.epsilon) return *o.epsilon;
  if (exp.contains("epsilon")) return exp["epsilon"].get<double>();
  throw Error(ErrorKind::InputError, "an epsilon is required (flag --epsilon or experiment.epsilon)");
}

std::uint64_t seed(const Options& o, const Json& exp) {
  if (o.seed) return *o.seed;
  return exp.value("seed", static_cast<std::uint64_t>(1));
}

std::size_t trials(const Options& o, const Json& exp) {
  if (o.trials) return *o.trials;
  return exp.value("trials", static_cast<std::size_t>(20));
}

PerturbationModel perturbation(const Json& exp) {
  PerturbationModel m;
  if (exp.contains("perturbation")) {
    const Json& p = exp["perturbation"];
    m.weight_jitter = p.value("weight_jitter", m.weight_jitter);
    m.rotation = p.value("rotation", m.rotation);
  }
  return m;
}

std::optional<double> finite(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

Json opt_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

Json comparison_json(const ComparisonResult& r) {
  Json j;
  j["holds"] = r.holds;
  j["optimal_c"] = opt_number(r.optimal_c);
  j["residual"] = r.residual;
  j["method"] = r.method == CompareMethod::Span ? "span"
                : r.method == CompareMethod::PsdBisection ? "psd_bisection"
                                                          : "both";
  j["possibly_non_minimal"] = r.possibly_non_minimal;
  j["coeff_matrix"] = r.coeff_matrix ? matrix_to_json(*r.coeff_matrix) : Json(nullptr);
  return j;
}

SubalgebraSpec spec_or_fixed_points(const Problem& p, const LindbladGenerator& l) {
  if (auto s = p.spec()) return *s;
  return fixed_point_algebra(l).spec;
}

int cmd_validate(const Problem& p, const Options& o, std::string& out) {
  Matrix s;
  if (p.root.contains("superop"))
    s = matrix_from_json(p.root["superop"]);
  else
    s = superoperator_matrix(p.generator(o.l_name));
  ValidationResult v = validate_lindblad(s, o.tol);
  Json j = header("validate");
  j["valid"] = v.valid;
  Json w = Json::array();
  for (const Witness& x : v.witnesses) w.push_back(Json{{"check", x.check}, {"passed", x.passed}, {"margin", x.margin}});
  j["witnesses"] = w;
  GradientMatrix m = gradient_matrix(s);
  Matrix herm = 0.5 * (m.matrix + m.matrix.adjoint());
  j["gradient_min_eigenvalue"] = min_eigenvalue(herm);
  out = dump(j);
  return v.valid ? 0 : 2;
}

int cmd_standard_form(const Problem& p, const Options& o, std::string& out) {
  StandardForm sf;
  Matrix reference;
  if (p.has_generator(o.l_name)) {
    LindbladGenerator g = p.generator(o.l_name);
    sf = to_standard_form(g);
    reference = superoperator_matrix(g);
  } else if (p.root.contains("gks")) {
    GksForm g = gks_from_json(p.root["gks"]);
    sf = to_standard_form(g);
    reference = superoperator_matrix(g);
  } else {
    throw Error(ErrorKind::InputError, "standard-form needs a generator or a 'gks' entry");
  }
  Json j = header("standard-form");
  j["H"] = matrix_to_json(sf.hamiltonian);
  Json jumps = Json::array();
  std::vector<Matrix> folded = sf.folded();
  for (std::size_t i = 0; i < sf.units.size(); ++i)
    jumps.push_back(Json{{"unit", matrix_to_json(sf.units[i])}, {"weight", sf.weights[i]},
                         {"folded", matrix_to_json(folded[i])}});
  j["jumps"] = jumps;
  j["superop_residual"] = max_abs(superoperator_matrix(sf) - reference);
  j["generator"] = generator_to_json(sf.as_generator());
  out = dump(j);
  return 0;
}

int cmd_compare(const Problem& p, const Options& o, std::string& out) {
  CompareMethod mode = o.mode == "span" ? CompareMethod::Span
                       : o.mode == "bisection" || o.mode == "psd_bisection" ? CompareMethod::PsdBisection
                                                                            : CompareMethod::Both;
  LindbladGenerator l = p.generator(o.l_name), lp = p.generator(o.lp_name);
  ComparisonResult r = o.jump_maps ? compare_jump_maps(l, lp, mode) : compare(l, lp, mode);
  Json j = header("compare");
  j["route"] = o.jump_maps ? "choi" : "gradient";
  j["result"] = comparison_json(r);
  out = dump(j);
  return 0;
}

int cmd_sandwich(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name), lp = p.generator(o.lp_name);
  double eps = epsilon(o, p.experiment());
  std::optional<SubalgebraSpec> spec = p.spec();
  SandwichResult r = sandwich_check(l, lp, eps, spec);
  Json j = header("sandwich");
  j["epsilon"] = eps;
  j["subalgebra"] = spec ? spec_to_json(*spec) : Json("full");
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["lower_margin"] = r.lower_margin;
  j["upper_margin"] = r.upper_margin;
  j["delta"] = operator_norm(superoperator_matrix(l) - superoperator_matrix(lp));
  out = dump(j);
  return 0;
}

int cmd_depolarizer(const Problem& p, const Options&, std::string& out) {
  std::optional<SubalgebraSpec> spec = p.spec();
  if (!spec) throw Error(ErrorKind::InputError, "depolarizer needs a 'spec'");
  DepolarizerConstruction d = depolarizer_generator(*spec);
  Json j = header("depolarizer");
  j["spec"] = spec_to_json(*spec);
  j["scale"] = d.scale;
  j["residual"] = d.residual;
  Json jumps = Json::array();
  for (const Matrix& v : d.jumps) jumps.push_back(matrix_to_json(v));
  j["jumps"] = jumps;
  j["unit_generator"] = generator_to_json(d.unit_generator(spec->dim()));
  out = dump(j);
  return 0;
}

int cmd_order_norm(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name), lp = p.generator(o.lp_name);
  SubalgebraSpec spec = p.spec().value_or(SubalgebraSpec::scalars(l.dim));
  Matrix v = gradient_matrix(l).matrix - gradient_matrix(lp).matrix;
  Matrix e = upper_bound_unit(spec).matrix;
  Json j = header("order-norm");
  j["order_norm"] = order_norm(v, e);
  j["bisection"] = order_norm_bisection(v, e);
  j["spectral_norm"] = spectral_norm(v);
  j["in_cone"] = in_cone(0.5 * (v + v.adjoint()), o.tol);
  out = dump(j);
  return 0;
}

int cmd_gap(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name);
  DirichletData dd = make_dirichlet_data(l, p.sigma());
  std::optional<SubalgebraSpec> spec = p.spec();
  GapResult g = spec ? spectral_gap(dd, *spec) : spectral_gap(dd);
  Json j = header("gap");
  j["gap"] = opt_number(finite(g.gap));
  j["witness"] = g.witness.size() ? matrix_to_json(g.witness) : Json(nullptr);
  j["fixed_point_spec"] = dd.fixed_spec ? spec_to_json(*dd.fixed_spec) : Json(nullptr);
  j["fixed_point_dim"] = dd.fixed_basis.size();
  out = dump(j);
  return 0;
}

int cmd_ep(const Problem& p, const Options& o, std::string& out) {
  DirichletData dd = make_dirichlet_data(p.generator(o.l_name), p.sigma());
  DensityMatrix rho = p.state(o.state_name);
  Json j = header("ep");
  j["entropy_production"] = entropy_production(dd, rho);
  j["relative_entropy_to_fixed_points"] = relative_entropy(rho.matrix(), predual_projection(dd, rho.matrix()));
  j["relative_entropy_to_sigma"] = relative_entropy(rho, dd.sigma());
  out = dump(j);
  return 0;
}

int cmd_mlsi(const Problem& p, const Options& o, std::string& out) {
  DirichletData dd = make_dirichlet_data(p.generator(o.l_name), p.sigma());
  Json exp = p.experiment();
  Json j = header("mlsi");
  bool has_state = (p.root.contains("states") && p.root["states"].contains(o.state_name)) ||
                   (o.state_name == "rho" && p.root.contains("rho"));
  j["ratio"] = has_state ? Json(mlsi_ratio(dd, p.state(o.state_name))) : Json(nullptr);
  Index dmax = exp.value("d_R_max", 2);
  std::size_t samples = o.trials ? *o.trials : exp.value("samples", static_cast<std::size_t>(50));
  CmlsiProbe probe = cmlsi_probe(dd, dmax, samples, seed(o, exp));
  j["cmlsi_probe_upper_bound"] = probe.value;
  j["argmin_reference_dim"] = probe.reference_dim;
  j["d_R_max"] = dmax;
  j["samples"] = samples;
  out = dump(j);
  return 0;
}

int cmd_g2(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name);
  DensityMatrix rho = p.state(o.state_name);
  Json j = header("g2");
  j["emission_rate"] = emission_rate(l, rho);
  j["g2"] = g2(l, rho);
  out = dump(j);
  return 0;
}

int cmd_scan(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name);
  DensityMatrix sigma = p.sigma();
  Json exp = p.experiment();
  SubalgebraSpec spec = spec_or_fixed_points(p, l);
  std::vector<double> eps = epsilons(o, exp);
  std::vector<ScanRow> rows =
      stability_scan(l, sigma, spec, eps, perturbation(exp), trials(o, exp), seed(o, exp), o.jobs);
  std::string csv = "trial,delta,epsilon,lower_ok,upper_ok\n";
  for (const ScanRow& r : rows)
    csv += std::to_string(r.trial) + "," + fmt(r.delta) + "," + fmt(r.epsilon) + "," + boolstr(r.lower_ok) +
           "," + boolstr(r.upper_ok) + "\n";
  out = csv;
  return 0;
}

int cmd_g2_scan(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name);
  DensityMatrix rho = p.state(o.state_name);
  Json exp = p.experiment();
  std::vector<double> eps = epsilons(o, exp);
  std::vector<G2ScanRow> rows =
      g2_stability_scan(l, rho, eps, perturbation(exp), trials(o, exp), seed(o, exp), o.jobs);
  std::string csv = "trial,delta,epsilon,g2_value,lower_ok,upper_ok\n";
  for (const G2ScanRow& r : rows)
    csv += std::to_string(r.trial) + "," + fmt(r.delta) + "," + fmt(r.epsilon) + "," + fmt(r.g2_value) + "," +
           boolstr(r.lower_ok) + "," + boolstr(r.upper_ok) + "\n";
  out = csv;
  return 0;
}

int cmd_stability(const Problem& p, const Options& o, std::string& out) {
  LindbladGenerator l = p.generator(o.l_name), lp = p.generator(o.lp_name);
  DensityMatrix sigma = p.sigma();
  Json exp = p.experiment();
  double eps = epsilon(o, exp);
  DirichletData dd = make_dirichlet_data(l, sigma), ddp = make_dirichlet_data(lp, sigma);
  SubalgebraSpec spec = spec_or_fixed_points(p, l);
  SandwichResult sw = sandwich_check(l, lp, eps, spec);

  std::vector<DensityMatrix> states;
  if (exp.contains("states"))
    for (const Json& name : exp["states"]) states.push_back(p.state(name.get<std::string>()));
  std::size_t samples = o.trials ? *o.trials : exp.value("samples", static_cast<std::size_t>(10));
  std::mt19937_64 rng(seed(o, exp));
  for (Index d = 1; d <= 2; ++d)
    for (std::size_t i = 0; i < samples; ++i) states.push_back(sample_state(l.dim * d, rng));

  Json j = header("stability");
  j["epsilon"] = eps;
  j["sandwich_lower"] = sw.lower;
  j["sandwich_upper"] = sw.upper;
  j["delta"] = operator_norm(superoperator_matrix(l) - superoperator_matrix(lp));
  j["gap_L"] = opt_number(finite(spectral_gap(dd).gap));
  j["gap_Lp"] = opt_number(finite(spectral_gap(ddp).gap));
  j["pi_ok"] = stability_check_pi(dd, ddp, eps);
  j["cmlsi_pointwise_ok"] = stability_check_cmlsi(dd, ddp, eps, states);
  j["states_checked"] = states.size();
  out = dump(j);
  return 0;
}

std::string error_json(ErrorKind kind, const std::string& message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = std::string(to_string(kind));
  j["message"] = message;
  return dump(j);
}

}  // namespace

RunResult run(const std::vector<std::string>& args, const std::function<std::string()>& read_stdin) {
  RunResult result;
  Options o;
  CLI::App app{"Lindblad generator comparison and stability toolkit", "lindblad-lab"};
  app.require_subcommand(1);
  app.add_option("--input,-i", o.input, "problem file (JSON), '-' for stdin");
  app.add_option("--out,-o", o.out, "write the result to this file");
  app.add_option("--tol", o.tol, "global numeric tolerance");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--trials", o.trials, "number of trials / samples");
  app.add_option("--jobs", o.jobs, "worker threads for scans");
  app.add_option("--mode", o.mode, "compare route: span | bisection | both");
  app.add_option("--epsilon", o.epsilon, "sandwich epsilon");
  app.add_option("--l", o.l_name, "name of the reference generator");
  app.add_option("--lp", o.lp_name, "name of the perturbed generator");
  app.add_option("--state", o.state_name, "name of the state");
  app.add_flag("--jump-maps", o.jump_maps, "compare via Choi matrices of the jump maps");
  app.fallthrough();
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check Lindblad form via the gradient matrix"},
      {"standard-form", "canonical traceless orthonormal jumps"},
      {"compare", "optimal constant C with Gamma_L <= C Gamma_L'"},
      {"sandwich", "epsilon-sandwich of two generators"},
      {"depolarizer", "explicit jumps of -(I - E_N)"},
      {"order-norm", "order norm of m_L - m_L'"},
      {"gap", "spectral gap of a detailed-balanced generator"},
      {"ep", "entropy production at a state"},
      {"mlsi", "MLSI ratio and CMLSI probe"},
      {"g2", "second-order photon correlation"},
      {"scan", "stability scan (CSV)"},
      {"g2-scan", "g2 stability scan (CSV)"},
      {"stability", "spectral gap and entropy-production stability checks"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::ostringstream cli_out, cli_err;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, cli_out, cli_err);
    result.out = cli_out.str();
    result.err = cli_err.str();
    result.exit_code = code == 0 ? 0 : 1;
    return result;
  }
  for (CLI::App* sub : app.get_subcommands()) o.command = sub->get_name();

  Tolerances saved = default_tolerances();
  default_tolerances().hermitian = o.tol;
  default_tolerances().psd = o.tol;
  try {
    std::string text;
    if (o.input == "-") {
      text = read_stdin ? read_stdin() : std::string();
    } else {
      std::ifstream f(o.input);
      if (!f) throw Error(ErrorKind::InputError, "cannot open input file '" + o.input + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    Problem p;
    try {
      p.root = Json::parse(text);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::InputError, std::string("invalid JSON: ") + e.what());
    }
    std::string payload;
    static const std::map<std::string, int (*)(const Problem&, const Options&, std::string&)> table = {
        {"validate", cmd_validate},   {"standard-form", cmd_standard_form},
        {"compare", cmd_compare},     {"sandwich", cmd_sandwich},
        {"depolarizer", cmd_depolarizer}, {"order-norm", cmd_order_norm},
        {"gap", cmd_gap},             {"ep", cmd_ep},
        {"mlsi", cmd_mlsi},           {"g2", cmd_g2},
        {"scan", cmd_scan},           {"g2-scan", cmd_g2_scan},
        {"stability", cmd_stability},
    };
    try {
      result.exit_code = table.at(o.command)(p, o, payload);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::InputError, std::string("malformed problem file: ") + e.what());
    }
    if (!o.out.empty()) {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw Error(ErrorKind::InputError, "cannot write output file '" + o.out + "'");
      f << payload;
    } else {
      result.out = payload;
    }
  } catch (const Error& e) {
    result.err = error_json(e.kind(), e.what());
    result.exit_code = is_verification_failure(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    result.err = error_json(ErrorKind::InputError, e.what());
    result.exit_code = 1;
  }
  default_tolerances() = saved;
  return result;
}

}  // namespace lindblad::cli
