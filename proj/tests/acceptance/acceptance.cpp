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

// End-to-end acceptance suite: one PASS/FAIL line per criterion, exit code 1
// if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "lindblad/conditional_expectation.hpp"
#include "lindblad/functional.hpp"
#include "lindblad/optics.hpp"
#include "lindblad/order.hpp"
#include "lindblad/random.hpp"
#include "oracles.hpp"

using namespace lindblad;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates a worst-case statistic and a pass flag.
struct Tally {
  bool ok = true;
  double worst = 0.0;
  void check(bool cond) { ok = ok && cond; }
  void residual(double r, double limit) {
    worst = std::max(worst, r);
    ok = ok && r <= limit;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

oracle::JumpList to_oracle(const LindbladGenerator& g) {
  LindbladGenerator h = g.to_half();
  oracle::JumpList out{h.hamiltonian, {}, {}};
  for (const Jump& j : h.jumps) {
    out.ops.push_back(j.op);
    out.weights.push_back(j.weight);
  }
  return out;
}

Matrix full_depolarizer(Index n) {
  Vector vi = vec(Matrix::Identity(n, n));
  return -(Matrix::Identity(n * n, n * n) - vi * vi.adjoint() / double(n));
}

// E_{N,tau} for an unrotated block spec: compress to the diagonal blocks and
// average over the multiplicity factor.
Matrix block_expectation(const std::vector<Block>& blocks, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  Index off = 0;
  for (const Block& b : blocks) {
    Index f = b.factor_dim, r = b.multiplicity, d = f * r;
    Matrix sub = x.block(off, off, d, d);
    Matrix reduced = Matrix::Zero(f, f);
    for (Index i = 0; i < f; ++i)
      for (Index j = 0; j < f; ++j)
        for (Index a = 0; a < r; ++a) reduced(i, j) += sub(i * r + a, j * r + a);
    out.block(off, off, d, d) = kron(Matrix(reduced / double(r)), Matrix::Identity(r, r));
    off += d;
  }
  return out;
}

// Gamma matrix from the commutator sum, block (r,s),(t,v) entry (a,b) at
// row (r n + s) n + a, column (t n + v) n + b.
Matrix commutator_gamma_matrix(const std::vector<Matrix>& ops, Index n) {
  Matrix m = Matrix::Zero(n * n * n, n * n * n);
  for (Index r = 0; r < n; ++r)
    for (Index s = 0; s < n; ++s)
      for (Index t = 0; t < n; ++t)
        for (Index v = 0; v < n; ++v) {
          Matrix x = matrix_unit(n, r, s), y = matrix_unit(n, t, v);
          Matrix g = Matrix::Zero(n, n);
          for (const Matrix& op : ops) g += (op * x - x * op).adjoint() * (op * y - y * op);
          m.block((r * n + s) * n, (t * n + v) * n, n, n) = g;
        }
  return m;
}

std::vector<Matrix> weighted_ops(const LindbladGenerator& g) {
  LindbladGenerator h = g.to_half();
  std::vector<Matrix> out;
  for (const Jump& j : h.jumps) out.push_back(std::sqrt(j.weight) * j.op);
  return out;
}

// ---------------------------------------------------------------------------

Outcome full_basis_depolarizer() {
  std::mt19937_64 rng(101);
  Tally t;
  for (Index n : {2, 3, 4}) {
    for (int k = 0; k < 10; ++k) {
      std::vector<Matrix> base = traceless_basis(n);
      Index d = static_cast<Index>(base.size());
      Matrix w = random_unitary(d, rng), u = random_unitary(n, rng);
      LindbladGenerator g = LindbladGenerator::zero(n);
      for (Index a = 0; a < d; ++a) {
        Matrix v = Matrix::Zero(n, n);
        for (Index b = 0; b < d; ++b) v += w(a, b) * base[static_cast<std::size_t>(b)];
        g.jumps.push_back({Matrix(u * v * u.adjoint()), 1.0});
      }
      t.residual(oracle::opnorm(superoperator_matrix(g) - double(n * n) * full_depolarizer(n)), 1e-9);
    }
  }
  return {t.ok, fmt("30 completions, max residual %.2e", t.worst)};
}

Outcome derivation_identity() {
  std::mt19937_64 rng(102);
  Tally lib, brute;
  for (int k = 0; k < 200; ++k) {
    Index n = 2 + k % 3;
    StandardForm sf = random_standard_form(n, 1 + k % (n * n - 1), rng);
    DerivationMatrix d = derivation_matrix(sf);
    Matrix dd = d.matrix.adjoint() * d.matrix;
    lib.residual(max_abs(dd - gradient_matrix(superoperator_matrix(sf)).matrix), 1e-9);
    brute.residual(max_abs(dd - commutator_gamma_matrix(weighted_ops(sf.as_generator()), n)), 1e-9);
  }
  return {lib.ok && brute.ok,
          fmt("200 standard forms, max residual %.2e (library m), %.2e (commutator sum)", lib.worst, brute.worst)};
}

struct ComparisonPair {
  LindbladGenerator l, lp;
  bool nested;
};

std::vector<ComparisonPair> comparison_pairs() {
  std::mt19937_64 rng(103);
  std::normal_distribution<double> gauss;
  std::vector<ComparisonPair> out;
  for (Index n : {2, 3}) {
    for (int k = 0; k < 50; ++k) {
      LindbladGenerator lp = random_generator(n, 3, rng, k % 2 == 0);
      LindbladGenerator l = LindbladGenerator::zero(n);
      l.hamiltonian = random_hermitian(n, rng);
      for (int j = 0; j < 1 + k % 3; ++j) {
        Matrix v = Complex(gauss(rng), gauss(rng)) * Matrix::Identity(n, n);
        for (const Jump& q : lp.jumps) v += Complex(gauss(rng), gauss(rng)) * q.op;
        l.jumps.push_back({v, 0.25 + 0.5 * (j + 1)});
      }
      out.push_back({l, lp, true});
    }
    for (int k = 0; k < 50; ++k) {
      // at most n^2 - 2 jumps in L' leaves room for a generic jump outside the span
      Index m = 1 + k % (n * n - 2);
      out.push_back({random_generator(n, 1 + k % 2, rng), random_generator(n, m, rng), false});
    }
  }
  return out;
}

Outcome comparison_cross_validation(const std::vector<ComparisonPair>& pairs) {
  Tally agree, oracle_agree;
  int nested = 0, failed_ok = 0, non_nested = 0;
  for (const ComparisonPair& p : pairs) {
    ComparisonResult span = compare(p.l, p.lp, CompareMethod::Span);
    ComparisonResult bis = compare(p.l, p.lp, CompareMethod::PsdBisection);
    if (p.nested) {
      ++nested;
      agree.check(span.holds && bis.holds && span.optimal_c && bis.optimal_c);
      if (!(span.optimal_c && bis.optimal_c)) continue;
      double cs = *span.optimal_c, cb = *bis.optimal_c;
      agree.residual(std::abs(cs - cb) / cs, 1e-6);
      double ref = oracle::loewner_constant(gradient_matrix(p.l).matrix, gradient_matrix(p.lp).matrix);
      oracle_agree.residual(std::abs(cs - ref) / ref, 1e-6);
    } else {
      ++non_nested;
      if (!span.holds && !bis.holds) ++failed_ok;
    }
  }
  bool ok = agree.ok && oracle_agree.ok && failed_ok == non_nested;
  return {ok, fmt("%d nested: span vs bisection rel %.2e, vs LLT oracle %.2e; %d/%d non-nested rejected by both", nested,
                  agree.worst, oracle_agree.worst, failed_ok, non_nested)};
}

Outcome gradient_jump_equivalence(const std::vector<ComparisonPair>& pairs) {
  Tally t;
  int both_fail = 0, fails = 0;
  for (const ComparisonPair& p : pairs) {
    ComparisonResult g = compare(p.l, p.lp), c = compare_jump_maps(p.l, p.lp);
    if (p.nested) {
      t.check(g.optimal_c.has_value() && c.optimal_c.has_value());
      if (g.optimal_c && c.optimal_c) t.residual(std::abs(*g.optimal_c - *c.optimal_c) / *g.optimal_c, 1e-6);
    } else {
      ++fails;
      if (!g.holds && !c.holds) ++both_fail;
    }
  }
  return {t.ok && both_fail == fails,
          fmt("%zu pairs: m-matrix vs Choi rel %.2e; %d/%d failures agree", pairs.size(), t.worst, both_fail, fails)};
}

Outcome truncation_invariance() {
  std::mt19937_64 rng(105);
  std::normal_distribution<double> gauss;
  Tally t;
  for (int k = 0; k < 30; ++k) {
    Index n = k % 2 ? 3 : 2;
    LindbladGenerator lp = random_generator(n, 2, rng);
    LindbladGenerator l = LindbladGenerator::zero(n);
    Matrix v = Matrix::Zero(n, n);
    for (const Jump& q : lp.jumps) v += Complex(gauss(rng), gauss(rng)) * q.op;
    l.jumps.push_back({v, 1.0});
    double before = comparison_constant(l, lp);

    // traceless jumps tau-orthogonal to the span of the standard-form units of L'
    std::vector<Matrix> span = to_standard_form(lp).units;
    LindbladGenerator extended = lp;
    for (int e = 0; e < 1 + k % 2; ++e) {
      Matrix w = random_matrix(n, rng);
      w -= tau(w) * Matrix::Identity(n, n);
      for (const Matrix& u : span) w -= ((u.adjoint() * w).trace() / (u.adjoint() * u).trace()) * u;
      span.push_back(w);
      extended.jumps.push_back({w, 0.5 + e});
    }
    double after = comparison_constant(l, extended);
    t.residual(std::abs(after - before), 1e-6);
  }
  return {t.ok, fmt("30 instances, max |C change| %.2e", t.worst)};
}

Outcome depolarizer_construction() {
  std::mt19937_64 rng(106);
  std::vector<std::vector<Block>> layouts = {{{1, 2}}, {{2, 1}}, {{1, 2}, {1, 2}}, {{2, 2}}, {{1, 2}, {2, 1}}};
  Tally res, comm;
  for (const auto& blocks : layouts) {
    for (bool rotate : {false, true}) {
      SubalgebraSpec spec{blocks, std::nullopt, {}};
      Index n = spec.dim();
      if (rotate) spec.unitary = random_unitary(n, rng);
      DepolarizerConstruction d = depolarizer_generator(spec);
      Matrix target = rotate ? Matrix(conditional_expectation_superop(spec))
                             : oracle::superop_by_units([&](const Matrix& x) { return block_expectation(blocks, x); }, n);
      target -= Matrix::Identity(n * n, n * n);
      Matrix got = superoperator_matrix(d.as_generator(n));
      res.residual(oracle::opnorm(got - d.scale * target), 1e-9);
      for (const Matrix& v : d.jumps)
        for (const Matrix& b : algebra_basis(spec)) comm.residual(max_abs(v * b - b * v), 1e-10);
    }
  }
  return {res.ok && comm.ok,
          fmt("5 specs x {plain, rotated}: superop residual %.2e, max commutator with N %.2e", res.worst, comm.worst)};
}

Outcome order_norm_checks() {
  std::mt19937_64 rng(107);
  Tally bis, axioms;
  for (int k = 0; k < 100; ++k) {
    Index n = k % 2 ? 3 : 2;
    Matrix e = upper_bound_unit(SubalgebraSpec::scalars(n)).matrix;
    auto sample = [&] {
      return Matrix(gradient_matrix(random_generator(n, 1 + k % 3, rng)).matrix -
                    gradient_matrix(random_generator(n, 2, rng)).matrix);
    };
    Matrix a = sample(), b = sample();
    double na = order_norm(a, e), nb = order_norm(b, e);
    double ref = oracle::order_norm_bisection(a, e);
    bis.residual(std::abs(na - ref) / (1 + ref), 1e-8);
    axioms.check(na > 0.0);
    axioms.check(order_norm(a + b, e) <= na + nb + 1e-8);
    double s = -2.0 + 0.05 * k;
    axioms.check(std::abs(order_norm(s * a, e) - std::abs(s) * na) <= 1e-8 * (1 + std::abs(s) * na));
    axioms.check(order_norm(Matrix::Zero(a.rows(), a.cols()), e) == 0.0);
  }
  return {bis.ok && axioms.ok,
          fmt("100 differences: rel deviation from bisection %.2e; axioms %s", bis.worst, axioms.ok ? "hold" : "VIOLATED")};
}

Outcome dirichlet_and_gap() {
  std::mt19937_64 rng(108);
  Tally quad, dep, sampled;
  for (int k = 0; k < 100; ++k) {
    DbInstance inst = k % 5 == 4 ? random_db_generator(2, 2, rng) : random_db_generator(2 + k % 2, rng);
    DirichletData dd = make_dirichlet_data(inst.generator, inst.sigma);
    Matrix x = random_matrix(dd.dim(), rng);
    Matrix lx = oracle::lindblad_apply(to_oracle(inst.generator), x);
    double q = -oracle::bkm_quadrature(inst.sigma.matrix(), x, lx).real();
    quad.residual(std::abs(dirichlet_form(dd, x) - q), 1e-8);
  }
  for (Index n : {2, 3, 4}) {
    DirichletData d = make_dirichlet_data(depolarizer_generator(SubalgebraSpec::scalars(n)).unit_generator(n),
                                          DensityMatrix::maximally_mixed(n));
    dep.residual(std::abs(spectral_gap(d).gap - 1.0), 1e-9);
  }
  // one-sided: no sampled Rayleigh quotient falls below the gap
  double closest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    DbInstance inst = random_db_generator(2 + k % 2, rng);
    DirichletData dd = make_dirichlet_data(inst.generator, inst.sigma);
    double gap = spectral_gap(dd).gap;
    oracle::JumpList jl = to_oracle(inst.generator);
    const Matrix& s = inst.sigma.matrix();
    Index n = dd.dim();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
      Matrix x = random_matrix(n, rng);
      Matrix y = x - (s * x).trace() * Matrix::Identity(n, n);
      double var = oracle::bkm_eigen(s, y, y).real();
      double e = -oracle::bkm_eigen(s, x, oracle::lindblad_apply(jl, x)).real();
      if (var > 1e-12) best = std::min(best, e / var);
    }
    sampled.check(best >= gap - 1e-6);
    closest = std::min(closest, (best - gap) / gap);
  }
  return {quad.ok && dep.ok && sampled.ok,
          fmt("100 DB instances: quadrature dev %.2e; depolarizer gap dev %.2e; 4x10^4 samples, min (sample-gap)/gap %.2e",
              quad.worst, dep.worst, closest)};
}

Outcome entropy_production_fd() {
  std::mt19937_64 rng(109);
  Tally fd, fixed;
  for (int k = 0; k < 50; ++k) {
    Index n = 2 + k % 2;
    DbInstance inst = random_db_generator(n, rng);
    DirichletData dd = make_dirichlet_data(inst.generator, inst.sigma);
    DensityMatrix rho = random_density(n, rng);
    Matrix ref = predual_projection(dd, rho.matrix());
    double f = oracle::entropy_production_fd(superoperator_matrix(inst.generator), rho.matrix(), ref);
    fd.residual(std::abs(entropy_production(dd, rho) - f) / std::abs(f), 1e-5);
    fixed.residual(std::abs(entropy_production(dd, inst.sigma)), 1e-10);
  }
  return {fd.ok && fixed.ok, fmt("50 states: max rel deviation from Richardson FD %.2e; max |EP(sigma)| %.2e", fd.worst,
                                 fixed.worst)};
}

Outcome stability_chain() {
  std::mt19937_64 rng(110);
  const std::array<double, 5> eps{0.05, 0.1, 0.2, 0.4, 0.8};
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  int passes = 0, gap_violations = 0, ep_violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    Index n = 2 + trial % 2;
    DbInstance inst = random_db_generator(n, rng);
    DetailedBalanceData db = db_spectral_data(inst.generator, inst.sigma);
    DetailedBalanceData pert = perturb(db, PerturbationModel{0.5, 0.5}, mag(rng), rng);
    LindbladGenerator lp = pert.as_generator();
    DirichletData dd = make_dirichlet_data(inst.generator, inst.sigma), ddp = make_dirichlet_data(lp, inst.sigma);
    SubalgebraSpec spec = fixed_point_algebra(inst.generator).spec;
    double g = spectral_gap(dd).gap, gp = spectral_gap(ddp).gap;

    std::vector<std::pair<double, double>> ep;  // (EP_L, EP_L') on 14 plain and 6 amplified states
    DirichletData amp = amplify(dd, 2), ampp = amplify(ddp, 2);
    for (int s = 0; s < 20; ++s) {
      bool big = s >= 14;
      DensityMatrix rho = sample_state(big ? 2 * n : n, rng);
      ep.emplace_back(entropy_production(big ? amp : dd, rho), entropy_production(big ? ampp : ddp, rho));
    }
    for (double e : eps) {
      SandwichResult sw = sandwich_check(inst.generator, lp, e, spec);
      if (!(sw.lower && sw.upper)) continue;
      ++passes;
      double slack = kStabilitySlack * std::max(1.0, gp);
      worst = std::min(worst, gp - (1 - e) * g);
      if ((1 - e) * g > gp + slack) ++gap_violations;
      for (const auto& [a, b] : ep)
        if ((1 - e) * a > b + kStabilitySlack * std::max(1.0, b)) ++ep_violations;
    }
  }
  bool ok = passes > 0 && gap_violations == 0 && ep_violations == 0;
  return {ok, fmt("100 trials, %d sandwich passes: %d gap violations, %d EP violations (20 states each, 6 with d_R=2); "
                  "min gap margin %.3e",
                  passes, gap_violations, ep_violations, worst)};
}

Outcome g2_checks() {
  Matrix lo(2, 2), ex(2, 2), flip(2, 2);
  lo << 0, 0, 1, 0;
  ex << 1, 0, 0, 0;
  flip << 0, 1, 1, 0;
  LindbladGenerator one = LindbladGenerator::zero(2);
  one.jumps = {{lo, 1.0}};
  bool anti = g2(one, DensityMatrix(ex)) == 0.0;

  std::mt19937_64 rng(111);
  Tally unitary, brute, remix;
  LindbladGenerator fl = LindbladGenerator::zero(2);
  fl.jumps = {{flip, 0.7}};
  for (int k = 0; k < 10; ++k) unitary.residual(std::abs(g2(fl, random_density(2, rng)) - 1.0), 1e-10);

  Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> ops{kron(lo, id), kron(id, lo)};
  LindbladGenerator two = LindbladGenerator::zero(4);
  for (const Matrix& v : ops) two.jumps.push_back({v, 1.0});
  Matrix ee = kron(ex, ex);
  double two_value = g2(two, DensityMatrix(ee));
  brute.residual(std::abs(two_value - oracle::g2_double_sum(ops, ee)), 1e-10);

  for (int k = 0; k < 20; ++k) {
    LindbladGenerator l = random_generator(3, 3, rng);
    DensityMatrix rho = random_density(3, rng);
    std::vector<Matrix> folded = to_standard_form(l).folded();
    brute.residual(std::abs(g2(l, rho) - oracle::g2_double_sum(folded, rho.matrix())), 1e-10);
    Matrix u = random_unitary(static_cast<Index>(folded.size()), rng);
    LindbladGenerator mixed = LindbladGenerator::zero(3);
    for (Index a = 0; a < u.rows(); ++a) {
      Matrix v = Matrix::Zero(3, 3);
      for (Index b = 0; b < u.cols(); ++b) v += u(a, b) * folded[static_cast<std::size_t>(b)];
      mixed.jumps.push_back({v, 1.0});
    }
    remix.residual(std::abs(g2(mixed, rho) - g2(l, rho)), 1e-10);
  }

  LindbladGenerator l = random_generator(3, 3, rng, false);
  DensityMatrix rho = random_density(3, rng);
  std::vector<double> eps{0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
  auto rows = g2_stability_scan(l, rho, eps, PerturbationModel{0.4, 0.4}, 100, 2026);
  auto front = g2_frontier(rows);
  bool monotone = front.size() == eps.size();
  for (std::size_t i = 1; i < front.size(); ++i) monotone = monotone && front[i].first_failure >= front[i - 1].first_failure;

  bool ok = anti && unitary.ok && brute.ok && remix.ok && monotone;
  return {ok, fmt("sigma_- g2=0 %s; unitary dev %.1e; two-emitter |ee> g2=%.6f (oracle dev %.1e); remix dev %.1e; "
                  "frontier over 100 trials %s",
                  anti ? "exact" : "FAILED", unitary.worst, two_value, brute.worst, remix.worst,
                  monotone ? "monotone" : "NOT monotone")};
}

std::string run_binary(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

Outcome determinism() {
  const std::string data = LINDBLAD_DATA_DIR;
  std::vector<std::vector<std::string>> cmds = {
      {"scan", "--input", data + "/amplitude_damping.json", "--seed", "9"},
      {"g2-scan", "--input", data + "/two_emitters.json", "--seed", "9"},
      {"mlsi", "--input", data + "/amplitude_damping.json"},
      {"stability", "--input", data + "/amplitude_damping.json"},
      {"compare", "--input", data + "/amplitude_damping.json"},
  };
  int identical = 0, total = 0;
  for (const auto& c : cmds) {
    cli::RunResult a = cli::run(c), b = cli::run(c);
    std::vector<std::string> threaded = c;
    threaded.insert(threaded.end(), {"--jobs", "3"});
    cli::RunResult t = cli::run(threaded);
    ++total;
    if (a.exit_code == 0 && !a.out.empty() && a.out == b.out && a.out == t.out) ++identical;
  }
  // separate processes of the installed binary
  std::string cmd = std::string(LINDBLAD_CLI) + " scan --input " + data + "/amplitude_damping.json --seed 4";
  std::string p1 = run_binary(cmd), p2 = run_binary(cmd);
  std::string in_process = cli::run({"scan", "--input", data + "/amplitude_damping.json", "--seed", "4"}).out;
  ++total;
  if (!p1.empty() && p1 == p2 && p1 == in_process) ++identical;
  return {identical == total, fmt("%d/%d command outputs byte-identical across repeats, --jobs 3 and processes",
                                  identical, total)};
}

}  // namespace

int main() {
  std::vector<ComparisonPair> pairs = comparison_pairs();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 full-basis depolarizer identity", full_basis_depolarizer},
      {"C2 D^*D = m", derivation_identity},
      {"C3 comparison cross-validation", [&] { return comparison_cross_validation(pairs); }},
      {"C4 gradient/jump-map equivalence", [&] { return gradient_jump_equivalence(pairs); }},
      {"C5 truncation invariance", truncation_invariance},
      {"C6 depolarizer construction", depolarizer_construction},
      {"C7 order norm", order_norm_checks},
      {"C8 Dirichlet form and spectral gap", dirichlet_and_gap},
      {"C9 entropy production", entropy_production_fd},
      {"C10 stability chain", stability_chain},
      {"C11 g2 ground truths and frontier", g2_checks},
      {"C12 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
