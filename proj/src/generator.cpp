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

#include "lindblad/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lindblad/gradient.hpp"

namespace lindblad {

LindbladGenerator LindbladGenerator::zero(Index n) {
  LindbladGenerator g;
  g.dim = n;
  g.hamiltonian = Matrix::Zero(n, n);
  return g;
}

void LindbladGenerator::validate() const {
  if (dim < 1) throw Error(ErrorKind::DimensionMismatch, "generator dimension must be positive");
  if (hamiltonian.rows() != dim || hamiltonian.cols() != dim)
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian has the wrong size");
  require_hermitian(hamiltonian, "Hamiltonian");
  for (const Jump& j : jumps) {
    if (j.op.rows() != dim || j.op.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "jump operator has the wrong size");
    if (!(j.weight >= 0.0) || !std::isfinite(j.weight))
      throw Error(ErrorKind::InputError, "jump weights must be finite and non-negative");
  }
}

LindbladGenerator LindbladGenerator::to_half() const {
  LindbladGenerator out = *this;
  if (convention == Convention::Double)
    for (Jump& j : out.jumps) j.op *= std::sqrt(2.0);
  out.convention = Convention::Half;
  return out;
}

std::vector<Matrix> LindbladGenerator::folded_jumps() const {
  std::vector<Matrix> out;
  for (const Jump& j : to_half().jumps)
    if (j.weight > 0.0) out.push_back(std::sqrt(j.weight) * j.op);
  return out;
}

LindbladGenerator LindbladGenerator::scaled(double s) const {
  LindbladGenerator out = *this;
  out.hamiltonian *= s;
  for (Jump& j : out.jumps) j.weight *= s;
  return out;
}

std::vector<Matrix> StandardForm::folded() const {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < units.size(); ++i) out.push_back(std::sqrt(weights[i]) * units[i]);
  return out;
}

LindbladGenerator StandardForm::as_generator() const {
  LindbladGenerator g = LindbladGenerator::zero(dim());
  g.hamiltonian = hamiltonian;
  for (std::size_t i = 0; i < units.size(); ++i) g.jumps.push_back({units[i], weights[i]});
  return g;
}

namespace {

Matrix dissipator(const Matrix& v, double c) {
  Index n = v.rows();
  Matrix vv = v.adjoint() * v;
  Matrix id = Matrix::Identity(n, n);
  return c * (kron(v.transpose(), v.adjoint()) - 0.5 * kron(id, vv) - 0.5 * kron(vv.transpose(), id));
}

Matrix hamiltonian_part(const Matrix& h) {
  Index n = h.rows();
  Matrix id = Matrix::Identity(n, n);
  return kI * (kron(id, h) - kron(h.transpose(), id));
}

}  // namespace

Matrix superoperator_matrix(const LindbladGenerator& gen) {
  gen.validate();
  LindbladGenerator g = gen.to_half();
  Matrix s = hamiltonian_part(g.hamiltonian);
  for (const Jump& j : g.jumps) s += dissipator(j.op, j.weight);
  return s;
}

Matrix superoperator_matrix(const StandardForm& sf) {
  return superoperator_matrix(sf.as_generator());
}

Matrix superoperator_matrix(const GksForm& gks) {
  return superoperator_matrix(to_generator(gks));
}

double operator_norm(const Matrix& superop) { return spectral_norm(superop); }

namespace {

// Diagonalizes the coefficient matrix C over a tau-orthonormal traceless basis.
StandardForm from_coefficients(const Matrix& c, const std::vector<Matrix>& basis, const Matrix& h) {
  StandardForm sf;
  sf.hamiltonian = h;
  if (basis.empty()) return sf;
  HermitianEig e = hermitian_eig(0.5 * (c + c.adjoint()));
  double top = e.values.cwiseAbs().maxCoeff();
  if (e.values(0) < -default_tolerances().psd * (1.0 + top))
    throw Error(ErrorKind::CoeffNotPSD, "coefficient matrix has a negative eigenvalue");
  Index n = h.rows();
  for (Index k = e.values.size() - 1; k >= 0; --k) {
    double lambda = e.values(k);
    if (lambda <= 1e-12 * std::max(top, 1e-300) || top == 0.0) continue;
    Matrix u = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < basis.size(); ++a)
      u += std::conj(e.vectors(static_cast<Index>(a), k)) * basis[a];
    // fix the phase so the largest entry is real and positive
    Index r, col;
    u.cwiseAbs().maxCoeff(&r, &col);
    u *= std::abs(u(r, col)) / u(r, col);
    sf.units.push_back(u);
    sf.weights.push_back(lambda);
  }
  return sf;
}

}  // namespace

StandardForm to_standard_form(const LindbladGenerator& gen) {
  gen.validate();
  LindbladGenerator g = gen.to_half();
  Index n = g.dim;
  std::vector<Matrix> basis = traceless_basis(n);
  Index d = static_cast<Index>(basis.size());
  Matrix h = g.hamiltonian;
  Matrix id = Matrix::Identity(n, n);
  Matrix coeff = Matrix::Zero(d, d);
  for (const Jump& j : g.jumps) {
    if (j.weight == 0.0) continue;
    Complex a = tau(j.op);
    Matrix w = j.op - a * id;
    // the scalar offset turns into a commutator term
    h += j.weight * (0.5 * kI) * (std::conj(a) * w - a * w.adjoint());
    Vector b(d);
    for (Index k = 0; k < d; ++k) b(k) = tau(basis[static_cast<std::size_t>(k)].adjoint() * w);
    coeff += j.weight * b.conjugate() * b.transpose();
  }
  return from_coefficients(coeff, basis, 0.5 * (h + h.adjoint()));
}

LindbladGenerator to_generator(const GksForm& gks) {
  if (gks.basis.empty()) throw Error(ErrorKind::InputError, "GKS basis is empty");
  Index n = gks.basis.front().rows();
  Index d = static_cast<Index>(gks.basis.size());
  if (gks.coeff.rows() != d || gks.coeff.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "GKS coefficient matrix does not match the basis");
  for (const Matrix& f : gks.basis)
    if (f.rows() != n || f.cols() != n)
      throw Error(ErrorKind::DimensionMismatch, "GKS basis elements differ in size");
  require_hermitian(gks.coeff, "GKS coefficient matrix");
  HermitianEig e = hermitian_eig(gks.coeff);
  double top = d ? e.values.cwiseAbs().maxCoeff() : 0.0;
  if (d && e.values(0) < -default_tolerances().psd * (1.0 + top))
    throw Error(ErrorKind::CoeffNotPSD, "GKS coefficient matrix is not positive semidefinite");
  LindbladGenerator g = LindbladGenerator::zero(n);
  if (gks.hamiltonian.size()) g.hamiltonian = gks.hamiltonian;
  g.convention = gks.convention;
  for (Index k = 0; k < d; ++k) {
    if (e.values(k) <= 0.0) continue;
    Matrix v = Matrix::Zero(n, n);
    for (Index a = 0; a < d; ++a) v += std::conj(e.vectors(a, k)) * gks.basis[static_cast<std::size_t>(a)];
    g.jumps.push_back({v, e.values(k)});
  }
  return g;
}

StandardForm to_standard_form(const GksForm& gks) { return to_standard_form(to_generator(gks)); }

ValidationResult validate_lindblad(const Matrix& superop, double tol) {
  require_square(superop, "superoperator");
  Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(superop.rows()))));
  if (n * n != superop.rows())
    throw Error(ErrorKind::DimensionMismatch, "superoperator size is not a square number");
  double scale = 1.0 + max_abs(superop);
  ValidationResult out;

  double unital = max_abs(apply_superoperator(superop, Matrix::Identity(n, n))) / scale;
  out.witnesses.push_back({"unital", unital <= tol, unital});

  double star = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Matrix a = apply_superoperator(superop, matrix_unit(n, j, i));
      Matrix b = apply_superoperator(superop, matrix_unit(n, i, j)).adjoint();
      star = std::max(star, max_abs(a - b));
    }
  star /= scale;
  out.witnesses.push_back({"star_preserving", star <= tol, star});

  GradientMatrix m = gradient_matrix(superop);
  double herm = max_abs(m.matrix - m.matrix.adjoint()) / (1.0 + max_abs(m.matrix));
  if (herm > tol) {
    out.witnesses.push_back({"gradient_psd", false, -herm});
  } else {
    double margin = psd_margin(0.5 * (m.matrix + m.matrix.adjoint()));
    out.witnesses.push_back({"gradient_psd", margin >= -tol, margin});
  }
  out.valid = std::all_of(out.witnesses.begin(), out.witnesses.end(),
                          [](const Witness& w) { return w.passed; });
  return out;
}

bool check_detailed_balance(const Matrix& superop, const DensityMatrix& sigma, double tol) {
  if (!sigma.strict()) throw Error(ErrorKind::SigmaNotStrict, "detailed balance needs a strict sigma");
  Index n = sigma.dim();
  if (superop.rows() != n * n) throw Error(ErrorKind::DimensionMismatch, "sigma does not match generator");
  Matrix g = kron(sigma.matrix().transpose(), Matrix::Identity(n, n));
  Matrix a = g * superop;
  return max_abs(a - a.adjoint()) <= tol * (1.0 + max_abs(a));
}

bool check_detailed_balance(const LindbladGenerator& gen, const DensityMatrix& sigma, double tol) {
  return check_detailed_balance(superoperator_matrix(gen), sigma, tol);
}

LindbladGenerator DetailedBalanceData::as_generator() const {
  LindbladGenerator g = LindbladGenerator::zero(dim());
  for (const DbJump& j : jumps) g.jumps.push_back({j.op, std::exp(-0.5 * j.omega)});
  return g;
}

namespace {

constexpr double kOmegaTol = 1e-8;

std::vector<double> cluster_values(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  std::vector<int> counts;
  for (double v : values) {
    if (!reps.empty() && v - reps.back() / counts.back() <= kOmegaTol) {
      reps.back() += v;
      ++counts.back();
    } else {
      reps.push_back(v);
      counts.push_back(1);
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) reps[i] /= counts[i];
  return reps;
}

std::size_t nearest(const std::vector<double>& reps, double v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (std::abs(reps[i] - v) < std::abs(reps[best] - v)) best = i;
  return best;
}

}  // namespace

void regroup(DetailedBalanceData& db) {
  std::vector<double> raw;
  for (const DbJump& j : db.jumps) raw.push_back(j.omega);
  db.omegas = cluster_values(raw);
  db.partition.assign(db.omegas.size(), {});
  for (std::size_t i = 0; i < db.jumps.size(); ++i)
    db.partition[nearest(db.omegas, db.jumps[i].omega)].push_back(i);
}

DetailedBalanceData db_spectral_data(const LindbladGenerator& gen, const DensityMatrix& sigma) {
  Matrix s_in = superoperator_matrix(gen);
  if (!check_detailed_balance(s_in, sigma))
    throw Error(ErrorKind::NotDetailedBalanced, "generator is not GNS-symmetric for sigma");
  Index n = gen.dim;
  StandardForm sf = to_standard_form(gen);
  const HermitianEig& se = sigma.eig();
  const Matrix& q = se.vectors;
  RealVector logs = se.values.array().log();

  // modular eigenbasis, grouped by omega
  std::vector<double> raw{0.0};
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (u != v) raw.push_back(logs(v) - logs(u));
  std::vector<double> reps = cluster_values(raw);
  std::size_t zero = nearest(reps, 0.0);
  std::vector<std::vector<Matrix>> fam(reps.size());
  double sn = std::sqrt(static_cast<double>(n));
  std::vector<Matrix> diag = traceless_basis(n);
  for (Index k = 0; k + 1 < n; ++k) fam[zero].push_back(q * diag[static_cast<std::size_t>(k)] * q.adjoint());
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      if (u == v) continue;
      std::size_t c = nearest(reps, logs(v) - logs(u));
      if (c == zero) {
        if (u > v) continue;
        Matrix sym = (matrix_unit(n, u, v) + matrix_unit(n, v, u)) * (sn / std::sqrt(2.0));
        Matrix asym = (-kI * matrix_unit(n, u, v) + kI * matrix_unit(n, v, u)) * (sn / std::sqrt(2.0));
        fam[c].push_back(q * sym * q.adjoint());
        fam[c].push_back(q * asym * q.adjoint());
      } else {
        fam[c].push_back(q * matrix_unit(n, u, v) * q.adjoint() * sn);
      }
    }

  std::vector<Matrix> basis;
  std::vector<std::size_t> owner;
  for (std::size_t c = 0; c < fam.size(); ++c)
    for (const Matrix& f : fam[c]) {
      basis.push_back(f);
      owner.push_back(c);
    }
  Index d = static_cast<Index>(basis.size());
  Matrix coeff = Matrix::Zero(d, d);
  for (std::size_t g = 0; g < sf.units.size(); ++g) {
    Vector b(d);
    for (Index a = 0; a < d; ++a) b(a) = tau(basis[static_cast<std::size_t>(a)].adjoint() * sf.units[g]);
    coeff += sf.weights[g] * b.conjugate() * b.transpose();
  }
  double top = max_abs(coeff);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      if (owner[static_cast<std::size_t>(a)] != owner[static_cast<std::size_t>(b)] &&
          std::abs(coeff(a, b)) > 1e-7 * (1.0 + top))
        throw Error(ErrorKind::NotDetailedBalanced, "coefficients mix modular eigenspaces");

  DetailedBalanceData db;
  db.sigma = sigma;
  auto block_of = [&](std::size_t c, std::vector<Index>& idx) {
    idx.clear();
    for (Index a = 0; a < d; ++a)
      if (owner[static_cast<std::size_t>(a)] == c) idx.push_back(a);
    Matrix blk(static_cast<Index>(idx.size()), static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        blk(static_cast<Index>(i), static_cast<Index>(j)) = coeff(idx[i], idx[j]);
    return blk;
  };
  double cut = 1e-12 * std::max(top, 1e-300);
  std::vector<Index> idx;

  // omega = 0: real symmetric coefficients in a self-adjoint basis
  {
    Matrix blk = block_of(zero, idx);
    if (!idx.empty()) {
      RealMatrix re = 0.5 * (blk.real() + blk.real().transpose());
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(re);
      for (Index k = re.rows() - 1; k >= 0; --k) {
        double lambda = es.eigenvalues()(k);
        if (lambda <= cut) continue;
        Matrix v = Matrix::Zero(n, n);
        for (std::size_t a = 0; a < idx.size(); ++a)
          v += es.eigenvectors()(static_cast<Index>(a), k) * basis[static_cast<std::size_t>(idx[a])];
        std::size_t self = db.jumps.size();
        db.jumps.push_back({std::sqrt(lambda) * v, 0.0, self});
      }
    }
  }
  for (std::size_t c = 0; c < reps.size(); ++c) {
    if (c == zero || reps[c] < 0.0) continue;
    double omega = reps[c];
    Matrix blk = block_of(c, idx);
    HermitianEig e = hermitian_eig(0.5 * (blk + blk.adjoint()));
    for (Index k = e.values.size() - 1; k >= 0; --k) {
      double lambda = e.values(k);
      if (lambda <= cut) continue;
      Matrix v = Matrix::Zero(n, n);
      for (std::size_t a = 0; a < idx.size(); ++a)
        v += std::conj(e.vectors(static_cast<Index>(a), k)) * basis[static_cast<std::size_t>(idx[a])];
      v *= std::sqrt(lambda * std::exp(0.5 * omega));
      std::size_t i = db.jumps.size();
      db.jumps.push_back({v, omega, i + 1});
      db.jumps.push_back({v.adjoint(), -omega, i});
    }
  }
  regroup(db);

  Matrix s_db = superoperator_matrix(db.as_generator());
  if (max_abs(s_db - s_in) > 1e-9 * (1.0 + max_abs(s_in)))
    throw Error(ErrorKind::NotDetailedBalanced, "modular regrouping does not reproduce the generator");
  Matrix si = hermitian_function(sigma.matrix(), [](double x) { return 1.0 / x; });
  for (const DbJump& j : db.jumps) {
    Matrix r = sigma.matrix() * j.op * si - std::exp(-j.omega) * j.op;
    if (max_abs(r) > 1e-8 * (1.0 + max_abs(j.op)))
      throw Error(ErrorKind::NotDetailedBalanced, "jump is not a modular eigenvector");
  }
  return db;
}

FixedPointAlgebra fixed_point_algebra(const LindbladGenerator& gen, std::uint64_t seed) {
  gen.validate();
  Index n = gen.dim;
  LindbladGenerator g = gen.to_half();
  std::vector<Matrix> ops;
  if (max_abs(g.hamiltonian) > 0.0) ops.push_back(g.hamiltonian);
  for (const Matrix& v : g.folded_jumps()) {
    if (max_abs(v) == 0.0) continue;
    ops.push_back(v);
    ops.push_back(v.adjoint());
  }
  Matrix id = Matrix::Identity(n, n);
  Matrix k(static_cast<Index>(ops.size()) * n * n, n * n);
  for (std::size_t i = 0; i < ops.size(); ++i)
    k.middleRows(static_cast<Index>(i) * n * n, n * n) =
        kron(id, ops[i]) - kron(ops[i].transpose(), id);
  Matrix ns = null_space(k, 1e-10);

  FixedPointAlgebra out;
  double sn = std::sqrt(static_cast<double>(n));
  for (Index c = 0; c < ns.cols(); ++c) out.basis.push_back(unvec(ns.col(c), n) * sn);

  Matrix s = superoperator_matrix(g);
  double scale = 1.0 + max_abs(s);
  for (const Matrix& x : out.basis)
    if (max_abs(apply_superoperator(s, x)) > 1e-9 * scale * (1.0 + max_abs(x)))
      throw Error(ErrorKind::FixedPointsNotAlgebra, "commutant element is not a fixed point");
  Index kernel = null_space(s, 1e-10).cols();
  if (kernel != static_cast<Index>(out.basis.size()))
    throw Error(ErrorKind::FixedPointsNotAlgebra, "fixed points of L differ from the jump commutant");
  out.spec = block_structure(out.basis, seed);
  return out;
}

}  // namespace lindblad
