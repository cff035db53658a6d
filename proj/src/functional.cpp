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

#include "lindblad/functional.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lindblad/conditional_expectation.hpp"

namespace lindblad {

Matrix sigma_projection(const DensityMatrix& sigma, std::span<const Matrix> basis) {
  Index n = sigma.dim();
  if (basis.empty()) return Matrix::Zero(n * n, n * n);
  Index d = static_cast<Index>(basis.size());
  Matrix b(n * n, d);
  for (Index i = 0; i < d; ++i) b.col(i) = vec(basis[static_cast<std::size_t>(i)]);
  Matrix weight = kron(sigma.matrix().transpose(), Matrix::Identity(n, n));
  Matrix gram = b.adjoint() * weight * b;
  return b * gram.ldlt().solve(b.adjoint() * weight);
}

namespace {

DirichletData assemble(const DetailedBalanceData& db, std::vector<Matrix> basis,
                       std::optional<SubalgebraSpec> spec) {
  DirichletData dd;
  dd.db = db;
  dd.fixed_basis = std::move(basis);
  dd.fixed_spec = std::move(spec);
  dd.projection = sigma_projection(db.sigma, dd.fixed_basis);
  return dd;
}

}  // namespace

DirichletData make_dirichlet_data(const DetailedBalanceData& db, std::uint64_t seed) {
  FixedPointAlgebra fp = fixed_point_algebra(db.as_generator(), seed);
  return assemble(db, fp.basis, fp.spec);
}

DirichletData make_dirichlet_data(const LindbladGenerator& l, const DensityMatrix& sigma, std::uint64_t seed) {
  if (!sigma.strict()) throw Error(ErrorKind::SigmaNotStrict, "sigma must be strictly positive");
  return make_dirichlet_data(db_spectral_data(l, sigma), seed);
}

Matrix conditional_expectation_sigma(const DirichletData& dd, const Matrix& x) {
  return apply_superoperator(dd.projection, x);
}

Matrix predual_projection(const DirichletData& dd, const Matrix& rho) {
  return unvec(dd.projection.adjoint() * vec(rho), dd.dim());
}

double bkm_variance(const DirichletData& dd, const Matrix& x) {
  require_same_dim(x, dd.sigma().matrix(), "bkm_variance");
  Matrix y = x - conditional_expectation_sigma(dd, x);
  return bkm_inner_product(dd.sigma().eig(), y, y).real();
}

double bkm_variance(const DensityMatrix& sigma, const SubalgebraSpec& n, const Matrix& x) {
  if (!sigma.strict()) throw Error(ErrorKind::SigmaNotStrict, "sigma must be strictly positive");
  if (n.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "spec does not match sigma");
  require_same_dim(x, sigma.matrix(), "bkm_variance");
  std::vector<Matrix> basis = algebra_basis(n);
  Matrix p = sigma_projection(sigma, basis);
  Matrix y = x - apply_superoperator(p, x);
  return bkm_inner_product(sigma.eig(), y, y).real();
}

namespace {

// Per-jump kernel weights e^{-omega/2} lm(e^{omega} s_u, s_v), halved
// because the jump set is closed under adjoints.
std::vector<RealMatrix> dirichlet_kernels(const DirichletData& dd) {
  const RealVector& s = dd.sigma().eig().values;
  Index n = s.size();
  std::vector<RealMatrix> out;
  for (const DbJump& j : dd.db.jumps) {
    RealMatrix k(n, n);
    double lift = std::exp(j.omega);
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v) k(u, v) = 0.5 * std::exp(-0.5 * j.omega) * log_mean(lift * s(u), s(v));
    out.push_back(k);
  }
  return out;
}

}  // namespace

double dirichlet_form(const DirichletData& dd, const Matrix& x) {
  require_same_dim(x, dd.sigma().matrix(), "dirichlet_form");
  const Matrix& q = dd.sigma().eig().vectors;
  std::vector<RealMatrix> kernels = dirichlet_kernels(dd);
  double total = 0.0;
  for (std::size_t j = 0; j < dd.db.jumps.size(); ++j) {
    Matrix c = q.adjoint() * commutator(dd.db.jumps[j].op, x) * q;
    total += (kernels[j].array() * c.cwiseAbs2().array()).sum();
  }
  return total;
}

Matrix dirichlet_gram(const DirichletData& dd, std::span<const Matrix> basis) {
  const Matrix& q = dd.sigma().eig().vectors;
  std::vector<RealMatrix> kernels = dirichlet_kernels(dd);
  Index d = static_cast<Index>(basis.size());
  Matrix gram = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < dd.db.jumps.size(); ++j) {
    std::vector<Matrix> c;
    for (const Matrix& b : basis) c.push_back(q.adjoint() * commutator(dd.db.jumps[j].op, b) * q);
    Matrix k = kernels[j].cast<Complex>();
    for (Index a = 0; a < d; ++a)
      for (Index b = a; b < d; ++b) {
        Complex v = (c[static_cast<std::size_t>(a)].conjugate().cwiseProduct(k).cwiseProduct(
                         c[static_cast<std::size_t>(b)]))
                        .sum();
        gram(a, b) += v;
        if (a != b) gram(b, a) += std::conj(v);
      }
  }
  return gram;
}

GapResult spectral_gap(const DirichletData& dd) {
  Index n = dd.dim();
  Matrix comp = Matrix::Identity(n * n, n * n) - dd.projection;
  Eigen::BDCSVD<Matrix> svd(comp, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  std::vector<Matrix> basis;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) basis.push_back(unvec(svd.matrixU().col(i), n));
  GapResult out;
  if (basis.empty()) return out;
  Index d = static_cast<Index>(basis.size());
  Matrix var(d, d);
  const HermitianEig& se = dd.sigma().eig();
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      var(a, b) = bkm_inner_product(se, basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)]);
  Matrix dir = dirichlet_gram(dd, basis);
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(0.5 * (dir + dir.adjoint()), 0.5 * (var + var.adjoint()));
  out.gap = ges.eigenvalues()(0);
  out.witness = Matrix::Zero(n, n);
  for (Index a = 0; a < d; ++a) out.witness += ges.eigenvectors()(a, 0) * basis[static_cast<std::size_t>(a)];
  return out;
}

GapResult spectral_gap(const DirichletData& dd, const SubalgebraSpec& n) {
  if (n.dim() != dd.dim()) throw Error(ErrorKind::DimensionMismatch, "spec does not match generator");
  std::vector<Matrix> given = algebra_basis(n);
  auto frob_projector = [&](const std::vector<Matrix>& basis) {
    Index m = dd.dim();
    Matrix b(m * m, static_cast<Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) b.col(static_cast<Index>(i)) = vec(basis[i]);
    Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeThinU);
    Index rank = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    Matrix u = svd.matrixU().leftCols(rank);
    return Matrix(u * u.adjoint());
  };
  if (max_abs(frob_projector(given) - frob_projector(dd.fixed_basis)) > 1e-8)
    throw Error(ErrorKind::FixedAlgebraMismatch, "spec is not the fixed-point algebra of the generator");
  return spectral_gap(dd);
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  HermitianEig er = hermitian_eig(rho), es = hermitian_eig(sigma);
  double smax = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);
  RealVector logs(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 1e-12 * smax) {
      logs(i) = std::log(es.values(i));
    } else {
      Complex w = es.vectors.col(i).adjoint() * rho * es.vectors.col(i);
      if (std::abs(w) > 1e-12) throw Error(ErrorKind::SupportViolation, "support of rho exceeds that of sigma");
      logs(i) = 0.0;
    }
  }
  double entropy = 0.0;
  for (Index i = 0; i < er.values.size(); ++i)
    if (er.values(i) > 0.0) entropy += er.values(i) * std::log(er.values(i));
  Matrix logsig = es.vectors * logs.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return entropy - (rho * logsig).trace().real();
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

double entropy_production(const DirichletData& dd, const DensityMatrix& rho) {
  require_same_dim(rho.matrix(), dd.sigma().matrix(), "entropy_production");
  const HermitianEig& er = rho.eig();
  if (er.values(0) <= default_tolerances().psd)
    throw Error(ErrorKind::RhoNotStrict, "entropy production needs a strictly positive state");
  Matrix sh = hermitian_function(dd.sigma().matrix(), [](double x) { return std::sqrt(x); });
  Matrix shi = hermitian_function(dd.sigma().matrix(), [](double x) { return 1.0 / std::sqrt(x); });
  Matrix x = shi * rho.matrix() * shi;
  const RealVector& lam = er.values;
  Index n = lam.size();
  double total = 0.0;
  for (const DbJump& j : dd.db.jumps) {
    Matrix y = er.vectors.adjoint() * (sh * commutator(j.op, x) * sh) * er.vectors;
    double up = std::exp(0.5 * j.omega), down = std::exp(-0.5 * j.omega);
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v)
        total += 0.5 * inverse_log_mean(up * lam(u), down * lam(v)) * std::norm(y(u, v));
  }
  return total;
}

double mlsi_ratio(const DirichletData& dd, const DensityMatrix& rho) {
  double d = relative_entropy(rho.matrix(), predual_projection(dd, rho.matrix()));
  if (d <= 1e-12) throw Error(ErrorKind::DegenerateState, "state is (numerically) a fixed point");
  return entropy_production(dd, rho) / d;
}

DirichletData amplify(const DirichletData& dd, Index d_r) {
  if (d_r < 1) throw Error(ErrorKind::InputError, "reference dimension must be positive");
  if (d_r == 1) return dd;
  Matrix ir = Matrix::Identity(d_r, d_r);
  DetailedBalanceData db;
  db.sigma = DensityMatrix(kron(dd.sigma().matrix(), ir / static_cast<double>(d_r)), true);
  for (const DbJump& j : dd.db.jumps) db.jumps.push_back({kron(j.op, ir), j.omega, j.partner});
  regroup(db);
  std::vector<Matrix> basis;
  double norm = std::sqrt(static_cast<double>(d_r));
  for (const Matrix& b : dd.fixed_basis)
    for (Index a = 0; a < d_r; ++a)
      for (Index c = 0; c < d_r; ++c) basis.push_back(kron(b, matrix_unit(d_r, a, c)) * norm);
  return assemble(db, std::move(basis), std::nullopt);
}

DensityMatrix sample_state(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix r = g * g.adjoint() + 1e-3 * Matrix::Identity(n, n);
  r /= r.trace().real();
  return DensityMatrix(0.5 * (r + r.adjoint()), true);
}

CmlsiProbe cmlsi_probe(const DirichletData& dd, Index d_r_max, std::size_t samples, std::uint64_t seed) {
  CmlsiProbe out;
  for (Index d = 1; d <= d_r_max; ++d) {
    DirichletData amp = amplify(dd, d);
    for (std::size_t i = 0; i < samples; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      DensityMatrix rho = sample_state(amp.dim(), rng);
      double ratio;
      try {
        ratio = mlsi_ratio(amp, rho);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateState) continue;
        throw;
      }
      if (ratio < out.value) {
        out.value = ratio;
        out.reference_dim = d;
        out.argmin = rho.matrix();
      }
    }
  }
  if (out.reference_dim == 0) throw Error(ErrorKind::DegenerateState, "every sampled state was a fixed point");
  return out;
}

namespace {

void require_same_fixed_points(const DirichletData& l, const DirichletData& lp) {
  if (l.dim() != lp.dim()) throw Error(ErrorKind::DimensionMismatch, "generators act on different spaces");
  if (max_abs(l.projection - lp.projection) > 1e-8)
    throw Error(ErrorKind::FixedAlgebraMismatch, "generators have different fixed-point projections");
}

}  // namespace

bool stability_check_pi(const DirichletData& l, const DirichletData& lp, double eps) {
  require_same_fixed_points(l, lp);
  double g = spectral_gap(l).gap, gp = spectral_gap(lp).gap;
  if (std::isinf(g) && std::isinf(gp)) return true;
  return (1.0 - eps) * g <= gp + kStabilitySlack * std::max(1.0, std::abs(gp));
}

bool stability_check_cmlsi(const DirichletData& l, const DirichletData& lp, double eps,
                           std::span<const DensityMatrix> states) {
  require_same_fixed_points(l, lp);
  std::map<Index, std::pair<DirichletData, DirichletData>> cache;
  for (const DensityMatrix& rho : states) {
    if (rho.dim() % l.dim() != 0) throw Error(ErrorKind::DimensionMismatch, "state dimension is not n * d_R");
    Index d = rho.dim() / l.dim();
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, std::make_pair(amplify(l, d), amplify(lp, d))).first;
    double ep = entropy_production(it->second.first, rho);
    double epp = entropy_production(it->second.second, rho);
    if ((1.0 - eps) * ep > epp + kStabilitySlack * (std::abs(ep) + std::abs(epp)) + 1e-14) return false;
  }
  return true;
}

}  // namespace lindblad
