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

#include <doctest.h>

#include <random>

#include "lindblad/conditional_expectation.hpp"
#include "lindblad/optics.hpp"
#include "lindblad/random.hpp"
#include "oracles.hpp"

using namespace lindblad;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
// excited state e_0, ground state e_1
Matrix lowering() { return mat2(0, 0, 1, 0); }
Matrix excited() { return mat2(1, 0, 0, 0); }
Matrix ground() { return mat2(0, 0, 0, 1); }

LindbladGenerator from_jumps(Index n, std::vector<Matrix> ops) {
  LindbladGenerator g = LindbladGenerator::zero(n);
  for (Matrix& v : ops) g.jumps.push_back({std::move(v), 1.0});
  return g;
}

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("jump map examples") {
  JumpMap none = jump_map(LindbladGenerator::zero(2));
  CHECK(max_abs(none.superop()) == 0.0);

  JumpMap lo = jump_map(from_jumps(2, {lowering()}));
  CHECK(max_abs(lo.apply(Matrix::Identity(2, 2)) - excited()) < 1e-12);

  // standard-form jumps of -(I - E_tau): Psi = E_tau - id / n^2
  for (Index n : {2, 3}) {
    JumpMap dep = jump_map(depolarizer_generator(SubalgebraSpec::scalars(n)).unit_generator(n));
    Matrix want = conditional_expectation_superop(SubalgebraSpec::scalars(n)) -
                  Matrix::Identity(n * n, n * n) / double(n * n);
    CHECK(max_abs(dep.superop() - want) < 1e-10);
  }
}

TEST_CASE("jump map is determined by the gradient") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    LindbladGenerator l = random_generator(3, 3, rng);
    // unitary remixing plus scalar offsets changes the representation, not Gamma
    LindbladGenerator other = LindbladGenerator::zero(3);
    other.hamiltonian = random_hermitian(3, rng);
    Matrix u = random_unitary(3, rng);
    for (Index a = 0; a < 3; ++a) {
      Matrix v = Matrix::Zero(3, 3);
      for (Index b = 0; b < 3; ++b)
        v += u(a, b) * std::sqrt(l.jumps[static_cast<std::size_t>(b)].weight) * l.jumps[static_cast<std::size_t>(b)].op;
      other.jumps.push_back({v + Complex(0.2 * a, -0.1) * Matrix::Identity(3, 3), 1.0});
    }
    REQUIRE(max_abs(gradient_matrix(l).matrix - gradient_matrix(other).matrix) < 1e-9);
    CHECK(max_abs(jump_map(l).superop() - jump_map(other).superop()) < 1e-9);
  }
}

TEST_CASE("Choi factorization and positivity") {
  std::mt19937_64 rng(2);
  for (Index n : {2, 3, 4}) {
    JumpMap psi = jump_map(random_generator(n, 3, rng));
    ChoiMatrix c = choi_matrix(psi);
    CHECK(max_abs(c.factor.adjoint() * c.factor - c.matrix) < 1e-10);
    CHECK(is_psd(c.matrix));
    // blocks (r, s) hold Psi(|r><s|)
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s)
        CHECK(max_abs(c.matrix.block(r * n, s * n, n, n) - psi.apply(matrix_unit(n, r, s))) < 1e-10);
  }
}

TEST_CASE("predual trace identity and duality") {
  std::mt19937_64 rng(3);
  for (Index n : {2, 3, 4}) {
    for (int k = 0; k < 100; ++k) {
      JumpMap psi = jump_map(random_generator(n, 1 + k % 3, rng));
      Matrix rho = random_density(n, rng).matrix();
      Matrix id = Matrix::Identity(n, n);
      CHECK(std::abs(psi.apply_predual(rho).trace() - (rho * psi.apply(id)).trace()) < 1e-10);
      Complex lhs = psi.apply_predual(psi.apply_predual(rho)).trace();
      Complex rhs = (rho * psi.apply(psi.apply(id))).trace();
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
    }
  }
}

TEST_CASE("jump-map comparison matches the gradient route") {
  std::mt19937_64 rng(4);
  LindbladGenerator g = random_generator(3, 2, rng);
  ComparisonResult same = compare_jump_maps(g, g);
  CHECK(same.holds);
  REQUIRE(same.optimal_c);
  CHECK(*same.optimal_c == doctest::Approx(1.0).epsilon(1e-6));

  for (int k = 0; k < 10; ++k) {
    LindbladGenerator lp = random_generator(3, 3, rng, false);
    LindbladGenerator l = LindbladGenerator::zero(3);
    std::normal_distribution<double> gauss;
    Matrix v = Matrix::Zero(3, 3);
    for (const Jump& q : lp.jumps) v += gauss(rng) * q.op;
    l.jumps.push_back({v, 1.0});
    ComparisonResult a = compare(l, lp), b = compare_jump_maps(l, lp);
    REQUIRE(a.optimal_c);
    REQUIRE(b.optimal_c);
    CHECK(std::abs(*a.optimal_c - *b.optimal_c) <= 1e-6 * *a.optimal_c);
    double ref = oracle::loewner_constant(choi_matrix(jump_map(l)).matrix, choi_matrix(jump_map(lp)).matrix);
    CHECK(std::abs(*b.optimal_c - ref) <= 1e-6 * ref);
  }

  LindbladGenerator x = from_jumps(2, {mat2(0, 1, 1, 0)});
  LindbladGenerator z = from_jumps(2, {mat2(1, 0, 0, -1)});
  CHECK_FALSE(compare(x, z).holds);
  CHECK_FALSE(compare_jump_maps(x, z).holds);
}

TEST_CASE("emission rate examples") {
  DensityMatrix e(excited()), g(ground());
  CHECK(emission_rate(LindbladGenerator::zero(2), e) == 0.0);
  LindbladGenerator lo = from_jumps(2, {lowering()});
  CHECK(emission_rate(lo, e) == doctest::Approx(1.0));
  CHECK(std::abs(emission_rate(lo, g)) < 1e-15);

  std::mt19937_64 rng(5);
  LindbladGenerator r = random_generator(3, 3, rng);
  DensityMatrix rho = random_density(3, rng);
  StandardForm sf = to_standard_form(r);
  double want = 0;
  for (const Matrix& v : sf.folded()) want += (v.adjoint() * v * rho.matrix()).trace().real();
  CHECK(emission_rate(r, rho) == doctest::Approx(want).epsilon(1e-12));
  CHECK(emission_rate(r, rho) >= 0.0);
}

TEST_CASE("g2 ground truths") {
  LindbladGenerator lo = from_jumps(2, {lowering()});
  CHECK(g2(lo, DensityMatrix(excited())) == 0.0);
  Matrix mix = 0.3 * excited() + 0.7 * ground();
  CHECK(std::abs(g2(lo, DensityMatrix(mix))) < 1e-15);
  CHECK(throws_kind(ErrorKind::ZeroEmission, [&] { g2(lo, DensityMatrix(ground())); }));

  std::mt19937_64 rng(6);
  LindbladGenerator flip = from_jumps(2, {mat2(0, 1, 1, 0)});
  for (int k = 0; k < 5; ++k) CHECK(std::abs(g2(flip, random_density(2, rng)) - 1.0) < 1e-10);

  // two independent emitters in |ee>
  Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> ops{kron(lowering(), id), kron(id, lowering())};
  LindbladGenerator two = from_jumps(4, ops);
  Matrix ee = kron(excited(), excited());
  double want = oracle::g2_double_sum(ops, ee);
  CHECK(std::abs(g2(two, DensityMatrix(ee)) - want) < 1e-10);
  CHECK(want == doctest::Approx(0.5));
}

TEST_CASE("g2 is invariant under unitary remixing of the Kraus operators") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    LindbladGenerator l = random_generator(3, 3, rng);
    DensityMatrix rho = random_density(3, rng);
    std::vector<Matrix> folded = to_standard_form(l).folded();
    double ref = oracle::g2_double_sum(folded, rho.matrix());
    CHECK(std::abs(g2(l, rho) - ref) < 1e-10 * (1 + ref));
    Matrix u = random_unitary(static_cast<Index>(folded.size()), rng);
    LindbladGenerator mixed = LindbladGenerator::zero(3);
    mixed.hamiltonian = l.hamiltonian;
    for (Index a = 0; a < u.rows(); ++a) {
      Matrix v = Matrix::Zero(3, 3);
      for (Index b = 0; b < u.cols(); ++b) v += u(a, b) * folded[static_cast<std::size_t>(b)];
      mixed.jumps.push_back({v, 1.0});
    }
    CHECK(std::abs(g2(mixed, rho) - g2(l, rho)) < 1e-10);
  }
}

TEST_CASE("g2 is invariant under weight scaling") {
  std::mt19937_64 rng(8);
  LindbladGenerator l = random_generator(3, 2, rng);
  DensityMatrix rho = random_density(3, rng);
  for (double s : {0.1, 2.0, 17.0}) CHECK(std::abs(g2(l.scaled(s), rho) - g2(l, rho)) < 1e-10);
}

TEST_CASE("g2 stability scan") {
  std::mt19937_64 rng(9);
  LindbladGenerator l = random_generator(3, 3, rng, false);
  DensityMatrix rho = random_density(3, rng);
  std::vector<double> eps{0.01, 0.05, 0.1, 0.3};

  auto zero = g2_stability_scan(l, rho, eps, PerturbationModel{0.0, 0.0}, 4, 5);
  for (const G2ScanRow& r : zero) {
    CHECK(r.delta < 1e-12);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
  }

  auto a = g2_stability_scan(l, rho, eps, PerturbationModel{0.4, 0.4}, 30, 17, 1);
  auto b = g2_stability_scan(l, rho, eps, PerturbationModel{0.4, 0.4}, 30, 17, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].delta == b[i].delta);
    CHECK(a[i].g2_value == b[i].g2_value);
  }
  double base = g2(l, rho);
  for (const G2ScanRow& r : a) {
    CHECK(r.lower_ok == (r.g2_value >= (1 - r.epsilon) * base));
    CHECK(r.upper_ok == (r.g2_value <= (1 + r.epsilon) * base));
  }
  auto f = g2_frontier(a);
  REQUIRE(f.size() == eps.size());
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i].first_failure >= f[i - 1].first_failure);

  LindbladGenerator lo = from_jumps(2, {lowering()});
  CHECK(throws_kind(ErrorKind::DegenerateState, [&] {
    g2_stability_scan(lo, DensityMatrix(excited()), eps, PerturbationModel{}, 2, 1);
  }));
}
