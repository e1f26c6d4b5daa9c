#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biorth/ensembles.hpp"
#include "biorth/linalg.hpp"
#include "biorth/rng.hpp"

#include "support.hpp"

using namespace biorth;
using testsupport::approx_rel;

namespace {

const Complex kOne{1.0, 0.0};
const Complex kZero{0.0, 0.0};

CMatrix from_rows(const std::vector<CVector>& rows) {
  CMatrix a(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) a.at(i, j) = rows[i][j];
  return a;
}

}  // namespace

TEST_CASE("inner product basics") {
  CHECK(inner({kOne, kZero}, {kZero, kOne}) == kZero);
  CHECK(inner({kOne, kZero}, {kOne, kZero}) == kOne);
  const Complex one_i{1.0, 1.0};
  CHECK(inner({one_i, kZero}, {one_i, kZero}) == Complex{2.0, 0.0});
  CHECK_THROWS_AS(inner({kOne}, {kOne, kZero}), input_error);
}

TEST_CASE("inner is conjugate symmetric") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    CVector u(8), v(8);
    for (int i = 0; i < 8; ++i) {
      u[i] = rng.complex_gaussian();
      v[i] = rng.complex_gaussian();
    }
    const Complex a = inner(u, v);
    const Complex b = std::conj(inner(v, u));
    CHECK(std::abs(a - b) <= 1e-15 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("gram examples") {
  // orthonormal set -> identity
  GramMatrix g = gram({{kOne, kZero}, {kZero, kOne}});
  CHECK(g.m.at(0, 0) == kOne);
  CHECK(g.m.at(0, 1) == kZero);
  CHECK(g.m.at(1, 1) == kOne);

  // {(1,0),(1,1)} -> [[1,1],[1,2]]
  g = gram({{kOne, kZero}, {kOne, kOne}});
  CHECK(g.m.at(0, 0) == kOne);
  CHECK(g.m.at(0, 1) == kOne);
  CHECK(g.m.at(1, 0) == kOne);
  CHECK(g.m.at(1, 1) == Complex{2.0, 0.0});

  CHECK_THROWS_AS(gram({{kOne, kZero}, {kOne}}), input_error);
}

TEST_CASE("gram scaling and hermitian symmetry") {
  Rng rng(5);
  std::vector<CVector> v(3, CVector(4));
  for (auto& vec : v)
    for (auto& z : vec) z = rng.complex_gaussian();
  const GramMatrix g = gram(v);
  // exact Hermitian by construction
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(g.m.at(j, k) == std::conj(g.m.at(k, j)));
  // scaling by t multiplies entries by |t|^2
  const Complex t{0.3, -1.7};
  std::vector<CVector> tv = v;
  for (auto& vec : tv)
    for (auto& z : vec) z *= t;
  const GramMatrix gt = gram(tv);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(approx_rel(std::abs(gt.m.at(j, k)),
                       std::norm(t) * std::abs(g.m.at(j, k)), 1e-12));
}

TEST_CASE("solve_hpd examples") {
  GramMatrix eye;
  eye.n = 3;
  eye.m = CMatrix::identity(3);
  const CVector rhs{{0.3, 1.0}, {2.0, -0.5}, {0.0, 0.0}};
  const CVector x = solve_hpd(eye, rhs);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - rhs[i]) <= 1e-15);

  GramMatrix g;
  g.n = 2;
  g.m = CMatrix(2, 2, {kOne, kOne, kOne, Complex{2.0, 0.0}});
  const CVector y = solve_hpd(g, {kOne, kZero});
  CHECK(std::abs(y[0] - Complex{2.0, 0.0}) <= 1e-12);
  CHECK(std::abs(y[1] - Complex{-1.0, 0.0}) <= 1e-12);
}

TEST_CASE("solve_hpd enforces the condition cap and names the pivot") {
  GramMatrix g;
  g.n = 2;
  g.m = CMatrix(2, 2, {kOne, kOne, kOne, Complex{1.0 + 1e-15, 0.0}});
  CHECK_THROWS_AS(solve_hpd(g, {kOne, kZero}, 1e6), singular_error);

  // exactly dependent: non-positive pivot, index named
  GramMatrix dep = gram({{kOne, kZero}, {kOne, kZero}});
  try {
    solve_hpd(dep, {kOne, kZero});
    FAIL("expected singular_error");
  } catch (const singular_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("index 1") != std::string::npos);
  }
}

TEST_CASE("solve_hpd multiply-back residual at controlled condition") {
  Rng rng(7);
  for (double cond : {1e2, 1e4, 1e6}) {
    const VectorSet v = random_vector_set(12, 20, cond, rng);
    const GramMatrix g = gram(v.vectors());
    CVector rhs(12);
    for (auto& z : rhs) z = rng.complex_gaussian();
    const CVector x = solve_hpd(g, rhs);
    const CVector back = g.m.apply(x);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      err += std::norm(back[i] - rhs[i]);
      scale += std::norm(rhs[i]);
    }
    CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(scale));
  }
}

TEST_CASE("inverse_rows examples") {
  const CMatrix eye = CMatrix::identity(3);
  const auto rows = inverse_rows(eye);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(rows[i][j] == (i == j ? kOne : kZero));

  const CMatrix a(2, 2, {kOne, kOne, kZero, kOne});
  const auto b = inverse_rows(a);
  CHECK(std::abs(b[0][0] - kOne) <= 1e-15);
  CHECK(std::abs(b[0][1] + kOne) <= 1e-15);
  CHECK(std::abs(b[1][0]) <= 1e-15);
  CHECK(std::abs(b[1][1] - kOne) <= 1e-15);

  const CMatrix sing = from_rows({{kOne, Complex{2.0, 0.0}},
                                  {kOne, Complex{2.0, 0.0}}});
  CHECK_THROWS_AS(inverse_rows(sing), singular_error);
}

TEST_CASE("inverse_rows reconstruction for random well-conditioned matrices") {
  Rng rng(99);
  for (std::size_t n : {4u, 16u, 64u}) {
    const CMatrix a = gaussian_matrix(n, rng);
    const auto rows = inverse_rows(a);
    CMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rows[i][j];
    const CMatrix prod = a.multiply(inv);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst,
                         std::abs(prod.at(i, j) - (i == j ? kOne : kZero)));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("condition estimate tracks the true conditioning") {
  Rng rng(3);
  const VectorSet v = random_vector_set(10, 16, 1e4, rng);
  const GramMatrix g = gram(v.vectors());
  const CholeskyFactor chol(g);
  // 1-norm estimate of a Gram with 2-norm condition 1e4 lands within a
  // couple of orders of magnitude
  CHECK(chol.condition_estimate() >= 1e3);
  CHECK(chol.condition_estimate() <= 1e6);
}
