#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biorth/ensembles.hpp"
#include "biorth/pair.hpp"
#include "biorth/rng.hpp"
#include "biorth/search.hpp"

#include "support.hpp"

using namespace biorth;
using testsupport::approx_rel;

namespace {

const Complex kOne{1.0, 0.0};
const Complex kZero{0.0, 0.0};

double set_distance(const VectorSet& a, const VectorSet& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t i = 0; i < a.dim(); ++i)
      worst = std::max(worst, std::abs(a[j][i] - b[j][i]));
  return worst;
}

}  // namespace

TEST_CASE("dual_basis hand examples") {
  // orthonormal -> self-dual
  const VectorSet onb({{kOne, kZero}, {kZero, kOne}});
  CHECK(set_distance(dual_basis(onb), onb) <= 1e-14);

  // {(1,0),(1,1)} -> {(1,-1),(0,1)}
  const VectorSet v({{kOne, kZero}, {kOne, kOne}});
  const VectorSet w = dual_basis(v);
  const VectorSet expect({{kOne, Complex{-1.0, 0.0}}, {kZero, kOne}});
  CHECK(set_distance(w, expect) <= 1e-12);

  // scaling
  const VectorSet s({{Complex{2.0, 0.0}}});
  const VectorSet sd = dual_basis(s);
  CHECK(std::abs(sd[0][0] - Complex{0.5, 0.0}) <= 1e-15);
}

TEST_CASE("dual_basis rejects dependent sets with a condition estimate") {
  const VectorSet dep({{kOne, kZero}, {kOne, kZero}});
  CHECK_THROWS_AS(dual_basis(dep), linear_dependence_error);
  const VectorSet wide({{kOne, kZero}, {kZero, kOne}, {kOne, kOne}});
  CHECK_THROWS_AS(dual_basis(wide), input_error);  // n > d
}

TEST_CASE("check_biorthogonal") {
  const VectorSet v({{kOne, kZero}, {kOne, kOne}});
  const VectorSet w = dual_basis(v);
  CHECK(check_biorthogonal(v, w, 1e-8).pass);

  // perturb one entry by 1e-3: residual ~ 1e-3, fails at 1e-6
  std::vector<CVector> wp = w.vectors();
  wp[0][1] += Complex{1e-3, 0.0};
  const BiorthCheck chk = check_biorthogonal(v, VectorSet(wp), 1e-6);
  CHECK(!chk.pass);
  CHECK(chk.residual == doctest::Approx(1e-3).epsilon(0.1));

  const VectorSet single({{kOne, kZero}});
  CHECK(check_biorthogonal(single, single, 1e-12).residual == 0.0);

  CHECK_THROWS_AS(check_biorthogonal(v, single, 1e-8), input_error);
}

TEST_CASE("inequality_functional examples") {
  // standard basis of C^4: w_max 1, sigma_max 2
  std::vector<CVector> e(4, CVector(4, kZero));
  for (int i = 0; i < 4; ++i) e[i][i] = kOne;
  const VectorSet basis(e);
  const BiorthogonalPair pair{basis, basis, 0.0};
  const InequalityReport rep = inequality_functional(pair);
  CHECK(rep.w_max == doctest::Approx(1.0));
  CHECK(rep.sigma_max == doctest::Approx(2.0));
  CHECK(rep.product == doctest::Approx(2.0));
  CHECK(rep.lhs == doctest::Approx(std::log(4.0)));

  // hand pair and its swap
  const VectorSet v({{kOne, kZero}, {kOne, kOne}});
  const BiorthogonalPair hand = dual_pair(v);
  const InequalityReport fwd = inequality_functional(hand);
  CHECK(fwd.w_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(fwd.sigma_max == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(fwd.product == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  const InequalityReport rev = inequality_functional(swapped(hand));
  CHECK(rev.product == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("inequality_functional degenerate n = 1") {
  const VectorSet v({{Complex{3.0, 0.0}}});
  const BiorthogonalPair pair = dual_pair(v);
  const InequalityReport rep = inequality_functional(pair);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.c_empirical == 0.0);
  CHECK(rep.product > 0.0);
}

TEST_CASE("matrix_pair examples") {
  const BiorthogonalPair eye = matrix_pair(CMatrix::identity(3));
  CHECK(eye.residual <= 1e-15);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(eye.v[j][i] == (i == j ? kOne : kZero));
      CHECK(std::abs(eye.w[j][i] - (i == j ? kOne : kZero)) <= 1e-15);
    }

  const CMatrix a(2, 2, {kOne, kOne, kZero, kOne});
  const BiorthogonalPair pair = matrix_pair(a);
  CHECK(pair.residual <= 1e-14);
  // V = columns {(1,0),(1,1)}, W = {(1,-1),(0,1)}
  CHECK(std::abs(pair.v[0][0] - kOne) <= 1e-15);
  CHECK(std::abs(pair.v[1][1] - kOne) <= 1e-15);
  CHECK(std::abs(pair.w[0][1] + kOne) <= 1e-15);
  CHECK(std::abs(pair.w[1][0]) <= 1e-15);

  const CMatrix dup(2, 2, {kOne, kOne, kOne, kOne});
  CHECK_THROWS_AS(matrix_pair(dup), singular_error);
}

TEST_CASE("dual of dual returns the original set") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 30);
    const std::size_t d = n + static_cast<std::size_t>(rng.uniform() * 8);
    const VectorSet v = random_vector_set(n, d, 100.0, rng);
    const VectorSet w = dual_basis(v);
    const VectorSet vv = dual_basis(w);
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, norm2(v[j]));
    CHECK(set_distance(vv, v) <= 1e-7 * scale);
  }
}

TEST_CASE("dual vectors lie in the span of the input set") {
  Rng rng(31);
  const std::size_t n = 6, d = 12;
  const VectorSet v = random_vector_set(n, d, 50.0, rng);
  const VectorSet w = dual_basis(v);
  // project w_k onto span(V) via the dual pairing: P w_k = sum_j <w_k, w_j> v_j
  // is exact when w_k is already in the span; compare directly.
  const GramMatrix wg = gram(w.vectors());
  for (std::size_t k = 0; k < n; ++k) {
    CVector proj(d, kZero);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = wg.m.at(j, k);  // <w_k, w_j>
      for (std::size_t i = 0; i < d; ++i) proj[i] += c * v[j][i];
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < d; ++i) diff += std::norm(proj[i] - w[k][i]);
    CHECK(std::sqrt(diff) <= 1e-9 * std::max(1.0, norm2(w[k])));
  }
}

TEST_CASE("pair product is invariant under scaling and left-unitary maps") {
  Rng rng(41);
  const CMatrix a = gaussian_matrix(6, rng);
  const double base = inequality_functional(matrix_pair(a)).product;

  for (double t : {1e-3, 7.0, 1e3}) {
    CMatrix ta = a;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) ta.at(i, j) *= t;
    const double ft = inequality_functional(matrix_pair(ta)).product;
    CHECK(approx_rel(ft, base, 1e-9));
  }

  const CMatrix u = random_unitary(6, rng);
  const double fu = inequality_functional(matrix_pair(u.multiply(a))).product;
  CHECK(approx_rel(fu, base, 1e-9));
}

TEST_CASE("Cauchy-Schwarz floor: ||w_k|| ||v_k|| >= 1 on certified pairs") {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const BiorthogonalPair pair = matrix_pair(gaussian_matrix(8, rng));
    for (std::size_t k = 0; k < 8; ++k)
      CHECK(norm2(pair.w[k]) * norm2(pair.v[k]) >= 1.0 - 1e-9);
  }
}
