#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "biorth/grid.hpp"
#include "biorth/rng.hpp"

#include "support.hpp"

using namespace biorth;
using testsupport::approx_rel;

namespace {

constexpr double kPi = std::numbers::pi;

CoefficientSeq random_coeffs(std::size_t n, Rng& rng) {
  std::vector<Complex> a(n);
  for (auto& z : a) {
    z = rng.complex_gaussian();
    if (std::abs(z) < 0.1) z += Complex{0.5, 0.0};
  }
  return CoefficientSeq(std::move(a));
}

}  // namespace

TEST_CASE("trig_system basics") {
  const Grid g8(8);
  const OrthonormalSystem constant = trig_system({0}, g8);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(std::abs(constant.function(0)[i] - Complex{1.0, 0.0}) <= 1e-15);

  const OrthonormalSystem one = trig_system({1}, g8);
  // x = 1/4 is grid point 2: e^{i pi/2} = i
  CHECK(std::abs(one.function(0)[2] - Complex{0.0, 1.0}) <= 1e-15);

  const OrthonormalSystem sys = trig_system({1, 2, 5}, Grid(16));
  CHECK(sys.orthonormality_residual() <= 1e-12);

  CHECK_THROWS_AS(trig_system({1, 2, 8}, g8), resolution_error);
  CHECK_THROWS_AS(trig_system({2, 1}, Grid(16)), input_error);
}

TEST_CASE("dirichlet_kernel values") {
  const Grid g(64);
  const GridFunction d0 = dirichlet_kernel(0, g);
  for (std::size_t i = 0; i < 64; ++i)
    CHECK(std::abs(d0[i] - Complex{1.0, 0.0}) <= 1e-12);

  const GridFunction d3 = dirichlet_kernel(3, g);
  CHECK(d3[0].real() == doctest::Approx(7.0));

  const GridFunction d1 = dirichlet_kernel(1, g);
  CHECK(d1[32].real() == doctest::Approx(-1.0).epsilon(1e-12));  // x = 1/2

  CHECK_THROWS_AS(dirichlet_kernel(20, g), resolution_error);
}

TEST_CASE("dirichlet closed form matches the character sum") {
  const Grid g(256);
  const GridFunction d5 = dirichlet_kernel(5, g);
  const std::size_t n_grid = g.size();
  for (std::size_t i = 0; i < n_grid; i += 17) {
    Complex s{0.0, 0.0};
    for (long k = -5; k <= 5; ++k)
      s += std::exp(Complex{0.0, 2.0 * kPi * static_cast<double>(k) *
                                      g.point(i)});
    CHECK(std::abs(d5[i] - s) <= 1e-11);
  }
}

TEST_CASE("lebesgue_constant small orders") {
  CHECK(lebesgue_constant(0, 64) == doctest::Approx(1.0));
  // oracle: closed form 1/3 + 2 sqrt(3)/pi for |1 + 2 cos(2 pi x)|
  const double exact = 1.0 / 3.0 + 2.0 * std::sqrt(3.0) / kPi;
  const double computed = lebesgue_constant(1, 64 * 3);
  CHECK(approx_rel(computed, exact, 1e-4));
  CHECK_THROWS_AS(lebesgue_constant(4, 100), resolution_error);
}

TEST_CASE("dirichlet sup bound and kappa audit, small orders") {
  for (std::size_t m : {1u, 3u, 17u, 64u}) {
    const Grid g(64 * (2 * m + 1));
    const GridFunction d = dirichlet_kernel(m, g);
    const double order = static_cast<double>(2 * m + 1);
    double kappa = 0.0;
    const double lo = 1.0 / order;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(d[i]) <= order * (1.0 + 1e-12));
      const double theta = 2.0 * kPi * g.point(i);
      if (theta > lo && theta < 2.0 * kPi - lo) {
        const double dist = std::min(theta, 2.0 * kPi - theta);
        kappa = std::max(kappa, std::abs(d[i]) * dist);
      }
    }
    CHECK(kappa <= kPi * (1.0 + 1e-12));
  }
}

TEST_CASE("maximal_data basics") {
  const Grid g(64);
  const OrthonormalSystem constant = trig_system({0}, g);
  const MaximalData md = maximal_data(CoefficientSeq::ones(1), constant);
  for (double v : md.s_star) CHECK(v == doctest::Approx(1.0));

  // a == 1, freqs 1..n: S*(0) = n
  const std::size_t n = 6;
  std::vector<long> freqs;
  for (std::size_t k = 1; k <= n; ++k) freqs.push_back(static_cast<long>(k));
  const OrthonormalSystem h = trig_system(freqs, g);
  const MaximalData md2 = maximal_data(CoefficientSeq::ones(n), h);
  CHECK(md2.s_star[0] == doctest::Approx(static_cast<double>(n)));
  CHECK(md2.sup_norm_max == doctest::Approx(1.0));
}

TEST_CASE("triangle-inequality bound |a_j h_j| <= 2 S*") {
  Rng rng(17);
  const Grid g(512);
  const std::size_t n = 8;
  std::vector<long> freqs;
  for (std::size_t k = 1; k <= n; ++k) freqs.push_back(static_cast<long>(k));
  const OrthonormalSystem h = trig_system(freqs, g);
  const CoefficientSeq a = random_coeffs(n, rng);
  const MaximalData md = maximal_data(a, h);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t x = 0; x < g.size(); ++x)
      CHECK(std::abs(a[j] * h.function(j)[x]) <=
            2.0 * md.s_star[x] * (1.0 + 1e-12));
}

TEST_CASE("salem_pair certification and norms") {
  Rng rng(23);
  const Grid g(1024);
  const std::size_t n = 8;
  std::vector<long> freqs;
  for (std::size_t k = 1; k <= n; ++k) freqs.push_back(static_cast<long>(k));
  const OrthonormalSystem h = trig_system(freqs, g);
  const CoefficientSeq a = random_coeffs(n, rng);
  const MaximalData md = maximal_data(a, h);
  const BiorthogonalPair pair = salem_pair(a, h, md);
  CHECK(pair.residual <= 1e-8);

  // ||w_j||^2 <= (M_n^2 / min|a|^2) ||S*||_1
  const double bound = md.sup_norm_max * md.sup_norm_max /
                       (a.min_abs() * a.min_abs()) * md.s_star_l1();
  for (std::size_t j = 0; j < n; ++j) {
    const double wn = norm2(pair.w[j]);
    CHECK(wn * wn <= bound + 1e-9);
  }

  // ||sum_{j<=k} v_j||^2 <= ||S_k||_1 for every k
  CVector running(pair.v.dim(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < pair.v.dim(); ++i) running[i] += pair.v[k][i];
    const double sn = norm2(running);
    CHECK(sn * sn <= md.partial_sums[k].l1() + 1e-9);
  }

  // max_k ||S_k||_1 <= ||S*||_1, exact on the grid
  double max_l1 = 0.0;
  for (const GridFunction& s : md.partial_sums)
    max_l1 = std::max(max_l1, s.l1());
  CHECK(max_l1 <= md.s_star_l1() + 1e-12);
}

TEST_CASE("salem_pair degenerate n = 1, constant system") {
  const Grid g(16);
  const OrthonormalSystem h = trig_system({0}, g);
  const BiorthogonalPair pair = salem_pair(CoefficientSeq::ones(1), h);
  CHECK(pair.residual <= 1e-14);
  const InequalityReport rep = inequality_functional(pair);
  CHECK(rep.product == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fourier_maximal basics") {
  const Grid g(128);
  // constant p: S*p = |p|
  GridFunction constant(g, std::vector<Complex>(128, Complex{2.5, -1.0}));
  const GridFunction sp = fourier_maximal(constant, 4);
  const double mag = std::abs(Complex{2.5, -1.0});
  for (std::size_t i = 0; i < 128; ++i)
    CHECK(sp[i].real() == doctest::Approx(mag).epsilon(1e-12));

  // single frequency: S*p = |p|
  const OrthonormalSystem h = trig_system({5}, g);
  std::vector<Complex> scaled(h.function(0));
  for (auto& z : scaled) z *= Complex{0.0, 3.0};
  const GridFunction mono(g, scaled);
  const GridFunction sp2 = fourier_maximal(mono, 8);
  for (std::size_t i = 0; i < 128; ++i)
    CHECK(sp2[i].real() == doctest::Approx(3.0).epsilon(1e-12));

  // degree check failure
  CHECK_THROWS_AS(fourier_maximal(mono, 3), input_error);
}

TEST_CASE("fourier partial sums reproduce trig polynomials at high degree") {
  Rng rng(29);
  const Grid g(256);
  const OrthonormalSystem h = trig_system({1, 3, 7}, g);
  std::vector<Complex> samples(256, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex c = rng.complex_gaussian();
    for (std::size_t i = 0; i < 256; ++i) samples[i] += c * h.function(k)[i];
  }
  const GridFunction p(g, samples);
  for (std::size_t m : {7u, 9u, 20u}) {
    const GridFunction trunc = fourier_partial_sum(p, m);
    for (std::size_t i = 0; i < 256; i += 13)
      CHECK(std::abs(trunc[i] - p[i]) <= 1e-11);
  }
  // truncation below the top frequency drops it
  const GridFunction low = fourier_partial_sum(p, 3);
  double diff = 0.0;
  for (std::size_t i = 0; i < 256; ++i) diff += std::norm(low[i] - p[i]);
  CHECK(diff > 1e-6);
}

TEST_CASE("corollary_report maxmaxmax example shape") {
  const Grid g(4096);
  std::vector<long> freqs;
  for (long k = 1; k <= 64; ++k) freqs.push_back(k);
  const CorollaryReport rep = corollary_report(
      CorollaryKind::maxmaxmax, CoefficientSeq::ones(64), freqs, g);
  CHECK(rep.lhs == doctest::Approx(std::log(64.0)));
  CHECK(rep.rhs_factors.size() == 3);
  CHECK(rep.rhs_factors[0] == doctest::Approx(1.0));  // M_n^2 for characters
  CHECK(rep.product > 0.0);
  CHECK(rep.c_empirical ==
        doctest::Approx(rep.lhs * rep.lhs / rep.product).epsilon(1e-12));
}

TEST_CASE("corollary_report littlewood on a lacunary sequence") {
  const std::size_t n = 10;
  std::vector<long> freqs;
  for (std::size_t k = 1; k <= n; ++k) freqs.push_back(1L << k);
  const Grid g(4096);
  const CorollaryReport rep = corollary_report(
      CorollaryKind::littlewood, CoefficientSeq::ones(n), freqs, g);
  CHECK(rep.rhs_factors.size() == 1);
  CHECK(rep.lhs <= rep.product);  // holds with the constant 1 here
  CHECK(rep.c_empirical > 0.0);
}

TEST_CASE("corollary_report precondition failures name the condition") {
  const Grid g(256);
  // increasing coefficients rejected for `decreasing`
  CHECK_THROWS_WITH_AS(
      corollary_report(CorollaryKind::decreasing,
                       CoefficientSeq({{1.0, 0.0}, {2.0, 0.0}}), {1, 2}, g),
      doctest::Contains("increase"), input_error);
  // non-increasing frequencies rejected for `littlewood`
  CHECK_THROWS_AS(
      corollary_report(CorollaryKind::littlewood, CoefficientSeq::ones(2),
                       {4, 2}, g),
      input_error);
  CHECK_THROWS_AS(
      corollary_report(CorollaryKind::littlewood, CoefficientSeq::ones(2),
                       {0, 2}, g),
      input_error);
}

TEST_CASE("grid function norms") {
  const Grid g(4);
  GridFunction f(g, {Complex{3.0, 4.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0},
                     Complex{0.0, -2.0}});
  CHECK(f.l1() == doctest::Approx((5.0 + 0.0 + 1.0 + 2.0) / 4.0));
  CHECK(f.l2() == doctest::Approx(std::sqrt((25.0 + 1.0 + 4.0) / 4.0)));
  CHECK(f.linf() == doctest::Approx(5.0));
}
