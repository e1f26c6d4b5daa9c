// Numerical executor for the pair-inequality proof mechanism: stopping
// times, indicator ladders, the Abel rewrite, the Bessel chain, the
// Cauchy-Schwarz step, and the unimodular phase witness. Also measures the
// Menshov level of a supplied orthonormal system.
//
// The space V = L^2([0,1], H) is discretized as grid sequences of H-vectors
// with inner product (1/N) sum_x <P(x), Q(x)>_H.

#pragma once

#include <cstdint>
#include <vector>

#include "biorth/grid.hpp"
#include "biorth/pair.hpp"

namespace biorth {

// Element of the discretized L^2([0,1], C^dim); values indexed [x*dim + i].
struct VField {
  std::size_t grid_size = 0;
  std::size_t dim = 0;
  std::vector<Complex> values;

  VField() = default;
  VField(std::size_t n_grid, std::size_t d)
      : grid_size(n_grid), dim(d), values(n_grid * d, Complex{0.0, 0.0}) {}

  Complex* at(std::size_t x) { return values.data() + x * dim; }
  const Complex* at(std::size_t x) const { return values.data() + x * dim; }
};

Complex v_inner(const VField& p, const VField& q);
double v_norm2sq(const VField& p);

// p_k(x) = F_k(x) w_k as an explicit V-element.
VField make_p_field(const OrthonormalSystem& f, std::size_t k,
                    const CVector& w_k);

// Bessel slack ||P||_V^2 - sum_k |<P, p_k>_V|^2 / ||w_k||^2 for the
// orthogonal family p_k = F_k w_k; nonnegative up to fp noise for any P.
double bessel_slack(const VField& p, const OrthonormalSystem& f,
                    const VectorSet& w);

// Maximal function M(x) = max_j |sum_{k<=j} F_k(x)|, the stopping time
// m(x) = least index attaining the max (relative tie tolerance 1e-12), the
// stopped sums S_{m(x)}(x), and the indicator ladder f_k = 1{m(x) >= k}
// (with f_{n+1} = 0).
struct StoppingData {
  std::vector<double> maximal;         // M(x)
  std::vector<std::uint32_t> m_of_x;   // 1-based stopping index
  std::vector<std::vector<std::uint8_t>> ladder;  // rows f_1..f_{n+1}
  std::vector<Complex> stopped_sum;    // S_{m(x)}(x)

  // Delta f_k = f_k - f_{k+1} at x, k 1-based.
  int delta(std::size_t k, std::size_t x) const {
    return static_cast<int>(ladder[k - 1][x]) -
           static_cast<int>(ladder[k][x]);
  }
  double maximal_l1() const;
};

StoppingData stopping_data(const OrthonormalSystem& f);

// Unimodular G with G(x) conj(s(x)) = |s(x)|; G = 1 where s(x) is below
// 1e-14 * max|s|.
GridFunction phase_witness(const GridFunction& s_at_m);

// Residuals are relative to max(1, field magnitude); slacks are raw
// RHS - LHS of the named display.
struct ChainReport {
  double bessel_slack = 0.0;
  double bigbess_slack = 0.0;
  double mainpoint_slack = 0.0;
  double gsf_slack = 0.0;
  double abel_residual = 0.0;
  double witness_identity_residual = 0.0;

  static constexpr double kSlackFloor = -1e-9;
  bool slacks_ok() const {
    return bessel_slack >= kSlackFloor && bigbess_slack >= kSlackFloor &&
           mainpoint_slack >= kSlackFloor && gsf_slack >= kSlackFloor;
  }
};

// Runs the whole verification chain for orthonormal F, a certified pair
// and bounded G (|G| <= 1 + 1e-12):
//   (i)  pairwise orthogonality of p_k = F_k w_k in V,
//   (ii) the Abel identity P_G = G sum_k Delta f_k sigma_k,
//   (iii) the pointwise norm identity for P_G,
//   (iv) the Bessel / big-Bessel / main-point / Cauchy-Schwarz slacks and
//        the stopped-sum identity behind the witness step.
// Structural identities off by more than 1e-10 raise internal_error.
ChainReport chain_check(const OrthonormalSystem& f, const BiorthogonalPair& pair,
                        const GridFunction& g, double tol = kDefaultCertTol);

struct MenshovLevel {
  double t_star = 0.0;  // largest t with measure{M > t} >= 1/4
  double c0_emp = 0.0;  // t_star / (sqrt(n) log n)
};

// Pre: n >= 2 (log 1 = 0 makes the level degenerate).
MenshovLevel menshov_level(const OrthonormalSystem& f);

}  // namespace biorth
