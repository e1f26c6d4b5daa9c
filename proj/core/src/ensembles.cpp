#include "biorth/ensembles.hpp"

#include <cmath>

namespace biorth {

namespace {

Complex draw(Rng& rng, Field field) {
  return field == Field::complex ? rng.complex_gaussian()
                                 : Complex{rng.gaussian(), 0.0};
}

// Modified Gram-Schmidt on the columns; returns Q with orthonormal columns.
CMatrix mgs_columns(const CMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  CMatrix q = a;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex r{0.0, 0.0};
      for (std::size_t t = 0; t < rows; ++t)
        r += q.at(t, j) * std::conj(q.at(t, i));
      for (std::size_t t = 0; t < rows; ++t) q.at(t, j) -= r * q.at(t, i);
    }
    double nrm = 0.0;
    for (std::size_t t = 0; t < rows; ++t) nrm += std::norm(q.at(t, j));
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12))
      throw singular_error("mgs: dependent columns at index " +
                           std::to_string(j));
    for (std::size_t t = 0; t < rows; ++t) q.at(t, j) /= nrm;
  }
  return q;
}

}  // namespace

CMatrix gaussian_matrix(std::size_t n, Rng& rng, Field field) {
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = draw(rng, field);
  return a;
}

CMatrix random_unitary(std::size_t n, Rng& rng, Field field) {
  return mgs_columns(gaussian_matrix(n, rng, field));
}

CMatrix random_triangular(std::size_t n, Rng& rng, Field field) {
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      a.at(i, j) = draw(rng, field);
      if (i == j) {
        const double mag = std::abs(a.at(i, j));
        // keep the diagonal away from 0 without changing its phase
        a.at(i, j) *= (0.5 + mag) / (mag > 0.0 ? mag : 1.0);
      }
    }
  }
  return a;
}

CMatrix hilbert_like_matrix(std::size_t n, double ridge) {
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = Complex{1.0 / static_cast<double>(i + j + 1), 0.0};
  for (std::size_t i = 0; i < n; ++i) a.at(i, i) += ridge;
  return a;
}

VectorSet random_vector_set(std::size_t n, std::size_t d, double gram_condition,
                            Rng& rng, Field field) {
  if (n > d) throw input_error("random_vector_set: need n <= d");
  if (!(gram_condition >= 1.0))
    throw input_error("random_vector_set: condition must be >= 1");
  // d x n Gaussian -> orthonormal columns q_1..q_n.
  CMatrix g(d, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) g.at(i, j) = draw(rng, field);
  const CMatrix q = mgs_columns(g);
  // Singular values geometric from 1 down to cond^{-1/2}; mixing by a random
  // unitary R gives Gram = R^H diag(s^2) R with condition = gram_condition.
  std::vector<double> s(n, 1.0);
  if (n > 1) {
    const double smin = 1.0 / std::sqrt(gram_condition);
    for (std::size_t t = 0; t < n; ++t)
      s[t] = std::pow(smin, static_cast<double>(t) /
                                static_cast<double>(n - 1));
  }
  const CMatrix r = random_unitary(n, rng, field);
  std::vector<CVector> v(n, CVector(d, Complex{0.0, 0.0}));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < n; ++t) {
      const Complex coef = s[t] * r.at(t, j);
      for (std::size_t i = 0; i < d; ++i) v[j][i] += coef * q.at(i, t);
    }
  return VectorSet(std::move(v));
}

OrthonormalSystem mixed_trig_system(std::size_t n, const Grid& grid, Rng& rng) {
  std::vector<long> freqs(n);
  for (std::size_t k = 0; k < n; ++k) freqs[k] = static_cast<long>(k + 1);
  const OrthonormalSystem h = trig_system(freqs, grid);
  const CMatrix u = random_unitary(n, rng, Field::complex);
  const std::size_t n_grid = grid.size();
  std::vector<std::vector<Complex>> mixed(n,
                                          std::vector<Complex>(n_grid, 0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ujk = u.at(j, k);
      const auto& hk = h.function(k);
      for (std::size_t x = 0; x < n_grid; ++x) mixed[j][x] += ujk * hk[x];
    }
  return OrthonormalSystem(grid, std::move(mixed));
}

ChainConfig make_chain_config(std::size_t n, std::size_t grid_size,
                              std::uint64_t seed) {
  Rng rng(seed);
  const Grid grid(grid_size);
  OrthonormalSystem f = mixed_trig_system(n, grid, rng);
  // Gaussian matrices are almost surely well-conditioned; retry a few times
  // if the draw happens to trip the condition cap.
  BiorthogonalPair pair = [&] {
    for (int attempt = 0; attempt < 8; ++attempt) {
      try {
        return matrix_pair(gaussian_matrix(n, rng, Field::complex));
      } catch (const singular_error&) {
      }
    }
    throw search_failure("make_chain_config: could not draw an invertible "
                         "Gaussian matrix");
  }();
  StoppingData sd = stopping_data(f);
  GridFunction witness = phase_witness(GridFunction(grid, sd.stopped_sum));
  return ChainConfig{std::move(f), std::move(pair), std::move(sd),
                     std::move(witness)};
}

}  // namespace biorth
