// Seeded generators for the matrix ensembles and random configurations the
// laboratory sweeps over: Gaussian / unitary / triangular / ridged
// Hilbert-type matrices, vector sets with controlled Gram condition, unitary
// mixes of trigonometric systems, and full proof-chain configurations.

#pragma once

#include <cstdint>

#include "biorth/grid.hpp"
#include "biorth/pair.hpp"
#include "biorth/proof.hpp"
#include "biorth/rng.hpp"

namespace biorth {

enum class Field { real, complex };

CMatrix gaussian_matrix(std::size_t n, Rng& rng, Field field = Field::complex);

// Orthonormalizes a Gaussian matrix (modified Gram-Schmidt); unitary for
// the complex field, orthogonal for the real one.
CMatrix random_unitary(std::size_t n, Rng& rng, Field field = Field::complex);

// Upper triangular with Gaussian entries and diagonal bounded away from 0.
CMatrix random_triangular(std::size_t n, Rng& rng, Field field = Field::complex);

// Hilbert-type kernel 1/(i+j+1) plus a ridge on the diagonal; the ridge
// keeps the condition number inside the solver cap at every tested n.
CMatrix hilbert_like_matrix(std::size_t n, double ridge = 1e-3);

// n vectors in C^d whose Gram matrix has condition about `gram_condition`
// (singular values geometric between 1 and gram_condition^{-1/2}).
VectorSet random_vector_set(std::size_t n, std::size_t d, double gram_condition,
                            Rng& rng, Field field = Field::complex);

// Trig system with frequencies 1..n mixed by a random unitary; still
// orthonormal, no longer a character system.
OrthonormalSystem mixed_trig_system(std::size_t n, const Grid& grid, Rng& rng);

// One full proof-chain configuration: mixed trig F, a pair from a random
// Gaussian matrix (d = n), the stopping data of F and its canonical witness.
struct ChainConfig {
  OrthonormalSystem f;
  BiorthogonalPair pair;
  StoppingData stopping;
  GridFunction witness;
};

ChainConfig make_chain_config(std::size_t n, std::size_t grid_size,
                              std::uint64_t seed);

}  // namespace biorth
