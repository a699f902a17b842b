#ifndef IMPLODE_LINALG_HPP
#define IMPLODE_LINALG_HPP

#include "implode/rng.hpp"
#include "implode/types.hpp"

namespace implode {

// Numerical rank with an ambiguity guard: singular values are compared
// against rel_tol * sigma_max, and any value within a factor `band` of that
// threshold raises AmbiguousRank instead of guessing.
int guarded_rank(const Matrix& m, double rel_tol = kRankRelTol, double band = kRankBand);

// Moore-Penrose pseudoinverse via SVD.
Matrix pseudo_inverse(const Matrix& m, double rel_tol = kRankRelTol);

// Orthonormal basis of the column space (n x rank).
Matrix image_basis(const Matrix& m, double rel_tol = kRankRelTol);

// Orthonormal basis of the kernel (cols x (cols - rank)).
Matrix kernel_basis(const Matrix& m, double rel_tol = kRankRelTol);

double smallest_singular_value(const Matrix& m);

// exp(h) for hermitian h, via the spectral decomposition.
Matrix hermitian_exp(const Matrix& h);

// Haar-ish random unitary from the QR of a Gaussian matrix.
Matrix random_unitary(int n, Philox& rng);

}  // namespace implode

#endif
