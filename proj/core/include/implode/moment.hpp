#ifndef IMPLODE_MOMENT_HPP
#define IMPLODE_MOMENT_HPP

#include <vector>

#include "implode/quiver.hpp"
#include "implode/types.hpp"

namespace implode {

// Per-node moment values split into scalar levels (trace / n_i) and
// tracefree residuals. A quiver solves the moment equations at
// (levels_real, levels_complex) exactly when residual_norm vanishes.
struct MomentTriple {
    std::vector<Matrix> real_part;       // hermitian, one per internal node
    std::vector<Matrix> complex_part;    // empty in symplectic mode
    std::vector<double> levels_real;
    std::vector<Complex> levels_complex;
    double residual_norm = 0.0;          // max Frobenius norm of the tracefree parts
};

// Tracefree part of X = alpha_top beta_top, gauge-invariant and conjugated
// by the flavor action.
struct KMoment {
    Matrix x;
    Complex trace_removed;  // tr(alpha_top beta_top), subtracted as (tr/n) I
};

// real_part[i] = alpha_i^* alpha_i - alpha_{i-1} alpha_{i-1}^*.
MomentTriple symplectic_moment(const Quiver& q);

// complex_part[i] = beta_i alpha_i - alpha_{i-1} beta_{i-1};
// real_part[i] = beta_{i-1}^* beta_{i-1} - alpha_{i-1} alpha_{i-1}^*
//              - beta_i beta_i^* + alpha_i^* alpha_i.
MomentTriple hk_moment(const Quiver& q);

MomentTriple moment_of(const Quiver& q);  // dispatch on mode

// Hyperkahler quivers: tracefree part of the top composition. Symplectic
// quivers must be in the toric normal pattern, where the value is the signed
// diagonal matrix determined by the top-edge entries (unit scale constant).
KMoment k_moment(const Quiver& q, double tol = kDefaultTol);

// True iff every partial sum lambda_j + ... + lambda_{j-i+1} is >= 0, i.e.
// the toric level equations are solvable.
bool chamber_contains(const std::vector<double>& levels_real, GroupKind kind);

// Exact transformation of a moment triple under quaternion rotation by u:
// with a = w + ix, b = y + iz,
//   mu_C' = a^2 mu_C - b^2 mu_C^* + a b mu_R
//   mu_R' = (|a|^2-|b|^2) mu_R - 2 a conj(b) mu_C - 2 conj(a) b mu_C^*.
MomentTriple rotate_triple(const MomentTriple& t, const Quaternion& u);

}  // namespace implode

#endif
