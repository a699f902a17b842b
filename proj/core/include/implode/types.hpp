#ifndef IMPLODE_TYPES_HPP
#define IMPLODE_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace implode {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative tolerance used by constraint checks unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

// Singular values below kRankRelTol * sigma_max count as zero; values inside
// [kRankRelTol/kRankBand, kRankRelTol*kRankBand] * sigma_max are ambiguous.
inline constexpr double kRankRelTol = 1e-9;
inline constexpr double kRankBand = 10.0;

}  // namespace implode

#endif
