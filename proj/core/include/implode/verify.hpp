#ifndef IMPLODE_VERIFY_HPP
#define IMPLODE_VERIFY_HPP

#include <cstdint>
#include <string>

#include "implode/quiver.hpp"

namespace implode {

struct VerificationReport {
    std::string name;
    int samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string details;
};

// Samples random isotropic triples (x, y, z) and checks that the isotropy
// defect agrees with y^2 + 2xz, which is the displayed quadric equation
// after the rescaling x' = 2x.
VerificationReport verify_so3_quadric(int samples, std::uint64_t seed);

// Induced maps on symmetric squares: a (1,2) hyperkahler quiver lifts to a
// (1,3) quiver in a basis where the induced symmetric form is the
// antidiagonal J_3, with both isotropy constraints holding identically.
Quiver sym2_lift(const Quiver& q);

// 3x3 matrix of Sym^2(k) in the same basis (k is 2x2).
Matrix sym2_rep(const Matrix& k);

// Counts sign-flip preimages (+-alpha, +-beta) of the lift: generically 4,
// reproducing the quotient by Z_2 x Z_2 rather than Z_2.
VerificationReport verify_sym2_fibres(int samples, std::uint64_t seed);

// Random full-flag quivers on the zero complex level, flowed to real level
// zero: the top composition X must be nilpotent to working precision, with
// vanishing characteristic polynomial coefficients.
VerificationReport verify_nilpotent_cone(int n, int samples, std::uint64_t seed);

// Integer identities: 2(dim K + dim T) = dim_R M - 4 dim H for SU(2..6),
// the isotropy constraint count for the B kind via Jacobian rank, and the
// symplectic quotient dimension for SO(3), SO(5), SO(7).
VerificationReport verify_dimensions();

}  // namespace implode

#endif
