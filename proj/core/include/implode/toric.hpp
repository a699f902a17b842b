#ifndef IMPLODE_TORIC_HPP
#define IMPLODE_TORIC_HPP

#include <utility>
#include <vector>

#include "implode/kempf_ness.hpp"
#include "implode/quiver.hpp"

namespace implode {

// Triangular arrays nu_i^j (and mu_i^j on the hyperkahler slice) indexed by
// edge j = 0..r-2 with j+1 entries each. Embeds into a Quiver through
// build_toric_quiver, placing nu on the subdiagonal pattern (bottom-aligned
// on the top edge) and mu on the superdiagonal pattern.
struct ToricQuiver {
    std::vector<std::vector<Complex>> nu;
    std::vector<std::vector<Complex>> mu;  // empty for the symplectic slice

    bool hyperkahler() const { return !mu.empty(); }
};

// The coordinates (a_l, b_l) of the hypertoric slice Q_T ~ H^{r-1}.
struct HypertoricPoint {
    std::vector<std::pair<Complex, Complex>> pairs;
};

// |nu_i^j|^2 = lambda_j + ... + lambda_{j-i+1}; defined exactly on the
// positive Weyl chamber. Throws OutsideChamber naming the first negative
// partial sum.
std::vector<std::vector<double>> solve_chamber_levels(const std::vector<double>& levels_real,
                                                      GroupKind kind);

// nu values from |nu|^2 with the positive-real phase convention.
ToricQuiver toric_from_chamber(const std::vector<std::vector<double>>& nu_squared);

// dv must be (1, 2, ..., r-1, n). The built quiver satisfies the B/C/D
// isotropy constraints identically.
Quiver build_toric_quiver(const ToricQuiver& t, const DimensionVector& dv);

// phi(a + jb) = (a_l b_l, |a_l|^2 - |b_l|^2) per coordinate.
std::vector<std::pair<Complex, double>> hypertoric_moment(const HypertoricPoint& p);

// True iff both points of the open subset (all coordinates nonzero) have the
// same moment value; cross-checked against an explicit phase rotation.
bool hypertoric_fibre_check(const HypertoricPoint& p, const HypertoricPoint& q,
                            double tol = kDefaultTol);

struct NormalFormResult {
    Quiver quiver;
    Matrix flavor;         // SU(n) element standardizing the kernel flag
    GaugeElement gauge;    // SL blocks putting each beta into the mu pattern
    bool identity = false; // input was already in normal form
};

// Puts a hyperkahler-stable full-flag quiver of A kind into the form with
// every beta_j superdiagonal (nonzero mu entries). When the complex moment
// equations hold at some level, the alpha_j come out lower Hessenberg with
// nu on the subdiagonal.
NormalFormResult beta_normal_form(const Quiver& q, const SolveOptions& opts = {});

// Truncates each alpha to its subdiagonal part; the complex moment residual
// at the same levels is unchanged.
Quiver alpha_T_projection(const Quiver& q_normal, double tol = kDefaultTol);

bool is_beta_normal(const Quiver& q, double tol = kDefaultTol);

}  // namespace implode

#endif
