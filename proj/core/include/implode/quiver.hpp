#ifndef IMPLODE_QUIVER_HPP
#define IMPLODE_QUIVER_HPP

#include <cstdint>
#include <vector>

#include "implode/group.hpp"
#include "implode/types.hpp"

namespace implode {

enum class QuiverMode { symplectic, hyperkahler };

// Dimension vector (n_1, ..., n_r) of a chain of vector spaces ending at
// C^n. For the orthogonal and symplectic kinds the next-to-top dimension is
// capped at n/2 so the top map can have isotropic image.
struct DimensionVector {
    GroupKind kind = GroupKind::A;
    std::vector<int> dims;

    DimensionVector() = default;
    DimensionVector(GroupKind k, std::vector<int> d);

    int r() const { return static_cast<int>(dims.size()); }
    int n() const { return dims.back(); }
    int edges() const { return r() - 1; }

    bool ordered() const;
    bool strictly_ordered() const;
    bool full_flag() const;

    static DimensionVector full_flag_for(GroupKind kind, int n);

    bool operator==(const DimensionVector& other) const = default;
};

// A chain of maps alpha_i : V_i -> V_{i+1}, with reverse maps beta_i in
// hyperkahler mode. alpha[i] is dims[i+1] x dims[i], beta[i] is
// dims[i] x dims[i+1].
struct Quiver {
    DimensionVector dv;
    QuiverMode mode = QuiverMode::symplectic;
    std::vector<Matrix> alpha;
    std::vector<Matrix> beta;  // empty in symplectic mode

    bool hyperkahler() const { return mode == QuiverMode::hyperkahler; }
    void validate() const;  // shape consistency; throws ShapeMismatch/ModeError

    static Quiver zero(const DimensionVector& dv, QuiverMode mode);

    // Flat norm sqrt(sum ||alpha_i||^2 + ||beta_i||^2).
    double norm() const;
};

enum class GaugeTag { GL, SL, U, SU, TC, T };

// One invertible block per internal node, constrained to the subgroup named
// by the tag (TC/T are the diagonal tori).
struct GaugeElement {
    std::vector<Matrix> blocks;
    GaugeTag tag = GaugeTag::GL;

    static GaugeElement identity(const DimensionVector& dv, GaugeTag tag = GaugeTag::GL);
    void validate(const DimensionVector& dv, double tol = kDefaultTol) const;
    GaugeElement inverse() const;
    GaugeElement compose(const GaugeElement& other) const;  // blockwise this * other
};

// alpha_i -> g_{i+1} alpha_i g_i^{-1} (top edge: alpha g^{-1}),
// beta_i  -> g_i beta_i g_{i+1}^{-1} (top edge: g beta).
Quiver act_gauge(const Quiver& q, const GaugeElement& g, double tol = kDefaultTol);

// Top-node action: alpha_top -> k alpha_top, beta_top -> beta_top k^{-1}.
// For the B/C/D kinds k must preserve the bilinear form.
Quiver act_flavor(const Quiver& q, const Matrix& k, double tol = kDefaultTol);

struct Quaternion {
    double w = 1, x = 0, y = 0, z = 0;

    double norm() const;
    Quaternion times(const Quaternion& other) const;  // Hamilton product
    static Quaternion j() { return {0, 0, 1, 0}; }
};

// Unit-quaternion rotation of the two-sphere of complex structures, acting
// edgewise. u = j sends (alpha, beta) to (-beta^*, alpha^*); the general
// element acts through the algebra generated by I(a,b) = (ia, ib), J = the
// j-action and K = I.J, so rotate(rotate(q,u),v) = rotate(q, v u).
Quiver quaternion_rotate(const Quiver& q, const Quaternion& u, double tol = kDefaultTol);

// Entries i.i.d. complex Gaussian (E|z|^2 = scale^2), deterministic in the
// seed (Philox stream, edge by edge, column-major fill, alpha before beta).
// With isotropic_top set, the top map of a B/C/D symplectic quiver is
// Newton-projected onto the isotropy constraint.
Quiver random_quiver(const DimensionVector& dv, QuiverMode mode, std::uint64_t seed,
                     double scale = 1.0, bool isotropic_top = false);

// Random hyperkahler quiver that satisfies the complex moment equations
// beta_i alpha_i - alpha_{i-1} beta_{i-1} = levels[i] * I exactly: the
// alphas are Gaussian and each beta is solved edge by edge, with a Gaussian
// component in the unconstrained directions.
Quiver random_on_complex_level(const DimensionVector& dv, const std::vector<Complex>& levels,
                               std::uint64_t seed, double scale = 1.0);

}  // namespace implode

#endif
