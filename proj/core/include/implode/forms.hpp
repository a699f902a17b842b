#ifndef IMPLODE_FORMS_HPP
#define IMPLODE_FORMS_HPP

#include <utility>

#include "implode/group.hpp"
#include "implode/rng.hpp"
#include "implode/types.hpp"

namespace implode {

enum class FormKind { symmetric, skew };
enum class IsotropicComponent { plus, minus };
enum class IsotropySide { alpha, beta };

// The antidiagonal form J (B/D) or the skew block form J2 = [[0,J],[-J,0]]
// (C) on the top node.
struct BilinearForm {
    FormKind form_kind = FormKind::symmetric;
    int n = 0;
    Matrix matrix;

    Complex pair(const Vector& v, const Vector& w) const { return v.transpose() * matrix * w; }
};

BilinearForm build_form(GroupKind kind, int n);

// || m^t J m ||_F for the alpha side (maps into C^n), || m J m^t ||_F for the
// beta side (maps out of C^n). Zero iff the image resp. coimage is isotropic.
double isotropy_defect(const Matrix& m, const BilinearForm& form,
                       IsotropySide side = IsotropySide::alpha);

// Newton projection of an n x m matrix onto the isotropy quadric; this is
// the retraction used by random sampling.
Matrix project_isotropic(const Matrix& m, const BilinearForm& form, int max_iters = 20,
                         double tol = 1e-14);

// Exactly isotropic random n x m matrix: a random form-preserving element
// applied to a randomly filled standard frame [A; 0].
Matrix random_isotropic(int n, int m, const BilinearForm& form, Philox& rng, double scale = 1.0);

// Random element of SO(n,C) / Sp(n,C) as exp of a random Lie algebra element.
Matrix random_form_preserving(const BilinearForm& form, Philox& rng, double scale = 0.5);

struct IsotropicFrame {
    Matrix k;        // form-preserving, det 1
    double residual; // distance of the mapped span from the standard span
};

// Finds k with k^t J k = J, det k = 1 and k * alpha_top = [I; 0] * A for an
// upper-triangular A. For D kind with a maximal isotropic image the input
// must lie in the self-dual (plus) component.
IsotropicFrame standard_isotropic_frame(const Matrix& alpha_top, const BilinearForm& form,
                                        double tol = kDefaultTol);

// Which SO(n,C)-orbit a maximal isotropic image lies in (D kind only). The
// standard coordinate subspace is "plus" by convention.
IsotropicComponent selfdual_component(const Matrix& alpha_top, const BilinearForm& form,
                                      double tol = kDefaultTol);

// Complex Jacobian rank of the constraint alpha |-> alpha^t J alpha at a
// point, counting independent components of the (skew-)symmetric value.
int isotropy_jacobian_rank(const Matrix& alpha_top, const BilinearForm& form);

}  // namespace implode

#endif
