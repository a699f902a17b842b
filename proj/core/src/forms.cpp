#include "implode/forms.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "implode/errors.hpp"
#include "implode/linalg.hpp"

namespace implode {

namespace {

int sym_components(FormKind fk, int m) {
    return fk == FormKind::symmetric ? m * (m + 1) / 2 : m * (m - 1) / 2;
}

// Stack the independent components of alpha^t J alpha (upper triangle,
// including the diagonal only in the symmetric case).
Vector constraint_vector(const Matrix& alpha, const BilinearForm& form) {
    const Matrix c = alpha.transpose() * form.matrix * alpha;
    const int m = static_cast<int>(alpha.cols());
    Vector out(sym_components(form.form_kind, m));
    int k = 0;
    for (int i = 0; i < m; ++i)
        for (int j = (form.form_kind == FormKind::symmetric ? i : i + 1); j < m; ++j)
            out(k++) = c(i, j);
    return out;
}

// Complex Jacobian of the constraint map at alpha, as a dense matrix acting
// on vec(delta) (column-major).
Matrix constraint_jacobian(const Matrix& alpha, const BilinearForm& form) {
    const int n = static_cast<int>(alpha.rows());
    const int m = static_cast<int>(alpha.cols());
    const Matrix atj = alpha.transpose() * form.matrix;  // m x n
    const Matrix jta = form.matrix * alpha;               // n x m
    Matrix jac(sym_components(form.form_kind, m), n * m);
    int k = 0;
    for (int i = 0; i < m; ++i)
        for (int j = (form.form_kind == FormKind::symmetric ? i : i + 1); j < m; ++j) {
            // d/d delta_{r,c} of (alpha^t J delta + delta^t J alpha)_{i,j}
            for (int c = 0; c < m; ++c)
                for (int r = 0; r < n; ++r) {
                    Complex v = 0;
                    if (c == j) v += atj(i, r);
                    if (c == i) v += jta(r, j);
                    jac(k, c * n + r) = v;
                }
            ++k;
        }
    return jac;
}

struct AssembledFrame {
    Matrix g;       // form-preserving frame whose first m columns span im(alpha)
    double detsign; // sign of det(g), +-1 for B/D, +1 for C
};

// Bilinear Gram-Schmidt to an orthonormal basis for a nondegenerate complex
// symmetric form restricted to the columns of w.
Matrix bilinear_orthonormalize(Matrix w, const Matrix& jmat) {
    const int l = static_cast<int>(w.cols());
    auto pairing = [&](const Vector& a, const Vector& b) -> Complex {
        return (a.transpose() * jmat * b)(0, 0);
    };
    for (int i = 0; i < l; ++i) {
        // Pick a pivot with self-pairing bounded away from zero; columns of a
        // nondegenerate restriction always admit one among v_j and v_j + v_k.
        double best = std::abs(pairing(w.col(i), w.col(i)));
        int best_j = -1, best_k = -1;
        Complex best_mix = 0;
        for (int j = i; j < l && best < 1e-3; ++j) {
            const double pj = std::abs(pairing(w.col(j), w.col(j)));
            if (pj > best) {
                best = pj;
                best_j = j;
                best_k = -1;
            }
            for (int k = j + 1; k < l; ++k) {
                for (Complex mix : {Complex(1, 0), Complex(0, 1)}) {
                    const Vector cand = w.col(j) + mix * w.col(k);
                    const double pc = std::abs(pairing(cand, cand)) / cand.squaredNorm();
                    if (pc > best) {
                        best = pc;
                        best_j = j;
                        best_k = k;
                        best_mix = mix;
                    }
                }
            }
        }
        if (best_j >= 0) {
            if (best_k >= 0)
                w.col(best_j) += best_mix * w.col(best_k);
            w.col(best_j).swap(w.col(i));
        }
        const Complex p = pairing(w.col(i), w.col(i));
        if (std::abs(p) < 1e-12)
            throw NotIsotropic("degenerate restriction while orthonormalizing complement");
        w.col(i) /= std::sqrt(p);
        for (int j = i + 1; j < l; ++j) w.col(j) -= pairing(w.col(i), w.col(j)) * w.col(i);
    }
    return w;
}

// Symplectic Gram-Schmidt: basis ordered so that the local Gram matrix is
// the antidiagonal block [[0,J],[-J,0]] pattern restricted to the middle.
Matrix symplectic_adapt(Matrix w, const Matrix& jmat) {
    const int l = static_cast<int>(w.cols());
    auto pairing = [&](const Vector& a, const Vector& b) -> Complex {
        return (a.transpose() * jmat * b)(0, 0);
    };
    Matrix p(w.rows(), l / 2), q(w.rows(), l / 2);
    int npairs = 0;
    Matrix rest = w;
    while (rest.cols() >= 2) {
        const Vector a = rest.col(0);
        int best = -1;
        double mag = 0;
        for (int j = 1; j < rest.cols(); ++j) {
            const double v = std::abs(pairing(a, rest.col(j)));
            if (v > mag) {
                mag = v;
                best = j;
            }
        }
        if (best < 0 || mag < 1e-12)
            throw NotIsotropic("degenerate skew restriction while adapting complement");
        Vector b = rest.col(best) / pairing(a, rest.col(best));
        Matrix next(rest.rows(), rest.cols() - 2);
        int c = 0;
        for (int j = 1; j < rest.cols(); ++j) {
            if (j == best) continue;
            Vector v = rest.col(j);
            v += pairing(b, v) * a - pairing(a, v) * b;
            next.col(c++) = v;
        }
        p.col(npairs) = a;
        q.col(npairs) = b;
        ++npairs;
        rest = next;
    }
    Matrix out(w.rows(), l);
    for (int t = 0; t < npairs; ++t) {
        out.col(t) = p.col(t);
        out.col(l - 1 - t) = q.col(t);
    }
    return out;
}

AssembledFrame assemble_frame(const Matrix& alpha, const BilinearForm& form, bool fix_det) {
    const int n = form.n;
    const int m = static_cast<int>(alpha.cols());
    const Matrix& jmat = form.matrix;
    const Matrix u = alpha;

    // Dual isotropic frame V with U^t J V = I and V^t J V = 0.
    const Matrix b = u.transpose() * jmat;  // m x n, full row rank
    Matrix v = pseudo_inverse(b);
    const Matrix s = v.transpose() * jmat * v;
    if (form.form_kind == FormKind::symmetric)
        v -= 0.5 * u * s;
    else
        v += 0.5 * u * s;

    const int l = n - 2 * m;
    Matrix middle(n, 0);
    Matrix middle_onb(n, 0);
    if (l > 0) {
        Matrix rows(2 * m, n);
        rows.topRows(m) = u.transpose() * jmat;
        rows.bottomRows(m) = v.transpose() * jmat;
        middle_onb = kernel_basis(rows);
        if (middle_onb.cols() != l)
            throw NotIsotropic("complement of the isotropic pair has unexpected dimension");
    }

    auto build = [&](const Matrix& w0) {
        Matrix g(n, n);
        g.leftCols(m) = u;
        if (l > 0) {
            if (form.form_kind == FormKind::symmetric) {
                const Matrix wn = bilinear_orthonormalize(w0, jmat);
                const RealMatrix jmid = jmat.block(m, m, l, l).real();
                Eigen::SelfAdjointEigenSolver<RealMatrix> es(jmid);
                Matrix c(l, l);
                for (int i = 0; i < l; ++i) {
                    const double lam = es.eigenvalues()(i);
                    const Complex root = lam >= 0 ? Complex(std::sqrt(lam), 0)
                                                  : Complex(0, std::sqrt(-lam));
                    c.row(i) = root * es.eigenvectors().col(i).transpose().cast<Complex>();
                }
                g.block(0, m, n, l) = wn * c;
            } else {
                g.block(0, m, n, l) = symplectic_adapt(w0, jmat);
            }
        }
        for (int i = 1; i <= m; ++i) g.col(n - i) = v.col(i - 1);
        return g;
    };

    Matrix g = build(middle_onb);
    double det_re = g.determinant().real();
    if (fix_det && form.form_kind == FormKind::symmetric && det_re < 0) {
        if (l == 0)
            throw WrongComponent("maximal isotropic image lies in the anti-self-dual component");
        middle_onb.col(0) *= -1;
        g = build(middle_onb);
        det_re = g.determinant().real();
    }
    return {g, det_re >= 0 ? 1.0 : -1.0};
}

double standard_sign(const BilinearForm& form, int m) {
    Matrix std_frame = Matrix::Zero(form.n, m);
    for (int i = 0; i < m; ++i) std_frame(i, i) = 1;
    return assemble_frame(std_frame, form, false).detsign;
}

}  // namespace

BilinearForm build_form(GroupKind kind, int n) {
    if (n < 1) throw ShapeMismatch("form size must be positive");
    BilinearForm f;
    f.n = n;
    if (kind == GroupKind::C) {
        if (n % 2 != 0) throw OddSymplectic("skew form requires even n");
        f.form_kind = FormKind::skew;
        const int k = n / 2;
        f.matrix = Matrix::Zero(n, n);
        for (int i = 0; i < k; ++i) {
            f.matrix(i, k + (k - 1 - i)) = 1;
            f.matrix(k + i, k - 1 - i) = -1;
        }
    } else {
        if (kind == GroupKind::A)
            throw ModeError("A kind carries no bilinear form on the top node");
        f.form_kind = FormKind::symmetric;
        f.matrix = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) f.matrix(i, n - 1 - i) = 1;
    }
    return f;
}

double isotropy_defect(const Matrix& m, const BilinearForm& form, IsotropySide side) {
    if (side == IsotropySide::alpha) {
        if (m.rows() != form.n) throw ShapeMismatch("alpha-side matrix must have n rows");
        return (m.transpose() * form.matrix * m).norm();
    }
    if (m.cols() != form.n) throw ShapeMismatch("beta-side matrix must have n columns");
    return (m * form.matrix * m.transpose()).norm();
}

Matrix project_isotropic(const Matrix& m, const BilinearForm& form, int max_iters, double tol) {
    if (m.rows() != form.n) throw ShapeMismatch("matrix must have n rows");
    Matrix alpha = m;
    const int n = static_cast<int>(alpha.rows());
    const int cols = static_cast<int>(alpha.cols());
    for (int iter = 0; iter < max_iters; ++iter) {
        const Vector c = constraint_vector(alpha, form);
        const double scale = std::max(1.0, alpha.squaredNorm());
        if (c.norm() < tol * scale) break;
        const Matrix jac = constraint_jacobian(alpha, form);
        const Vector delta = -(pseudo_inverse(jac) * c);
        for (int cc = 0; cc < cols; ++cc)
            for (int rr = 0; rr < n; ++rr) alpha(rr, cc) += delta(cc * n + rr);
    }
    return alpha;
}

Matrix random_isotropic(int n, int m, const BilinearForm& form, Philox& rng, double scale) {
    if (2 * m > n) throw ShapeMismatch("isotropic subspace dimension exceeds n/2");
    Matrix frame = Matrix::Zero(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) frame(i, j) = rng.complex_gaussian(scale);
    return random_form_preserving(form, rng) * frame;
}

Matrix random_form_preserving(const BilinearForm& form, Philox& rng, double scale) {
    const int n = form.n;
    Matrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = rng.complex_gaussian(scale);
    Matrix h;
    if (form.form_kind == FormKind::symmetric)
        h = 0.5 * (a - form.matrix * a.transpose() * form.matrix);
    else
        h = 0.5 * (a + form.matrix * a.transpose() * form.matrix);
    return h.exp();
}

IsotropicFrame standard_isotropic_frame(const Matrix& alpha_top, const BilinearForm& form,
                                        double tol) {
    const int n = form.n;
    const int m = static_cast<int>(alpha_top.cols());
    if (alpha_top.rows() != n || m < 1) throw ShapeMismatch("alpha_top must be n x m, m >= 1");
    if (2 * m > n) throw ShapeMismatch("isotropic image dimension exceeds n/2");
    const double scale = std::max(1.0, alpha_top.squaredNorm());
    if (isotropy_defect(alpha_top, form) > 10 * tol * scale)
        throw NotIsotropic("image of alpha_top is not isotropic");
    Eigen::JacobiSVD<Matrix> svd(alpha_top);
    const auto& sigma = svd.singularValues();
    if (sigma(sigma.size() - 1) < tol * std::max(1.0, sigma(0)))
        throw RankDeficient("alpha_top is not injective");

    auto residual_of = [&](const Matrix& mapped) {
        return mapped.bottomRows(n - m).norm() / std::max(1e-300, alpha_top.norm());
    };

    // Already standard: identity frame.
    bool standard = alpha_top.bottomRows(n - m).norm() <= tol * alpha_top.norm();
    if (standard) {
        for (int i = 0; i < m && standard; ++i)
            for (int r = i + 1; r < m; ++r)
                if (std::abs(alpha_top(r, i)) > tol * alpha_top.norm()) standard = false;
        if (standard) return {Matrix::Identity(n, n), residual_of(alpha_top)};
    }

    if (form.form_kind == FormKind::symmetric && 2 * m == n &&
        assemble_frame(alpha_top, form, false).detsign != standard_sign(form, m))
        throw WrongComponent("alpha_top spans an anti-self-dual maximal isotropic");

    const AssembledFrame frame = assemble_frame(alpha_top, form, true);
    // g^{-1} = J^{-1} g^t J is exactly form-preserving.
    const Matrix jinv = form.form_kind == FormKind::symmetric ? form.matrix : Matrix(-form.matrix);
    Matrix k = jinv * frame.g.transpose() * form.matrix;

    // Triangularize the top block by a Levi element diag(Q^*, I, D).
    const Matrix top = (k * alpha_top).topRows(m);
    Eigen::HouseholderQR<Matrix> qr(top);
    const Matrix qstar = Matrix(qr.householderQ()).adjoint();
    const Matrix jtilde = form.matrix.topRightCorner(m, m);
    const Matrix dual = jtilde.inverse() * qstar.inverse().transpose() * jtilde;
    Matrix levi = Matrix::Zero(n, n);
    levi.topLeftCorner(m, m) = qstar;
    if (n - 2 * m > 0)
        levi.block(m, m, n - 2 * m, n - 2 * m) = Matrix::Identity(n - 2 * m, n - 2 * m);
    levi.bottomRightCorner(m, m) = dual;
    k = levi * k;
    return {k, residual_of(k * alpha_top)};
}

IsotropicComponent selfdual_component(const Matrix& alpha_top, const BilinearForm& form,
                                      double tol) {
    const int n = form.n;
    const int m = static_cast<int>(alpha_top.cols());
    if (form.form_kind != FormKind::symmetric || n % 2 != 0 || 2 * m != n)
        throw NotMaximalIsotropic("component classification needs D kind with m = n/2");
    const double scale = std::max(1.0, alpha_top.squaredNorm());
    if (isotropy_defect(alpha_top, form) > 10 * tol * scale)
        throw NotMaximalIsotropic("image is not isotropic");
    if (smallest_singular_value(alpha_top) < tol * std::max(1.0, alpha_top.operatorNorm()))
        throw NotMaximalIsotropic("image is not maximal");
    static std::map<int, double> anchor;
    double& std_sign = anchor[n];
    if (std_sign == 0.0) std_sign = standard_sign(form, m);
    const double sign = assemble_frame(alpha_top, form, false).detsign;
    return sign == std_sign ? IsotropicComponent::plus : IsotropicComponent::minus;
}

int isotropy_jacobian_rank(const Matrix& alpha_top, const BilinearForm& form) {
    const Matrix jac = constraint_jacobian(alpha_top, form);
    Eigen::JacobiSVD<Matrix> svd(jac);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > 1e-9 * sigma(0)) ++rank;
    return rank;
}

}  // namespace implode
