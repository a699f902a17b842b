#include "implode/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "implode/errors.hpp"

namespace implode {

int guarded_rank(const Matrix& m, double rel_tol, double band) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() ? sigma(0) : 0.0;
    if (smax == 0.0) return 0;
    const double cut = rel_tol * smax;
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i) {
        const double s = sigma(i);
        if (s > cut / band && s < cut * band)
            throw AmbiguousRank("singular value " + std::to_string(s) +
                                " lies in the ambiguity band around " + std::to_string(cut));
        if (s >= cut) ++rank;
    }
    return rank;
}

Matrix pseudo_inverse(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return Matrix(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double cut = rel_tol * (sigma.size() ? sigma(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut) inv(i) = 1.0 / sigma(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Matrix image_basis(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    const double cut = rel_tol * (sigma.size() ? sigma(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut && sigma(i) > 0.0) ++rank;
    return svd.matrixU().leftCols(rank);
}

Matrix kernel_basis(const Matrix& m, double rel_tol) {
    if (m.size() == 0 || m.cols() == 0) return Matrix(m.cols(), m.cols());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cut = rel_tol * (sigma.size() ? sigma(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut && sigma(i) > 0.0) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

double smallest_singular_value(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().minCoeff();
}

Matrix hermitian_exp(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXd elam(lam.size());
    for (int i = 0; i < lam.size(); ++i) elam(i) = std::exp(lam(i));
    return es.eigenvectors() * elam.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_unitary(int n, Philox& rng) {
    Matrix g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the factorization is unique.
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0) q.col(j) *= d / a;
    }
    return q;
}

}  // namespace implode
