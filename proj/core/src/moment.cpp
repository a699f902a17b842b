#include "implode/moment.hpp"

#include <algorithm>
#include <cmath>

#include "implode/errors.hpp"

namespace implode {

namespace {

void split_levels(MomentTriple& t) {
    t.residual_norm = 0.0;
    for (const Matrix& m : t.real_part) {
        const int d = static_cast<int>(m.rows());
        const double level = m.trace().real() / d;
        t.levels_real.push_back(level);
        t.residual_norm = std::max(t.residual_norm, (m - level * Matrix::Identity(d, d)).norm());
    }
    for (const Matrix& m : t.complex_part) {
        const int d = static_cast<int>(m.rows());
        const Complex level = m.trace() / static_cast<double>(d);
        t.levels_complex.push_back(level);
        t.residual_norm = std::max(t.residual_norm, (m - level * Matrix::Identity(d, d)).norm());
    }
}

// Matches the subdiagonal nu-pattern of the toric slice: first rows zero,
// then a diagonal band, bottom-aligned on the top edge.
bool matches_toric_alpha(const Matrix& a, double tol, double scale) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    if (rows < cols) return false;
    const int offset = rows - cols;
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            if (r != offset + c && std::abs(a(r, c)) > tol * scale) return false;
    return true;
}

}  // namespace

MomentTriple symplectic_moment(const Quiver& q) {
    q.validate();
    if (q.hyperkahler()) throw ModeError("symplectic moment map needs a symplectic quiver");
    MomentTriple t;
    for (int i = 0; i < q.dv.edges(); ++i) {
        Matrix m = q.alpha[i].adjoint() * q.alpha[i];
        if (i > 0) m -= q.alpha[i - 1] * q.alpha[i - 1].adjoint();
        t.real_part.push_back(std::move(m));
    }
    split_levels(t);
    return t;
}

MomentTriple hk_moment(const Quiver& q) {
    q.validate();
    if (!q.hyperkahler()) throw ModeError("hyperkahler moment map needs beta maps");
    MomentTriple t;
    for (int i = 0; i < q.dv.edges(); ++i) {
        Matrix c = q.beta[i] * q.alpha[i];
        Matrix r = q.alpha[i].adjoint() * q.alpha[i] - q.beta[i] * q.beta[i].adjoint();
        if (i > 0) {
            c -= q.alpha[i - 1] * q.beta[i - 1];
            r += q.beta[i - 1].adjoint() * q.beta[i - 1] - q.alpha[i - 1] * q.alpha[i - 1].adjoint();
        }
        t.complex_part.push_back(std::move(c));
        t.real_part.push_back(std::move(r));
    }
    split_levels(t);
    return t;
}

MomentTriple moment_of(const Quiver& q) {
    return q.hyperkahler() ? hk_moment(q) : symplectic_moment(q);
}

KMoment k_moment(const Quiver& q, double tol) {
    q.validate();
    const int n = q.dv.n();
    if (q.dv.edges() == 0) throw ModeError("k_moment needs at least one edge");
    if (q.hyperkahler()) {
        const Matrix prod = q.alpha.back() * q.beta.back();
        KMoment km;
        km.trace_removed = prod.trace();
        km.x = prod - (km.trace_removed / static_cast<double>(n)) * Matrix::Identity(n, n);
        return km;
    }
    // Symplectic quivers: only the toric pattern has a displayed closed form.
    const double scale = std::max(1e-300, q.norm());
    for (const Matrix& a : q.alpha)
        if (!matches_toric_alpha(a, tol, scale))
            throw ModeError("symplectic k_moment is defined on toric-pattern quivers only");
    const Matrix& top = q.alpha.back();
    const int m = static_cast<int>(top.cols());
    KMoment km;
    km.trace_removed = Complex(0, 0);
    km.x = Matrix::Zero(n, n);
    if (q.dv.kind == GroupKind::A) {
        // No bilinear form upstairs: tracefree part of alpha alpha^*.
        Matrix prod = top * top.adjoint();
        km.x = prod - (prod.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        km.trace_removed = prod.trace();
        return km;
    }
    for (int i = 0; i < m; ++i) {
        const double v = std::norm(top(n - m + i, i));
        km.x(n - m + i, n - m + i) = v;
        km.x(m - 1 - i, m - 1 - i) = -v;
    }
    return km;
}

bool chamber_contains(const std::vector<double>& levels_real, GroupKind) {
    const int r1 = static_cast<int>(levels_real.size());
    for (int j = 0; j < r1; ++j) {
        double sum = 0;
        for (int i = 0; i <= j; ++i) {
            sum += levels_real[j - i];
            if (sum < 0) return false;
        }
    }
    return true;
}

MomentTriple rotate_triple(const MomentTriple& t, const Quaternion& u) {
    if (t.complex_part.size() != t.real_part.size())
        throw ModeError("triple rotation needs hyperkahler moment data");
    const Complex a(u.w, u.x);
    const Complex b(u.y, u.z);
    MomentTriple out;
    for (std::size_t i = 0; i < t.real_part.size(); ++i) {
        const Matrix& mc = t.complex_part[i];
        const Matrix& mr = t.real_part[i];
        out.complex_part.push_back(a * a * mc - b * b * mc.adjoint() + a * b * mr);
        Matrix r = (std::norm(a) - std::norm(b)) * mr - 2.0 * a * std::conj(b) * mc -
                   2.0 * std::conj(a) * b * mc.adjoint();
        out.real_part.push_back(std::move(r));
    }
    split_levels(out);
    return out;
}

}  // namespace implode
