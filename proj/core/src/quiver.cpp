#include "implode/quiver.hpp"

#include <algorithm>
#include <cmath>

#include "implode/errors.hpp"
#include "implode/forms.hpp"
#include "implode/linalg.hpp"
#include "implode/rng.hpp"

namespace implode {

DimensionVector::DimensionVector(GroupKind k, std::vector<int> d) : kind(k), dims(std::move(d)) {
    if (dims.empty()) throw ShapeMismatch("dimension vector must be nonempty");
    for (int v : dims)
        if (v < 1) throw ShapeMismatch("node dimensions must be positive");
    if (kind == GroupKind::B && n() % 2 == 0)
        throw ShapeMismatch("B kind requires odd n");
    if ((kind == GroupKind::C || kind == GroupKind::D) && n() % 2 == 1)
        throw OddSymplectic("C/D kinds require even n");
    if (is_orthosymplectic(kind) && r() >= 2 && 2 * dims[r() - 2] > n())
        throw ShapeMismatch("next-to-top dimension exceeds n/2; no isotropic image fits");
}

bool DimensionVector::ordered() const {
    return std::is_sorted(dims.begin(), dims.end());
}

bool DimensionVector::strictly_ordered() const {
    for (std::size_t i = 1; i < dims.size(); ++i)
        if (dims[i] <= dims[i - 1]) return false;
    return true;
}

bool DimensionVector::full_flag() const {
    return dims == full_flag_dims(kind, n());
}

DimensionVector DimensionVector::full_flag_for(GroupKind kind, int n) {
    return DimensionVector(kind, full_flag_dims(kind, n));
}

void Quiver::validate() const {
    const int e = dv.edges();
    if (static_cast<int>(alpha.size()) != e)
        throw ShapeMismatch("expected " + std::to_string(e) + " alpha maps");
    if (hyperkahler()) {
        if (static_cast<int>(beta.size()) != e)
            throw ShapeMismatch("hyperkahler quiver needs a beta map per edge");
    } else if (!beta.empty()) {
        throw ModeError("symplectic quiver carries beta maps");
    }
    for (int i = 0; i < e; ++i) {
        if (alpha[i].rows() != dv.dims[i + 1] || alpha[i].cols() != dv.dims[i])
            throw ShapeMismatch("alpha[" + std::to_string(i) + "] has the wrong shape");
        if (hyperkahler() && (beta[i].rows() != dv.dims[i] || beta[i].cols() != dv.dims[i + 1]))
            throw ShapeMismatch("beta[" + std::to_string(i) + "] has the wrong shape");
    }
}

Quiver Quiver::zero(const DimensionVector& dv, QuiverMode mode) {
    Quiver q;
    q.dv = dv;
    q.mode = mode;
    for (int i = 0; i < dv.edges(); ++i) {
        q.alpha.push_back(Matrix::Zero(dv.dims[i + 1], dv.dims[i]));
        if (mode == QuiverMode::hyperkahler)
            q.beta.push_back(Matrix::Zero(dv.dims[i], dv.dims[i + 1]));
    }
    return q;
}

double Quiver::norm() const {
    double s = 0;
    for (const auto& a : alpha) s += a.squaredNorm();
    for (const auto& b : beta) s += b.squaredNorm();
    return std::sqrt(s);
}

GaugeElement GaugeElement::identity(const DimensionVector& dv, GaugeTag tag) {
    GaugeElement g;
    g.tag = tag;
    for (int i = 0; i < dv.r() - 1; ++i) g.blocks.push_back(Matrix::Identity(dv.dims[i], dv.dims[i]));
    return g;
}

void GaugeElement::validate(const DimensionVector& dv, double tol) const {
    if (static_cast<int>(blocks.size()) != dv.r() - 1)
        throw ShapeMismatch("gauge element needs one block per internal node");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Matrix& g = blocks[i];
        const int d = dv.dims[i];
        if (g.rows() != d || g.cols() != d)
            throw ShapeMismatch("gauge block " + std::to_string(i) + " has the wrong size");
        const double scale = std::max(1.0, g.norm());
        if (tag == GaugeTag::TC || tag == GaugeTag::T) {
            Matrix off = g;
            off.diagonal().setZero();
            if (off.norm() > tol * scale)
                throw SubgroupViolation("torus block " + std::to_string(i) + " is not diagonal");
        }
        if (tag == GaugeTag::U || tag == GaugeTag::SU || tag == GaugeTag::T) {
            if ((g.adjoint() * g - Matrix::Identity(d, d)).norm() > tol * scale * scale * d)
                throw SubgroupViolation("block " + std::to_string(i) + " is not unitary");
        }
        if (tag == GaugeTag::SL || tag == GaugeTag::SU) {
            if (std::abs(g.determinant() - Complex(1, 0)) > tol * std::pow(scale, d) * d)
                throw SubgroupViolation("block " + std::to_string(i) + " has determinant != 1");
        }
        if (smallest_singular_value(g) < tol * std::max(1.0, g.operatorNorm()))
            throw SubgroupViolation("gauge block " + std::to_string(i) + " is singular");
    }
}

GaugeElement GaugeElement::inverse() const {
    GaugeElement g;
    g.tag = tag;
    for (const auto& b : blocks) g.blocks.push_back(b.inverse());
    return g;
}

GaugeElement GaugeElement::compose(const GaugeElement& other) const {
    if (blocks.size() != other.blocks.size()) throw ShapeMismatch("gauge block counts differ");
    GaugeElement g;
    g.tag = tag;
    for (std::size_t i = 0; i < blocks.size(); ++i) g.blocks.push_back(blocks[i] * other.blocks[i]);
    return g;
}

Quiver act_gauge(const Quiver& q, const GaugeElement& g, double tol) {
    q.validate();
    g.validate(q.dv, tol);
    const int e = q.dv.edges();
    Quiver out = q;
    std::vector<Matrix> inv(g.blocks.size());
    for (std::size_t i = 0; i < g.blocks.size(); ++i) inv[i] = g.blocks[i].inverse();
    for (int i = 0; i < e; ++i) {
        const bool top = (i == e - 1);
        out.alpha[i] = (top ? q.alpha[i] : Matrix(g.blocks[i + 1] * q.alpha[i])) * inv[i];
        if (q.hyperkahler())
            out.beta[i] = g.blocks[i] * (top ? q.beta[i] : Matrix(q.beta[i] * inv[i + 1]));
    }
    return out;
}

Quiver act_flavor(const Quiver& q, const Matrix& k, double tol) {
    q.validate();
    const int n = q.dv.n();
    if (k.rows() != n || k.cols() != n) throw ShapeMismatch("flavor element must be n x n");
    const double scale = std::max(1.0, k.norm());
    if (smallest_singular_value(k) < tol * std::max(1.0, k.operatorNorm()))
        throw FormViolation("flavor element is singular");
    if (is_orthosymplectic(q.dv.kind)) {
        const BilinearForm form = build_form(q.dv.kind, n);
        if ((k.transpose() * form.matrix * k - form.matrix).norm() > tol * scale * scale * n)
            throw FormViolation("flavor element does not preserve the bilinear form");
    }
    Quiver out = q;
    if (q.dv.edges() > 0) {
        out.alpha.back() = k * q.alpha.back();
        if (q.hyperkahler()) out.beta.back() = q.beta.back() * k.inverse();
    }
    return out;
}

double Quaternion::norm() const {
    return std::sqrt(w * w + x * x + y * y + z * z);
}

Quaternion Quaternion::times(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

Quiver quaternion_rotate(const Quiver& q, const Quaternion& u, double tol) {
    q.validate();
    if (!q.hyperkahler()) throw ModeError("quaternion rotation requires hyperkahler mode");
    if (std::abs(u.norm() - 1.0) > tol) throw NonUnit("quaternion is not unit length");
    // u = a + b j with a = w + ix, b = y + iz; alpha' = a alpha - b beta^*,
    // beta' = a beta + b alpha^*.
    const Complex a(u.w, u.x);
    const Complex b(u.y, u.z);
    Quiver out = q;
    for (std::size_t i = 0; i < q.alpha.size(); ++i) {
        out.alpha[i] = a * q.alpha[i] - b * q.beta[i].adjoint();
        out.beta[i] = a * q.beta[i] + b * q.alpha[i].adjoint();
    }
    return out;
}

Quiver random_quiver(const DimensionVector& dv, QuiverMode mode, std::uint64_t seed, double scale,
                     bool isotropic_top) {
    Philox rng(seed);
    Quiver q;
    q.dv = dv;
    q.mode = mode;
    for (int i = 0; i < dv.edges(); ++i) {
        Matrix a(dv.dims[i + 1], dv.dims[i]);
        for (int c = 0; c < a.cols(); ++c)
            for (int r = 0; r < a.rows(); ++r) a(r, c) = rng.complex_gaussian(scale);
        q.alpha.push_back(std::move(a));
        if (mode == QuiverMode::hyperkahler) {
            Matrix b(dv.dims[i], dv.dims[i + 1]);
            for (int c = 0; c < b.cols(); ++c)
                for (int r = 0; r < b.rows(); ++r) b(r, c) = rng.complex_gaussian(scale);
            q.beta.push_back(std::move(b));
        }
    }
    if (isotropic_top && is_orthosymplectic(dv.kind) && dv.edges() > 0 && scale > 0) {
        const BilinearForm form = build_form(dv.kind, dv.n());
        q.alpha.back() = project_isotropic(q.alpha.back(), form);
    }
    return q;
}

Quiver random_on_complex_level(const DimensionVector& dv, const std::vector<Complex>& levels,
                               std::uint64_t seed, double scale) {
    if (static_cast<int>(levels.size()) != dv.edges())
        throw ShapeMismatch("need one complex level per internal node");
    Philox rng(seed);
    Quiver q;
    q.dv = dv;
    q.mode = QuiverMode::hyperkahler;
    for (int i = 0; i < dv.edges(); ++i) {
        Matrix a(dv.dims[i + 1], dv.dims[i]);
        for (int c = 0; c < a.cols(); ++c)
            for (int r = 0; r < a.rows(); ++r) a(r, c) = rng.complex_gaussian(scale);
        q.alpha.push_back(std::move(a));
    }
    // Solve beta_i alpha_i = levels[i] I + alpha_{i-1} beta_{i-1} edge by edge.
    for (int i = 0; i < dv.edges(); ++i) {
        const int d = dv.dims[i];
        Matrix target = levels[i] * Matrix::Identity(d, d);
        if (i > 0) target += q.alpha[i - 1] * q.beta[i - 1];
        const Matrix pinv = pseudo_inverse(q.alpha[i]);
        Matrix b = target * pinv;
        Matrix noise(d, dv.dims[i + 1]);
        for (int c = 0; c < noise.cols(); ++c)
            for (int r = 0; r < noise.rows(); ++r) noise(r, c) = rng.complex_gaussian(scale);
        b += noise * (Matrix::Identity(dv.dims[i + 1], dv.dims[i + 1]) - q.alpha[i] * pinv);
        q.beta.push_back(std::move(b));
    }
    return q;
}

}  // namespace implode
