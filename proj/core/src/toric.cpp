#include "implode/toric.hpp"

#include <cmath>

#include "implode/errors.hpp"
#include "implode/linalg.hpp"

namespace implode {

namespace {

void check_toric_dv(const ToricQuiver& t, const DimensionVector& dv) {
    const int e = dv.edges();
    if (static_cast<int>(t.nu.size()) != e)
        throw ShapeMismatch("toric quiver needs one nu row per edge");
    for (int j = 0; j < e; ++j) {
        if (dv.dims[j] != j + 1)
            throw ShapeMismatch("toric pattern requires dims (1, 2, ..., r-1, n)");
        if (static_cast<int>(t.nu[j].size()) != j + 1)
            throw ShapeMismatch("nu row " + std::to_string(j) + " must have " +
                                std::to_string(j + 1) + " entries");
        if (t.hyperkahler() && static_cast<int>(t.mu[j].size()) != j + 1)
            throw ShapeMismatch("mu row " + std::to_string(j) + " must have " +
                                std::to_string(j + 1) + " entries");
    }
    if (t.hyperkahler() && static_cast<int>(t.mu.size()) != e)
        throw ShapeMismatch("mu needs one row per edge");
}

}  // namespace

std::vector<std::vector<double>> solve_chamber_levels(const std::vector<double>& levels_real,
                                                      GroupKind) {
    const int r1 = static_cast<int>(levels_real.size());
    std::vector<std::vector<double>> out(r1);
    for (int j = 0; j < r1; ++j) {
        double sum = 0;
        for (int i = 0; i <= j; ++i) {
            sum += levels_real[j - i];
            if (sum < 0)
                throw OutsideChamber("partial sum lambda_" + std::to_string(j + 1) + " + ... + lambda_" +
                                     std::to_string(j - i + 1) + " = " + std::to_string(sum) +
                                     " is negative");
            out[j].push_back(sum);
        }
    }
    return out;
}

ToricQuiver toric_from_chamber(const std::vector<std::vector<double>>& nu_squared) {
    ToricQuiver t;
    for (const auto& row : nu_squared) {
        std::vector<Complex> nu_row;
        for (double v : row) {
            if (v < 0) throw OutsideChamber("negative squared modulus");
            nu_row.push_back(Complex(std::sqrt(v), 0));
        }
        t.nu.push_back(std::move(nu_row));
    }
    return t;
}

Quiver build_toric_quiver(const ToricQuiver& t, const DimensionVector& dv) {
    check_toric_dv(t, dv);
    const int e = dv.edges();
    Quiver q = Quiver::zero(dv, t.hyperkahler() ? QuiverMode::hyperkahler : QuiverMode::symplectic);
    for (int j = 0; j < e; ++j) {
        const int rows = dv.dims[j + 1];
        const int cols = dv.dims[j];
        const int offset = rows - cols;  // 1 on inner edges, n - (r-1) on the top edge
        for (int i = 0; i < cols; ++i) q.alpha[j](offset + i, i) = t.nu[j][i];
        if (t.hyperkahler())
            for (int i = 0; i < cols; ++i) q.beta[j](i, offset + i) = t.mu[j][i];
    }
    return q;
}

std::vector<std::pair<Complex, double>> hypertoric_moment(const HypertoricPoint& p) {
    std::vector<std::pair<Complex, double>> out;
    for (const auto& [a, b] : p.pairs) out.emplace_back(a * b, std::norm(a) - std::norm(b));
    return out;
}

bool hypertoric_fibre_check(const HypertoricPoint& p, const HypertoricPoint& q, double tol) {
    if (p.pairs.size() != q.pairs.size()) throw ShapeMismatch("points have different lengths");
    double scale = 0;
    for (const auto& [a, b] : p.pairs) scale = std::max({scale, std::abs(a), std::abs(b)});
    for (const auto& [a, b] : q.pairs) scale = std::max({scale, std::abs(a), std::abs(b)});
    for (const auto& [a, b] : p.pairs)
        if (std::abs(a) < tol * scale || std::abs(b) < tol * scale)
            throw BoundaryPoint("a coordinate vanishes; not in the open subset");
    for (const auto& [a, b] : q.pairs)
        if (std::abs(a) < tol * scale || std::abs(b) < tol * scale)
            throw BoundaryPoint("a coordinate vanishes; not in the open subset");

    const auto mp = hypertoric_moment(p);
    const auto mq = hypertoric_moment(q);
    bool moment_eq = true;
    for (std::size_t l = 0; l < mp.size(); ++l) {
        if (std::abs(mp[l].first - mq[l].first) > tol * scale * scale) moment_eq = false;
        if (std::abs(mp[l].second - mq[l].second) > tol * scale * scale) moment_eq = false;
    }
    bool phase_ok = true;
    for (std::size_t l = 0; l < mp.size(); ++l) {
        const Complex phase = q.pairs[l].first / p.pairs[l].first;
        if (std::abs(std::abs(phase) - 1.0) > 100 * tol) phase_ok = false;
        if (std::abs(q.pairs[l].second * phase - p.pairs[l].second) >
            100 * tol * std::abs(p.pairs[l].second))
            phase_ok = false;
    }
    return moment_eq && phase_ok;
}

bool is_beta_normal(const Quiver& q, double tol) {
    if (!q.hyperkahler()) return false;
    const double scale = std::max(1e-300, q.norm());
    for (int j = 0; j < q.dv.edges(); ++j) {
        const Matrix& b = q.beta[j];
        const int rows = static_cast<int>(b.rows());
        const int cols = static_cast<int>(b.cols());
        const int offset = cols - rows;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                if (c == offset + r) {
                    if (std::abs(b(r, c)) <= tol * scale) return false;  // mu must not vanish
                } else if (std::abs(b(r, c)) > tol * scale) {
                    return false;
                }
            }
    }
    return true;
}

NormalFormResult beta_normal_form(const Quiver& q, const SolveOptions& opts) {
    q.validate();
    if (!q.hyperkahler()) throw ModeError("beta normal form needs a hyperkahler quiver");
    if (q.dv.kind != GroupKind::A)
        throw ModeError("the kernel-flag normal form is defined for the A kind");
    if (!q.dv.full_flag()) throw ShapeMismatch("beta normal form needs the full flag (1,...,n)");
    const int e = q.dv.edges();
    const int n = q.dv.n();
    for (int j = 0; j < e; ++j) {
        if (guarded_rank(q.alpha[j], opts.rank_rel_tol, opts.rank_band) != q.dv.dims[j])
            throw NotStableHere("alpha_" + std::to_string(j) + " is not injective here");
        if (guarded_rank(q.beta[j], opts.rank_rel_tol, opts.rank_band) != q.dv.dims[j])
            throw NotStableHere("beta_" + std::to_string(j) + " is not surjective here");
    }

    NormalFormResult result{q, Matrix::Identity(n, n), GaugeElement::identity(q.dv, GaugeTag::SL),
                            true};
    if (is_beta_normal(q)) return result;
    result.identity = false;

    // Adapted unitary basis for the flag of kernels of the beta compositions.
    Matrix adapted(n, n);
    int filled = 0;
    Matrix composite = Matrix::Identity(n, n);
    std::vector<Matrix> kernels;  // kernel of beta[j] ... beta[e-1], j descending
    for (int j = e - 1; j >= 0; --j) {
        composite = q.beta[j] * composite;
        kernels.push_back(kernel_basis(composite));
    }
    for (const Matrix& k : kernels) {
        // Columns of k spanning the next flag step; orthogonalize against
        // what is already in place.
        for (int c = 0; c < k.cols() && filled < n; ++c) {
            Vector v = k.col(c);
            for (int i = 0; i < filled; ++i) v -= adapted.col(i).dot(v) * adapted.col(i);
            const double len = v.norm();
            if (len > 1e-10) adapted.col(filled++) = v / len;
        }
    }
    // Complete the basis.
    for (int c = 0; c < n && filled < n; ++c) {
        Vector v = Vector::Zero(n);
        v(c) = 1;
        for (int i = 0; i < filled; ++i) v -= adapted.col(i).dot(v) * adapted.col(i);
        const double len = v.norm();
        if (len > 1e-10) adapted.col(filled++) = v / len;
    }
    if (filled != n) throw NotStableHere("kernel flag is degenerate");
    adapted.col(n - 1) *= adapted.determinant();  // land in SU(n)
    result.flavor = adapted.adjoint();

    Quiver cur = act_flavor(q, result.flavor);

    // Fix the gauge blocks from the top edge down; each step makes beta_j
    // exactly [0 | D_j] with det-1 normalization absorbed into D_j.
    std::vector<Matrix> blocks(e);
    for (int j = e - 1; j >= 0; --j) {
        const Matrix& b = cur.beta[j];
        const int d = q.dv.dims[j];
        const Matrix square = b.rightCols(d);
        Matrix dscale = Matrix::Identity(d, d);
        dscale(0, 0) = square.determinant();
        blocks[j] = dscale * square.inverse();
        Matrix nb = Matrix::Zero(d, d + 1);
        nb.rightCols(d) = dscale;
        cur.beta[j] = nb;
        if (j > 0) cur.beta[j - 1] = cur.beta[j - 1] * blocks[j].inverse();
    }
    result.gauge.blocks = std::move(blocks);
    result.gauge.tag = GaugeTag::SL;
    result.quiver = act_gauge(act_flavor(q, result.flavor), result.gauge);
    // Flush roundoff below the pattern threshold so downstream pattern
    // checks see exact zeros.
    const double scale = std::max(1e-300, result.quiver.norm());
    for (Matrix& b : result.quiver.beta)
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c)
                if (c != b.cols() - b.rows() + r && std::abs(b(r, c)) < 1e-12 * scale) b(r, c) = 0;
    return result;
}

Quiver alpha_T_projection(const Quiver& q_normal, double tol) {
    if (!is_beta_normal(q_normal, tol))
        throw NotNormalForm("quiver is not in beta normal form");
    Quiver out = q_normal;
    for (int j = 0; j < out.dv.edges(); ++j) {
        const int rows = static_cast<int>(out.alpha[j].rows());
        const int cols = static_cast<int>(out.alpha[j].cols());
        Matrix trunc = Matrix::Zero(rows, cols);
        const int offset = rows - cols;
        for (int i = 0; i < cols; ++i) trunc(offset + i, i) = out.alpha[j](offset + i, i);
        out.alpha[j] = trunc;
    }
    return out;
}

}  // namespace implode
