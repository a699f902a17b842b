#include "implode/kempf_ness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "implode/errors.hpp"
#include "implode/linalg.hpp"

namespace implode {

namespace {

// Residual matrices mu_i - t_i I of whichever real moment map applies.
std::vector<Matrix> real_residuals(const Quiver& q, const std::vector<double>& targets) {
    const MomentTriple t = moment_of(q);
    std::vector<Matrix> res;
    for (std::size_t i = 0; i < t.real_part.size(); ++i) {
        const int d = static_cast<int>(t.real_part[i].rows());
        res.push_back(t.real_part[i] - targets[i] * Matrix::Identity(d, d));
    }
    return res;
}

double residual_norm(const std::vector<Matrix>& res) {
    double s = 0;
    for (const auto& m : res) s += m.squaredNorm();
    return std::sqrt(s);
}

// Project a hermitian residual onto the flow subalgebra.
Matrix project_direction(const Matrix& r, GaugeSubgroup sub) {
    const int d = static_cast<int>(r.rows());
    Matrix h = 0.5 * (r + r.adjoint());
    switch (sub) {
        case GaugeSubgroup::full_unitary:
            return h;
        case GaugeSubgroup::special_unitary:
            return h - (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
        case GaugeSubgroup::full_torus: {
            Matrix diag = Matrix::Zero(d, d);
            diag.diagonal() = h.diagonal().real().cast<Complex>();
            return diag;
        }
        case GaugeSubgroup::special_torus: {
            Matrix diag = Matrix::Zero(d, d);
            Eigen::VectorXd v = h.diagonal().real();
            v.array() -= v.mean();
            diag.diagonal() = v.cast<Complex>();
            return diag;
        }
    }
    return h;
}

// Derivative of the real moment values along the hermitian tuple h.
std::vector<Matrix> moment_derivative(const Quiver& q, const std::vector<Matrix>& h) {
    const int e = q.dv.edges();
    std::vector<Matrix> dalpha(e), dbeta;
    auto blk = [&](int node) -> const Matrix* {
        return node < e ? &h[node] : nullptr;  // no block on the top node
    };
    for (int i = 0; i < e; ++i) {
        Matrix d = Matrix::Zero(q.alpha[i].rows(), q.alpha[i].cols());
        if (const Matrix* hn = blk(i + 1)) d += *hn * q.alpha[i];
        d -= q.alpha[i] * h[i];
        dalpha[i] = std::move(d);
    }
    if (q.hyperkahler()) {
        dbeta.resize(e);
        for (int i = 0; i < e; ++i) {
            Matrix d = h[i] * q.beta[i];
            if (const Matrix* hn = blk(i + 1)) d -= q.beta[i] * *hn;
            dbeta[i] = std::move(d);
        }
    }
    std::vector<Matrix> dmu(e);
    for (int i = 0; i < e; ++i) {
        Matrix m = dalpha[i].adjoint() * q.alpha[i] + q.alpha[i].adjoint() * dalpha[i];
        if (i > 0)
            m -= dalpha[i - 1] * q.alpha[i - 1].adjoint() + q.alpha[i - 1] * dalpha[i - 1].adjoint();
        if (q.hyperkahler()) {
            m -= dbeta[i] * q.beta[i].adjoint() + q.beta[i] * dbeta[i].adjoint();
            if (i > 0)
                m += dbeta[i - 1].adjoint() * q.beta[i - 1] + q.beta[i - 1].adjoint() * dbeta[i - 1];
        }
        dmu[i] = std::move(m);
    }
    return dmu;
}

// Directional derivative of 0.5 * sum ||mu_i - t_i||^2 along hermitian h.
double directional_derivative(const Quiver& q, const std::vector<Matrix>& res,
                              const std::vector<Matrix>& h) {
    const std::vector<Matrix> dmu = moment_derivative(q, h);
    double slope = 0;
    for (std::size_t i = 0; i < res.size(); ++i)
        slope += (res[i].adjoint() * dmu[i]).trace().real();
    return slope;
}

// Real basis of the flow subalgebra at one node.
std::vector<Matrix> node_basis(int d, GaugeSubgroup sub) {
    std::vector<Matrix> basis;
    const bool torus = sub == GaugeSubgroup::full_torus || sub == GaugeSubgroup::special_torus;
    const bool traceless =
        sub == GaugeSubgroup::special_unitary || sub == GaugeSubgroup::special_torus;
    if (traceless) {
        for (int k = 0; k + 1 < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(k, k) = 1;
            m(k + 1, k + 1) = -1;
            basis.push_back(std::move(m));
        }
    } else {
        for (int k = 0; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(k, k) = 1;
            basis.push_back(std::move(m));
        }
    }
    if (!torus) {
        for (int k = 0; k < d; ++k)
            for (int l = k + 1; l < d; ++l) {
                Matrix re = Matrix::Zero(d, d);
                re(k, l) = re(l, k) = 1;
                basis.push_back(std::move(re));
                Matrix im = Matrix::Zero(d, d);
                im(k, l) = Complex(0, 1);
                im(l, k) = Complex(0, -1);
                basis.push_back(std::move(im));
            }
    }
    return basis;
}

// Isometric vectorization of a hermitian tuple.
Eigen::VectorXd vectorize(const std::vector<Matrix>& ms) {
    int total = 0;
    for (const Matrix& m : ms) total += static_cast<int>(m.rows() * m.rows());
    Eigen::VectorXd v(total);
    int at = 0;
    const double rt2 = std::sqrt(2.0);
    for (const Matrix& m : ms) {
        const int d = static_cast<int>(m.rows());
        for (int k = 0; k < d; ++k) v(at++) = m(k, k).real();
        for (int k = 0; k < d; ++k)
            for (int l = k + 1; l < d; ++l) {
                v(at++) = rt2 * m(k, l).real();
                v(at++) = rt2 * m(k, l).imag();
            }
    }
    return v;
}

// Gauss-Newton direction: least-squares solve of D_mu(h) = -res over the
// subalgebra. Returns false when the residual is orthogonal to the range.
bool newton_direction(const Quiver& q, const std::vector<Matrix>& res, GaugeSubgroup sub,
                      std::vector<Matrix>& h_out) {
    const int e = q.dv.edges();
    std::vector<std::vector<Matrix>> bases(e);
    int cols = 0;
    for (int i = 0; i < e; ++i) {
        bases[i] = node_basis(q.dv.dims[i], sub);
        cols += static_cast<int>(bases[i].size());
    }
    if (cols == 0) return false;
    const Eigen::VectorXd rhs = -vectorize(res);
    Eigen::MatrixXd m(rhs.size(), cols);
    int col = 0;
    for (int i = 0; i < e; ++i)
        for (const Matrix& b : bases[i]) {
            std::vector<Matrix> h(e);
            for (int j = 0; j < e; ++j)
                h[j] = j == i ? b : Matrix::Zero(q.dv.dims[j], q.dv.dims[j]);
            m.col(col++) = vectorize(moment_derivative(q, h));
        }
    const Eigen::VectorXd x = m.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    if (!x.allFinite() || x.norm() == 0.0) return false;
    h_out.assign(e, Matrix());
    col = 0;
    for (int i = 0; i < e; ++i) {
        Matrix h = Matrix::Zero(q.dv.dims[i], q.dv.dims[i]);
        for (const Matrix& b : bases[i]) h += x(col++) * b;
        h_out[i] = std::move(h);
    }
    return true;
}

GaugeTag tag_of(GaugeSubgroup sub) {
    switch (sub) {
        case GaugeSubgroup::special_unitary:
            return GaugeTag::SL;
        case GaugeSubgroup::full_unitary:
            return GaugeTag::GL;
        case GaugeSubgroup::special_torus:
        case GaugeSubgroup::full_torus:
            return GaugeTag::TC;
    }
    return GaugeTag::GL;
}

int checked_rank(const Matrix& m, const SolveOptions& opts) {
    return guarded_rank(m, opts.rank_rel_tol, opts.rank_band);
}

// Rank against an absolute singular-value floor, for products whose own
// largest singular value is not a meaningful scale (for example alpha
// restricted to the incoming image, which may be numerically zero).
int floored_rank(const Matrix& m, double floor_sigma, const SolveOptions& opts) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sigma = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i) {
        const double s = sigma(i);
        if (floor_sigma > 0 && s > floor_sigma / opts.rank_band && s < floor_sigma * opts.rank_band)
            throw AmbiguousRank("singular value " + std::to_string(s) +
                                " lies in the ambiguity band around " +
                                std::to_string(floor_sigma));
        if (s > 0 && s >= floor_sigma) ++rank;
    }
    return rank;
}

// Cascading destabilizing weights: along the chain, weight each node's
// incoming-image directions +p_j with p_j increasing toward the top, and
// balance the complement so every block is traceless.
DestabilizingCertificate make_certificate(const Quiver& q, const SolveOptions& opts) {
    const int internal = q.dv.r() - 1;
    std::vector<Matrix> bases(internal);
    std::vector<int> split_dim(internal, 0);  // m_j, the +weighted image dimension
    int lcm = 1;
    for (int j = 0; j < internal; ++j) {
        const int d = q.dv.dims[j];
        Matrix basis = Matrix::Identity(d, d);
        if (j > 0) {
            const Matrix img = image_basis(q.alpha[j - 1], opts.rank_rel_tol);
            const int m = static_cast<int>(img.cols());
            if (m > 0 && m < d) {
                basis.leftCols(m) = img;
                basis.rightCols(d - m) = kernel_basis(img.adjoint(), opts.rank_rel_tol);
                split_dim[j] = m;
                lcm = std::lcm(lcm, d - m);
            }
        }
        bases[j] = std::move(basis);
    }
    DestabilizingCertificate cert;
    cert.node_bases = std::move(bases);
    for (int j = 0; j < internal; ++j) {
        const int d = q.dv.dims[j];
        const int m = split_dim[j];
        std::vector<int> w(d, 0);
        if (m > 0) {
            const int plus = j * lcm;  // grows toward the top of the chain
            const int minus = -plus * m / (d - m);
            for (int i = 0; i < d; ++i) w[i] = i < m ? plus : minus;
        }
        cert.weights.push_back(std::move(w));
    }
    return cert;
}

}  // namespace

GaugeElement DestabilizingCertificate::at(double t) const {
    GaugeElement g;
    g.tag = GaugeTag::GL;
    for (std::size_t j = 0; j < node_bases.size(); ++j) {
        const int d = static_cast<int>(node_bases[j].rows());
        Matrix diag = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) diag(i, i) = std::pow(t, weights[j][i]);
        g.blocks.push_back(node_bases[j] * diag * node_bases[j].adjoint());
    }
    return g;
}

SolveResult solve_real_moment(const Quiver& q, const std::vector<double>& target_levels,
                              const SolveOptions& opts) {
    q.validate();
    if (static_cast<int>(target_levels.size()) != q.dv.edges())
        throw ShapeMismatch("need one target level per internal node");
    if (q.hyperkahler()) {
        const MomentTriple t = hk_moment(q);
        double cres = 0;
        for (std::size_t i = 0; i < t.complex_part.size(); ++i) {
            const int d = static_cast<int>(t.complex_part[i].rows());
            cres = std::max(cres, (t.complex_part[i] -
                                   t.levels_complex[i] * Matrix::Identity(d, d)).norm());
        }
        if (cres > opts.complex_pre_tol)
            throw PreconditionViolated("complex moment residual " + std::to_string(cres) +
                                       " exceeds " + std::to_string(opts.complex_pre_tol));
    }

    SolveResult result{q, GaugeElement::identity(q.dv, tag_of(opts.subgroup)), {}};
    std::vector<Matrix> res = real_residuals(result.quiver, target_levels);
    double rnorm = residual_norm(res);
    result.report.objective_trace.push_back(0.5 * rnorm * rnorm);
    double step = opts.step_init;

    struct Attempt {
        bool accepted = false;
        Quiver quiver;
        GaugeElement gauge;
        std::vector<Matrix> res;
        double rnorm = 0;
        double tau = 0;
    };
    // Armijo backtracking along exp(tau h).
    auto line_search = [&](const std::vector<Matrix>& h, double slope, double tau0) {
        Attempt a;
        const double obj = 0.5 * rnorm * rnorm;
        double tau = tau0;
        while (tau > 1e-16) {
            GaugeElement gstep;
            gstep.tag = tag_of(opts.subgroup);
            for (const Matrix& hi : h) gstep.blocks.push_back(hermitian_exp(tau * hi));
            Quiver trial = act_gauge(result.quiver, gstep);
            std::vector<Matrix> trial_res = real_residuals(trial, target_levels);
            const double trial_norm = residual_norm(trial_res);
            if (0.5 * trial_norm * trial_norm <= obj + opts.armijo_c * tau * slope) {
                a.accepted = true;
                a.quiver = std::move(trial);
                a.gauge = std::move(gstep);
                a.res = std::move(trial_res);
                a.rnorm = trial_norm;
                a.tau = tau;
                return a;
            }
            gstep.blocks.clear();
            tau *= opts.step_shrink;
        }
        return a;
    };

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        if (rnorm < opts.tol) {
            result.report.converged = true;
            break;
        }
        // Gauss-Newton step when it makes clear progress, otherwise the
        // plain Kempf-Ness flow along the projected moment residual.
        Attempt best;
        std::vector<Matrix> hn;
        if (newton_direction(result.quiver, res, opts.subgroup, hn)) {
            const double slope = directional_derivative(result.quiver, res, hn);
            if (slope < 0) best = line_search(hn, slope, 1.0);
        }
        if (!best.accepted || best.rnorm > 0.5 * rnorm) {
            std::vector<Matrix> hg;
            for (const Matrix& r : res) hg.push_back(project_direction(r, opts.subgroup));
            const double slope = directional_derivative(result.quiver, res, hg);
            if (slope < 0) {
                const Attempt grad = line_search(hg, slope, step);
                if (grad.accepted && (!best.accepted || grad.rnorm < best.rnorm)) {
                    step = std::min(64.0 * opts.step_init, grad.tau / opts.step_shrink);
                    best = grad;
                }
            }
        }
        if (!best.accepted) {
            result.report.message = "line search stalled";
            break;
        }
        result.quiver = std::move(best.quiver);
        result.gauge = best.gauge.compose(result.gauge);
        res = std::move(best.res);
        rnorm = best.rnorm;
        result.report.objective_trace.push_back(0.5 * rnorm * rnorm);
        result.report.iterations = iter + 1;
    }
    if (!result.report.converged && rnorm < opts.tol) result.report.converged = true;
    result.report.residual = rnorm;
    if (!result.report.converged && result.report.message.empty())
        result.report.message = "max iterations reached";
    return result;
}

StabilityVerdict polystable_test(const Quiver& q, const SolveOptions& opts) {
    q.validate();
    StabilityVerdict verdict;
    const int e = q.dv.edges();

    if (q.hyperkahler()) {
        if (q.norm() == 0.0) {
            verdict.status = Stability::polystable;
            verdict.details = "zero quiver (pure zero summand)";
            return verdict;
        }
        Philox rng(opts.seed);
        int ambiguous = 0;
        for (int s = 0; s < opts.stability_samples; ++s) {
            Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
            const double nn = u.norm();
            u = {u.w / nn, u.x / nn, u.y / nn, u.z / nn};
            const Quiver rotated = quaternion_rotate(q, u);
            try {
                bool ok = true;
                for (int i = 0; i < e && ok; ++i) {
                    if (checked_rank(rotated.alpha[i], opts) != q.dv.dims[i]) ok = false;
                    if (ok && checked_rank(rotated.beta[i], opts) != q.dv.dims[i]) ok = false;
                }
                if (ok) {
                    verdict.status = Stability::stable;
                    verdict.details = "injective/surjective at a sampled complex structure";
                    return verdict;
                }
            } catch (const AmbiguousRank&) {
                ++ambiguous;
            }
        }
        if (ambiguous == opts.stability_samples)
            throw AmbiguousRank("every sampled complex structure hit the rank tolerance band");
        verdict.status = Stability::not_polystable;
        verdict.details = "no sampled complex structure certified hyperkahler stability";
        return verdict;
    }

    std::vector<int> rank(e);
    for (int i = 0; i < e; ++i) rank[i] = checked_rank(q.alpha[i], opts);

    bool stable = true;
    for (int i = 0; i < e; ++i)
        if (rank[i] != q.dv.dims[i]) stable = false;

    bool splits = true;
    std::string reason;
    for (int i = 0; i < e && splits; ++i) {
        const int prev = i > 0 ? rank[i - 1] : 0;
        if (prev > 0) {
            const Matrix img = image_basis(q.alpha[i - 1], opts.rank_rel_tol);
            const double floor_sigma = opts.rank_rel_tol * q.alpha[i].operatorNorm();
            if (floored_rank(q.alpha[i] * img, floor_sigma, opts) < prev) {
                splits = false;
                reason = "ker alpha_" + std::to_string(i) + " meets im alpha_" + std::to_string(i - 1);
            }
        }
        if (splits && rank[i] > prev && rank[i] != q.dv.dims[i]) {
            splits = false;
            reason = "rank jumps below full dimension at node " + std::to_string(i);
        }
    }

    if (stable) {
        verdict.status = Stability::stable;
        verdict.details = "all alpha maps injective";
    } else if (splits) {
        verdict.status = Stability::polystable;
        SplittingData split;
        for (int i = 0; i < e; ++i) {
            const int d = q.dv.dims[i];
            const int w = rank[i];
            split.injective_dims.push_back(w);
            split.zero_dims.push_back(d - w);
            Matrix basis(d, d);
            // W part: incoming image padded to a complement of the kernel.
            const Matrix ker = kernel_basis(q.alpha[i], opts.rank_rel_tol);
            Matrix wpart;
            if (w == d) {
                wpart = Matrix::Identity(d, d);
            } else if (i > 0 && rank[i - 1] == w) {
                wpart = image_basis(q.alpha[i - 1], opts.rank_rel_tol);
            } else {
                wpart = kernel_basis(ker.adjoint(), opts.rank_rel_tol);
            }
            basis.leftCols(w) = wpart;
            basis.rightCols(d - w) = ker;
            split.node_bases.push_back(std::move(basis));
        }
        verdict.splitting = std::move(split);
        verdict.details = "direct sum of a zero quiver and an injective quiver";
    } else {
        verdict.status = Stability::not_polystable;
        verdict.certificate = make_certificate(q, opts);
        verdict.details = reason;
    }
    return verdict;
}

double replay_certificate(const Quiver& q, const DestabilizingCertificate& cert) {
    const double base = std::max(q.norm(), 1e-300);
    double best = 1.0;
    // The gauge blocks become arbitrarily ill-conditioned as t -> 0, which is
    // the point; skip the invertibility guard.
    for (double t = 1.0; t > 1e-9; t *= 0.5) {
        const Quiver moved = act_gauge(q, cert.at(t), 0.0);
        best = std::min(best, moved.norm() / base);
    }
    return best;
}

}  // namespace implode
