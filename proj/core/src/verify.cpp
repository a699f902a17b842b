#include "implode/verify.hpp"

#include <cmath>
#include <sstream>

#include "implode/errors.hpp"
#include "implode/forms.hpp"
#include "implode/kempf_ness.hpp"
#include "implode/linalg.hpp"
#include "implode/moment.hpp"
#include "implode/strata.hpp"

namespace implode {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Characteristic polynomial coefficients e_1..e_n from power traces via the
// Newton identities; stable for nearly nilpotent matrices where eigenvalue
// solvers are not.
std::vector<Complex> charpoly_coefficients(const Matrix& x) {
    const int n = static_cast<int>(x.rows());
    std::vector<Complex> p(n + 1, Complex(0, 0));
    Matrix power = Matrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        power = power * x;
        p[k] = power.trace();
    }
    std::vector<Complex> e(n + 1, Complex(0, 0));
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Complex acc(0, 0);
        for (int i = 1; i <= k; ++i) acc += (i % 2 ? 1.0 : -1.0) * e[k - i] * p[i];
        e[k] = acc / static_cast<double>(k);
    }
    return e;
}

}  // namespace

VerificationReport verify_so3_quadric(int samples, std::uint64_t seed) {
    VerificationReport report;
    report.name = "so3-quadric";
    report.samples = samples;
    report.tolerance = 1e-10;
    const BilinearForm form = build_form(GroupKind::B, 3);
    Philox rng(seed);
    double max_err = 0;
    for (int s = 0; s < samples; ++s) {
        const Matrix alpha = random_isotropic(3, 1, form, rng);
        const double defect = isotropy_defect(alpha, form);
        const Complex x = alpha(0, 0), y = alpha(1, 0), z = alpha(2, 0);
        // alpha^t J alpha = y^2 + 2xz; with x' = 2x this is the displayed
        // quadric y^2 + x'z.
        const Complex quadric = y * y + 2.0 * x * z;
        const Complex rescaled = y * y + (2.0 * x) * z;
        max_err = std::max({max_err, defect, std::abs(quadric), std::abs(rescaled)});
    }
    report.max_error = max_err;
    report.pass = max_err < report.tolerance;
    report.details = "isotropic samples satisfy the rescaled quadric y^2 + x'z = 0";
    return report;
}

Matrix sym2_rep(const Matrix& k) {
    if (k.rows() != 2 || k.cols() != 2) throw ShapeMismatch("sym2_rep needs a 2x2 matrix");
    // Action on the monomial basis (e1^2, e1 e2, e2^2), then conjugated into
    // the basis (e1^2/sqrt2, i e1 e2, e2^2/sqrt2) that carries the
    // antidiagonal form.
    const Complex a = k(0, 0), b = k(0, 1), c = k(1, 0), d = k(1, 1);
    Matrix mono(3, 3);
    mono << a * a, a * b, b * b,
        2.0 * a * c, a * d + b * c, 2.0 * b * d,
        c * c, c * d, d * d;
    Vector basis(3);
    basis << Complex(1.0 / kSqrt2, 0), Complex(0, 1), Complex(1.0 / kSqrt2, 0);
    Matrix out(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = mono(i, j) * basis(j) / basis(i);
    return out;
}

Quiver sym2_lift(const Quiver& q) {
    q.validate();
    if (!q.hyperkahler() || q.dv.dims != std::vector<int>{1, 2})
        throw ShapeMismatch("sym2 lift is defined for (1,2) hyperkahler quivers");
    const Complex a1 = q.alpha[0](0, 0), a2 = q.alpha[0](1, 0);
    const Complex b1 = q.beta[0](0, 0), b2 = q.beta[0](0, 1);
    Quiver out;
    out.dv = DimensionVector(GroupKind::B, {1, 3});
    out.mode = QuiverMode::hyperkahler;
    Matrix alpha(3, 1);
    alpha << kSqrt2 * a1 * a1, Complex(0, -2.0) * a1 * a2, kSqrt2 * a2 * a2;
    Matrix beta(1, 3);
    beta << b1 * b1 / kSqrt2, Complex(0, 1) * b1 * b2, b2 * b2 / kSqrt2;
    out.alpha.push_back(std::move(alpha));
    out.beta.push_back(std::move(beta));
    return out;
}

VerificationReport verify_sym2_fibres(int samples, std::uint64_t seed) {
    VerificationReport report;
    report.name = "sym2-fibres";
    report.samples = samples;
    report.tolerance = 1e-10;
    Philox rng(seed);
    const DimensionVector dv(GroupKind::A, {1, 2});
    int bad = 0;
    std::ostringstream histogram;
    int count4 = 0, count1 = 0;
    for (int s = 0; s < samples; ++s) {
        const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, seed + s);
        const Quiver image = sym2_lift(q);
        int preimages = 0;
        for (int ea = -1; ea <= 1; ea += 2)
            for (int eb = -1; eb <= 1; eb += 2) {
                Quiver flip = q;
                flip.alpha[0] *= static_cast<double>(ea);
                flip.beta[0] *= static_cast<double>(eb);
                const Quiver lifted = sym2_lift(flip);
                const double err = (lifted.alpha[0] - image.alpha[0]).norm() +
                                   (lifted.beta[0] - image.beta[0]).norm();
                if (err < report.tolerance * std::max(1.0, image.norm())) ++preimages;
            }
        if (preimages == 4)
            ++count4;
        else
            ++bad;
    }
    {
        Quiver zero = Quiver::zero(dv, QuiverMode::hyperkahler);
        const Quiver image = sym2_lift(zero);
        int preimages = 0;
        std::vector<Quiver> seen;
        for (int ea = -1; ea <= 1; ea += 2)
            for (int eb = -1; eb <= 1; eb += 2) {
                Quiver flip = zero;
                flip.alpha[0] *= static_cast<double>(ea);
                flip.beta[0] *= static_cast<double>(eb);
                bool duplicate = false;
                for (const Quiver& other : seen)
                    if ((other.alpha[0] - flip.alpha[0]).norm() +
                            (other.beta[0] - flip.beta[0]).norm() ==
                        0.0)
                        duplicate = true;
                if (!duplicate) {
                    seen.push_back(flip);
                    if ((sym2_lift(flip).alpha[0] - image.alpha[0]).norm() == 0.0) ++preimages;
                }
            }
        count1 = preimages;
    }
    histogram << "{4: " << count4 << "}, zero-quiver preimages: " << count1;
    report.max_error = static_cast<double>(bad);
    report.pass = bad == 0 && count1 == 1;
    report.details = histogram.str();
    return report;
}

VerificationReport verify_nilpotent_cone(int n, int samples, std::uint64_t seed) {
    if (n < 2 || n > 5) throw ShapeMismatch("nilpotent cone check supports n in 2..5");
    VerificationReport report;
    report.name = "nilpotent-cone";
    report.samples = samples;
    report.tolerance = 1e-6;
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const std::vector<Complex> zero_levels(dv.edges(), Complex(0, 0));
    const std::vector<double> zero_real(dv.edges(), 0.0);
    SolveOptions opts;
    opts.max_iters = 4000;
    opts.tol = 1e-9;
    double max_ratio = 0, max_coeff = 0;
    for (int s = 0; s < samples; ++s) {
        const Quiver q = random_on_complex_level(dv, zero_levels, seed + 977 * s);
        const SolveResult solved = solve_real_moment(q, zero_real, opts);
        if (!solved.report.converged)
            throw SolverFailed("real moment flow did not converge: " + solved.report.message);
        const KMoment km = k_moment(solved.quiver);
        const double xnorm = km.x.norm();
        if (xnorm > 1e-12) {
            Matrix power = km.x;
            for (int k = 1; k < n; ++k) power = power * km.x;
            max_ratio = std::max(max_ratio, power.norm() / std::pow(xnorm, n));
        }
        const auto coeffs = charpoly_coefficients(km.x);
        for (int k = 1; k <= n; ++k) max_coeff = std::max(max_coeff, std::abs(coeffs[k]));
    }
    report.max_error = std::max(max_ratio, max_coeff);
    std::ostringstream details;
    details << "max ||X^n||/||X||^n = " << max_ratio << ", max charpoly coefficient = " << max_coeff;
    report.details = details.str();
    report.pass = max_ratio < 1e-6 && max_coeff < 1e-8;
    return report;
}

VerificationReport verify_dimensions() {
    VerificationReport report;
    report.name = "dimensions";
    report.tolerance = 0;
    std::ostringstream details;
    bool ok = true;
    int checks = 0;

    // (a) 2(dim K + dim T) = dim_R M - 4 dim_R H for SU(n).
    for (int n = 2; n <= 6; ++n) {
        const int lhs = implosion_dimension(GroupKind::A, n, QuiverMode::hyperkahler);
        const int rhs = 4 * flat_space_dim(GroupKind::A, n, QuiverMode::hyperkahler) -
                        4 * gauge_group_dim(GroupKind::A, n);
        ++checks;
        if (lhs != rhs) {
            ok = false;
            details << "SU(" << n << ") hyperkahler mismatch " << lhs << " vs " << rhs << "; ";
        }
    }
    // (b) isotropy constraint dimension for the B kind via Jacobian rank.
    Philox rng(20217);
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{5, 2}, {7, 3}, {5, 1}}) {
        const BilinearForm form = build_form(GroupKind::B, n);
        const int expected_rank = m * (m + 1) / 2;
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix alpha = random_isotropic(n, m, form, rng);
            ++checks;
            if (isotropy_jacobian_rank(alpha, form) != expected_rank) {
                ok = false;
                details << "B-kind Jacobian rank off at n=" << n << " m=" << m << "; ";
                break;
            }
        }
    }
    // (c) symplectic quotient dimension for odd orthogonal groups.
    for (int k = 1; k <= 3; ++k) {
        const int n = 2 * k + 1;
        const int lhs = implosion_dimension(GroupKind::B, n, QuiverMode::symplectic);
        const int rhs = flat_space_dim(GroupKind::B, n, QuiverMode::symplectic) -
                        gauge_group_dim(GroupKind::B, n);
        ++checks;
        if (lhs != rhs) {
            ok = false;
            details << "SO(" << n << ") symplectic mismatch " << lhs << " vs " << rhs << "; ";
        }
    }
    report.samples = checks;
    report.pass = ok;
    report.max_error = ok ? 0.0 : 1.0;
    if (ok) details << "all integer identities hold";
    report.details = details.str();
    return report;
}

}  // namespace implode
