#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "implode/errors.hpp"
#include "implode/forms.hpp"
#include "implode/moment.hpp"
#include "implode/quiver.hpp"
#include "test_util.hpp"

using namespace implode;
using testutil::naive_mul;
using testutil::quiver_distance;
using testutil::random_gauge;

TEST_CASE("dimension vector invariants") {
    CHECK(DimensionVector(GroupKind::A, {1, 2, 3}).strictly_ordered());
    CHECK(DimensionVector(GroupKind::A, {1, 1, 3}).ordered());
    CHECK_FALSE(DimensionVector(GroupKind::A, {1, 1, 3}).strictly_ordered());
    CHECK(DimensionVector::full_flag_for(GroupKind::B, 5).dims == std::vector<int>{1, 2, 5});
    CHECK(DimensionVector::full_flag_for(GroupKind::C, 6).dims == std::vector<int>{1, 2, 3, 6});
    CHECK(DimensionVector::full_flag_for(GroupKind::A, 4).full_flag());
    CHECK_THROWS_AS(DimensionVector(GroupKind::B, {3, 5}), ShapeMismatch);  // 3 > 5/2
    CHECK_THROWS_AS(DimensionVector(GroupKind::A, {0, 2}), ShapeMismatch);
    CHECK_THROWS_AS(DimensionVector(GroupKind::C, {1, 3}), OddSymplectic);
}

TEST_CASE("gauge action: identity and hand-checked example") {
    const DimensionVector dv(GroupKind::A, {1, 2});
    Quiver q = Quiver::zero(dv, QuiverMode::symplectic);
    q.alpha[0] << Complex(1, 0), Complex(0, 0);

    CHECK(quiver_distance(act_gauge(q, GaugeElement::identity(dv)), q) == 0.0);

    GaugeElement g;
    g.tag = GaugeTag::GL;
    g.blocks.push_back(Matrix::Constant(1, 1, Complex(2, 0)));
    const Quiver moved = act_gauge(q, g);
    CHECK(std::abs(moved.alpha[0](0, 0) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(moved.alpha[0](1, 0)) == 0.0);
}

TEST_CASE("gauge action: composition and inverse laws") {
    const DimensionVector dv(GroupKind::A, {2, 3, 4});
    Philox rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 1000 + trial);
        const GaugeElement g = random_gauge(dv, GaugeTag::GL, rng);
        const GaugeElement h = random_gauge(dv, GaugeTag::GL, rng);
        // act(q, gh) = act(act(q, h), g), with the product formed by the
        // naive multiplication oracle.
        GaugeElement gh;
        gh.tag = GaugeTag::GL;
        for (std::size_t i = 0; i < g.blocks.size(); ++i)
            gh.blocks.push_back(naive_mul(g.blocks[i], h.blocks[i]));
        const double err = quiver_distance(act_gauge(q, gh), act_gauge(act_gauge(q, h), g));
        CHECK(err < 1e-12 * q.norm() * 100);

        const double inv_err = quiver_distance(act_gauge(act_gauge(q, g), g.inverse()), q);
        CHECK(inv_err < 1e-12 * q.norm() * 100);
    }
}

TEST_CASE("gauge subgroup tags are enforced") {
    const DimensionVector dv(GroupKind::A, {2, 3});
    const Quiver q = random_quiver(dv, QuiverMode::symplectic, 5);
    GaugeElement g;
    g.tag = GaugeTag::SL;
    g.blocks.push_back(2.0 * Matrix::Identity(2, 2));  // det 4
    CHECK_THROWS_AS(act_gauge(q, g), SubgroupViolation);
    g.tag = GaugeTag::U;
    CHECK_THROWS_AS(act_gauge(q, g), SubgroupViolation);
    g.tag = GaugeTag::TC;
    Matrix nondiag(2, 2);
    nondiag << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
    g.blocks[0] = nondiag;
    CHECK_THROWS_AS(act_gauge(q, g), SubgroupViolation);
    g.tag = GaugeTag::GL;
    g.blocks[0] = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(act_gauge(q, g), SubgroupViolation);
    g.blocks[0] = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(act_gauge(q, g), ShapeMismatch);
}

TEST_CASE("flavor action: identity, SO(3) rotation, conjugation of X") {
    // k = I leaves the quiver alone.
    const DimensionVector dv_so(GroupKind::B, {1, 3});
    Quiver q = Quiver::zero(dv_so, QuiverMode::symplectic);
    q.alpha[0] << Complex(0, 0), Complex(0, 0), Complex(1, 0);
    CHECK(quiver_distance(act_flavor(q, Matrix::Identity(3, 3)), q) == 0.0);

    // k = J diag(1,-1,1) is form-preserving with det 1 and sends e3 to e1.
    Matrix j3 = Matrix::Zero(3, 3);
    j3(0, 2) = j3(1, 1) = j3(2, 0) = 1;
    Matrix k = j3 * Eigen::Vector3cd(1, -1, 1).asDiagonal().toDenseMatrix();
    CHECK((k.transpose() * j3 * k - j3).norm() < 1e-15);
    CHECK(std::abs(k.determinant() - Complex(1, 0)) < 1e-15);
    const Quiver rotated = act_flavor(q, k);
    CHECK(std::abs(rotated.alpha[0](0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(rotated.alpha[0].bottomRows(2).norm() < 1e-15);

    // Non-form-preserving k must be rejected in so mode.
    CHECK_THROWS_AS(act_flavor(q, 2.0 * Matrix::Identity(3, 3)), FormViolation);

    // A mode: X = alpha_top beta_top conjugates under the flavor action.
    const DimensionVector dv(GroupKind::A, {1, 2, 3});
    Philox rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Quiver hk = random_quiver(dv, QuiverMode::hyperkahler, 300 + trial);
        Matrix s = testutil::random_gl(3, rng);
        s /= std::pow(s.determinant(), 1.0 / 3.0);  // SL(3)
        const Quiver moved = act_flavor(hk, s);
        const Matrix x = naive_mul(hk.alpha.back(), hk.beta.back());
        const Matrix x_moved = naive_mul(moved.alpha.back(), moved.beta.back());
        const double err = (x_moved - naive_mul(naive_mul(s, x), s.inverse())).norm();
        CHECK(err < 1e-12 * std::max(1.0, x.norm()) * 50);
    }
}

TEST_CASE("flavor and gauge actions commute") {
    Philox rng(31);
    for (const QuiverMode mode : {QuiverMode::symplectic, QuiverMode::hyperkahler}) {
        const DimensionVector dv(GroupKind::A, {1, 2, 4});
        for (int trial = 0; trial < 20; ++trial) {
            const Quiver q = random_quiver(dv, mode, 40 + trial);
            const GaugeElement g = random_gauge(dv, GaugeTag::GL, rng);
            const Matrix k = testutil::random_gl(4, rng);
            const double err =
                quiver_distance(act_flavor(act_gauge(q, g), k), act_gauge(act_flavor(q, k), g));
            CHECK(err < 1e-11 * std::max(1.0, q.norm()));
        }
    }
}

TEST_CASE("quaternion rotation: unit cases and paper j-action") {
    const DimensionVector dv(GroupKind::A, {1, 2});
    Quiver q = Quiver::zero(dv, QuiverMode::hyperkahler);
    q.alpha[0] << Complex(1, 0), Complex(0, 0);
    q.beta[0] << Complex(0, 0), Complex(1, 0);

    CHECK(quiver_distance(quaternion_rotate(q, Quaternion{1, 0, 0, 0}), q) == 0.0);

    const Quiver rotated = quaternion_rotate(q, Quaternion::j());
    // (alpha, beta) j = (-beta^*, alpha^*)
    CHECK(std::abs(rotated.alpha[0](0, 0)) == 0.0);
    CHECK(std::abs(rotated.alpha[0](1, 0) - Complex(-1, 0)) < 1e-15);
    CHECK(std::abs(rotated.beta[0](0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(rotated.beta[0](0, 1)) == 0.0);

    Quiver symp = Quiver::zero(dv, QuiverMode::symplectic);
    CHECK_THROWS_AS(quaternion_rotate(symp, Quaternion::j()), ModeError);
    CHECK_THROWS_AS(quaternion_rotate(q, Quaternion{0.5, 0, 0, 0}), NonUnit);
}

TEST_CASE("quaternion rotation: norm preservation and composition") {
    const DimensionVector dv(GroupKind::A, {1, 2, 3});
    Philox rng(77);
    auto random_unit = [&]() {
        Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = u.norm();
        return Quaternion{u.w / n, u.x / n, u.y / n, u.z / n};
    };
    for (int trial = 0; trial < 50; ++trial) {
        const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 900 + trial);
        const Quaternion u = random_unit();
        const Quaternion v = random_unit();
        CHECK(std::abs(quaternion_rotate(q, u).norm() - q.norm()) < 1e-10 * q.norm());
        const double err = quiver_distance(quaternion_rotate(quaternion_rotate(q, u), v),
                                           quaternion_rotate(q, v.times(u)));
        CHECK(err < 1e-10 * q.norm());
    }
}

TEST_CASE("quaternion rotation: moment triple equivariance") {
    const DimensionVector dv(GroupKind::A, {1, 2, 3});
    Philox rng(78);
    // j flips (mu_R, Re mu_C) and fixes Im mu_C.
    for (int trial = 0; trial < 100; ++trial) {
        const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 1500 + trial);
        const MomentTriple before = hk_moment(q);
        const MomentTriple after = hk_moment(quaternion_rotate(q, Quaternion::j()));
        for (std::size_t i = 0; i < before.levels_real.size(); ++i) {
            CHECK(std::abs(after.levels_real[i] + before.levels_real[i]) < 1e-10);
            CHECK(std::abs(after.levels_complex[i].real() + before.levels_complex[i].real()) <
                  1e-10);
            CHECK(std::abs(after.levels_complex[i].imag() - before.levels_complex[i].imag()) <
                  1e-10);
        }
    }
    // General u: computed triples match the closed-form SO(3) image.
    for (int trial = 0; trial < 50; ++trial) {
        const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 2500 + trial);
        Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = u.norm();
        u = {u.w / n, u.x / n, u.y / n, u.z / n};
        const MomentTriple direct = hk_moment(quaternion_rotate(q, u));
        const MomentTriple predicted = rotate_triple(hk_moment(q), u);
        for (std::size_t i = 0; i < direct.real_part.size(); ++i) {
            CHECK((direct.real_part[i] - predicted.real_part[i]).norm() < 1e-10 * (1 + q.norm()));
            CHECK((direct.complex_part[i] - predicted.complex_part[i]).norm() <
                  1e-10 * (1 + q.norm()));
        }
    }
}

TEST_CASE("random quivers: determinism, scale, generic rank") {
    const DimensionVector dv(GroupKind::A, {1, 2, 3});
    const Quiver a = random_quiver(dv, QuiverMode::hyperkahler, 42);
    const Quiver b = random_quiver(dv, QuiverMode::hyperkahler, 42);
    CHECK(quiver_distance(a, b) == 0.0);  // bit identical

    const Quiver z = random_quiver(dv, QuiverMode::symplectic, 42, 0.0);
    CHECK(z.norm() == 0.0);

    for (int s = 0; s < 1000; ++s) {
        const Quiver q = random_quiver(dv, QuiverMode::symplectic, 10000 + s);
        for (const Matrix& m : q.alpha) CHECK(smallest_singular_value(m) > 0.0);
    }
}

TEST_CASE("random quivers: isotropic top projection") {
    const DimensionVector dv(GroupKind::B, {1, 2, 5});
    const BilinearForm form = build_form(GroupKind::B, 5);
    for (int s = 0; s < 50; ++s) {
        const Quiver q = random_quiver(dv, QuiverMode::symplectic, 600 + s, 1.0, true);
        CHECK(isotropy_defect(q.alpha.back(), form) < 1e-12);
    }
}

TEST_CASE("random quivers on the complex level set") {
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, 4);
    const std::vector<Complex> levels{Complex(0.3, 0.1), Complex(0, 0), Complex(-0.2, 0.4)};
    for (int s = 0; s < 20; ++s) {
        const Quiver q = random_on_complex_level(dv, levels, 800 + s);
        const MomentTriple t = hk_moment(q);
        for (int i = 0; i < dv.edges(); ++i) {
            const int d = dv.dims[i];
            const Matrix expected = levels[i] * Matrix::Identity(d, d);
            CHECK((t.complex_part[i] - expected).norm() < 1e-12 * std::max(1.0, q.norm()));
        }
    }
}
