#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "implode/errors.hpp"
#include "implode/forms.hpp"
#include "implode/quiver.hpp"
#include "test_util.hpp"

using namespace implode;

namespace {

Matrix column3(Complex x, Complex y, Complex z) {
    Matrix m(3, 1);
    m << x, y, z;
    return m;
}

}  // namespace

TEST_CASE("build_form: displayed matrices") {
    const BilinearForm j3 = build_form(GroupKind::B, 3);
    Matrix expected(3, 3);
    expected << 0, 0, 1, 0, 1, 0, 1, 0, 0;
    CHECK((j3.matrix - expected).norm() == 0.0);

    const BilinearForm j2 = build_form(GroupKind::C, 2);
    Matrix skew(2, 2);
    skew << 0, 1, -1, 0;
    CHECK((j2.matrix - skew).norm() == 0.0);
    CHECK((j2.matrix.transpose() + j2.matrix).norm() == 0.0);

    const BilinearForm j1 = build_form(GroupKind::B, 1);
    CHECK(j1.matrix(0, 0) == Complex(1, 0));

    const BilinearForm j4 = build_form(GroupKind::C, 4);
    CHECK((j4.matrix.transpose() + j4.matrix).norm() == 0.0);
    CHECK((j4.matrix * j4.matrix + Matrix::Identity(4, 4)).norm() == 0.0);

    CHECK_THROWS_AS(build_form(GroupKind::C, 3), OddSymplectic);
}

TEST_CASE("isotropy defect: hand-evaluated triples") {
    const BilinearForm j3 = build_form(GroupKind::B, 3);
    CHECK(isotropy_defect(column3(1, 0, 0), j3) == 0.0);
    CHECK(isotropy_defect(column3(0, 1, 0), j3) == doctest::Approx(1.0));
    // (1, i sqrt 2, 1): y^2 + 2xz = -2 + 2 = 0.
    CHECK(isotropy_defect(column3(1, Complex(0, std::sqrt(2.0)), 1), j3) < 1e-15);
    CHECK_THROWS_AS(isotropy_defect(Matrix::Zero(2, 1), j3), ShapeMismatch);
}

TEST_CASE("isotropy defect is invariant under flavor and right gauge") {
    const BilinearForm form = build_form(GroupKind::B, 5);
    Philox rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix alpha = random_isotropic(5, 2, form, rng);
        const Matrix noisy = alpha + 0.1 * testutil::random_gl(5, rng).leftCols(2);
        const double defect = isotropy_defect(noisy, form);
        const Matrix k = random_form_preserving(form, rng);
        CHECK(isotropy_defect(k * noisy, form) == doctest::Approx(defect).epsilon(1e-10));
        const Matrix g = testutil::random_gl(2, rng);
        // alpha g has the same image, and (alpha g)^t J (alpha g) = g^t C g.
        const double moved = isotropy_defect(noisy * g, form);
        if (defect < 1e-14) CHECK(moved < 1e-12);
    }
}

TEST_CASE("newton projection reaches the quadric") {
    for (const GroupKind kind : {GroupKind::B, GroupKind::C}) {
        const int n = kind == GroupKind::B ? 7 : 6;
        const BilinearForm form = build_form(kind, n);
        for (int s = 0; s < 25; ++s) {
            Philox rng(100 + s);
            Matrix m(n, 3);
            for (int c = 0; c < 3; ++c)
                for (int r = 0; r < n; ++r) m(r, c) = rng.complex_gaussian();
            const Matrix projected = project_isotropic(m, form);
            CHECK(isotropy_defect(projected, form) < 1e-12);
        }
    }
}

TEST_CASE("standard frame: trivial and SO(3) cases") {
    const BilinearForm j3 = build_form(GroupKind::B, 3);
    const IsotropicFrame trivial = standard_isotropic_frame(column3(1, 0, 0), j3);
    CHECK((trivial.k - Matrix::Identity(3, 3)).norm() == 0.0);
    CHECK(trivial.residual < 1e-14);

    const IsotropicFrame rot = standard_isotropic_frame(column3(0, 0, 1), j3);
    CHECK((rot.k.transpose() * j3.matrix * rot.k - j3.matrix).norm() < 1e-12);
    CHECK(std::abs(rot.k.determinant() - Complex(1, 0)) < 1e-12);
    const Matrix mapped = rot.k * column3(0, 0, 1);
    CHECK(std::abs(mapped(0, 0) - Complex(1, 0)) < 1e-12);
    CHECK(mapped.bottomRows(2).norm() < 1e-12);
}

TEST_CASE("standard frame: 1000 random isotropic 5x2 inputs") {
    const BilinearForm form = build_form(GroupKind::B, 5);
    Philox rng(9);
    for (int s = 0; s < 1000; ++s) {
        const Matrix alpha = random_isotropic(5, 2, form, rng);
        if (smallest_singular_value(alpha) < 1e-6) continue;
        const IsotropicFrame frame = standard_isotropic_frame(alpha, form);
        CHECK(frame.residual < 1e-9);
        CHECK((frame.k.transpose() * form.matrix * frame.k - form.matrix).norm() < 1e-10);
        CHECK(std::abs(frame.k.determinant() - Complex(1, 0)) < 1e-10);
        // Mapped matrix is [I; 0] * A with A upper triangular.
        const Matrix mapped = frame.k * alpha;
        CHECK(std::abs(mapped(1, 0)) < 1e-9 * alpha.norm());
    }
}

TEST_CASE("standard frame: skew case and error paths") {
    const BilinearForm j6 = build_form(GroupKind::C, 6);
    Philox rng(13);
    for (int s = 0; s < 100; ++s) {
        const Matrix alpha = random_isotropic(6, 2, j6, rng);
        if (smallest_singular_value(alpha) < 1e-6) continue;
        const IsotropicFrame frame = standard_isotropic_frame(alpha, j6);
        CHECK(frame.residual < 1e-9);
        CHECK((frame.k.transpose() * j6.matrix * frame.k - j6.matrix).norm() < 1e-10);
    }

    const BilinearForm j5 = build_form(GroupKind::B, 5);
    Matrix nonisotropic = Matrix::Zero(5, 1);
    nonisotropic(2, 0) = 1;  // middle basis vector pairs with itself
    CHECK_THROWS_AS(standard_isotropic_frame(nonisotropic, j5), NotIsotropic);
    Matrix rankdef(5, 2);
    rankdef.setZero();
    rankdef(0, 0) = 1;
    rankdef(0, 1) = 1;
    CHECK_THROWS_AS(standard_isotropic_frame(rankdef, j5), RankDeficient);
}

TEST_CASE("selfdual component: convention, reflection, invariance") {
    const BilinearForm j4 = build_form(GroupKind::D, 4);
    Matrix standard = Matrix::Zero(4, 2);
    standard(0, 0) = 1;
    standard(1, 1) = 1;
    CHECK(selfdual_component(standard, j4) == IsotropicComponent::plus);

    // Swapping e2 and e3 preserves J and has determinant -1.
    Matrix reflect = Matrix::Zero(4, 4);
    reflect(0, 0) = reflect(3, 3) = 1;
    reflect(1, 2) = reflect(2, 1) = 1;
    CHECK((reflect.transpose() * j4.matrix * reflect - j4.matrix).norm() == 0.0);
    CHECK(std::abs(reflect.determinant() + Complex(1, 0)) < 1e-15);
    CHECK(selfdual_component(reflect * standard, j4) == IsotropicComponent::minus);

    Philox rng(17);
    for (int s = 0; s < 100; ++s) {
        const Matrix g = random_form_preserving(j4, rng);
        CHECK(selfdual_component(g * standard, j4) == IsotropicComponent::plus);
        CHECK(selfdual_component(g * reflect * standard, j4) == IsotropicComponent::minus);
    }

    CHECK_THROWS_AS(selfdual_component(standard.leftCols(1), j4), NotMaximalIsotropic);
}

TEST_CASE("frame rejects the anti-self-dual component for D kind") {
    const BilinearForm j4 = build_form(GroupKind::D, 4);
    Matrix standard = Matrix::Zero(4, 2);
    standard(0, 0) = 1;
    standard(1, 1) = 1;
    Matrix reflect = Matrix::Zero(4, 4);
    reflect(0, 0) = reflect(3, 3) = 1;
    reflect(1, 2) = reflect(2, 1) = 1;
    Philox rng(19);
    const Matrix g = random_form_preserving(j4, rng);
    CHECK_THROWS_AS(standard_isotropic_frame(g * reflect * standard, j4), WrongComponent);
    const IsotropicFrame frame = standard_isotropic_frame(g * standard, j4);
    CHECK(frame.residual < 1e-9);
}

TEST_CASE("constraint Jacobian rank matches the dimension count") {
    // B kind: n m - m(m+1)/2 free parameters, so the Jacobian has full rank
    // m(m+1)/2 at smooth points.
    const BilinearForm form = build_form(GroupKind::B, 5);
    Philox rng(23);
    for (int s = 0; s < 100; ++s) {
        const Matrix alpha = random_isotropic(5, 2, form, rng);
        CHECK(isotropy_jacobian_rank(alpha, form) == 3);
    }
}
