#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "implode/errors.hpp"
#include "implode/forms.hpp"
#include "implode/moment.hpp"
#include "implode/toric.hpp"
#include "test_util.hpp"

using namespace implode;

TEST_CASE("chamber level equations") {
    const auto nu2 = solve_chamber_levels({1.0, 1.0}, GroupKind::A);
    REQUIRE(nu2.size() == 2);
    CHECK(nu2[0] == std::vector<double>{1.0});
    CHECK(nu2[1] == std::vector<double>{1.0, 2.0});

    const auto zeros = solve_chamber_levels({0.0, 0.0}, GroupKind::A);
    CHECK(zeros[1] == std::vector<double>{0.0, 0.0});

    CHECK_THROWS_AS(solve_chamber_levels({1.0, -2.0}, GroupKind::A), OutsideChamber);
}

TEST_CASE("build_toric_quiver: patterns, zero, isotropy") {
    // All-zero nu gives the zero quiver.
    ToricQuiver zero;
    zero.nu = {{Complex(0, 0)}, {Complex(0, 0), Complex(0, 0)}};
    const DimensionVector dv5 = DimensionVector::full_flag_for(GroupKind::B, 5);
    CHECK(build_toric_quiver(zero, dv5).norm() == 0.0);

    // SO(5) full flag from lambda = (1,1): the built top map is isotropic.
    const Quiver q = build_toric_quiver(toric_from_chamber(solve_chamber_levels({1, 1}, GroupKind::B)), dv5);
    const BilinearForm j5 = build_form(GroupKind::B, 5);
    CHECK(isotropy_defect(q.alpha.back(), j5) == 0.0);

    // A-kind (1,2) hyperkahler slice: levels come out as (|nu|^2 - |mu|^2, nu mu).
    ToricQuiver t;
    t.nu = {{Complex(1, 0)}};
    t.mu = {{Complex(1, 0)}};
    const Quiver hk = build_toric_quiver(t, DimensionVector(GroupKind::A, {1, 2}));
    CHECK(hk.hyperkahler());
    CHECK(std::abs(hk.alpha[0](1, 0) - Complex(1, 0)) == 0.0);  // subdiagonal
    CHECK(std::abs(hk.beta[0](0, 1) - Complex(1, 0)) == 0.0);   // superdiagonal
    const MomentTriple mt = hk_moment(hk);
    CHECK(mt.levels_real[0] == doctest::Approx(0.0));           // |nu|^2 - |mu|^2
    CHECK(mt.levels_complex[0] == Complex(1, 0));               // nu mu
    CHECK(mt.residual_norm < 1e-15);

    ToricQuiver badshape;
    badshape.nu = {{Complex(1, 0), Complex(1, 0)}};
    CHECK_THROWS_AS(build_toric_quiver(badshape, DimensionVector(GroupKind::A, {1, 2})),
                    ShapeMismatch);
}

TEST_CASE("toric round trip recovers the levels exactly") {
    Philox rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const int r1 = 1 + static_cast<int>(rng.uniform() * 5);  // r - 1 in 1..5
        std::vector<double> levels;
        for (int i = 0; i < r1; ++i) levels.push_back(rng.uniform() * 2.0);
        for (const GroupKind kind : {GroupKind::A, GroupKind::B, GroupKind::C, GroupKind::D}) {
            std::vector<int> dims;
            for (int i = 1; i <= r1; ++i) dims.push_back(i);
            dims.push_back(kind == GroupKind::A ? r1 + 1
                                                : (kind == GroupKind::B ? 2 * r1 + 1 : 2 * r1));
            const DimensionVector dv(kind, dims);
            const Quiver q = build_toric_quiver(toric_from_chamber(solve_chamber_levels(levels, kind)), dv);
            const MomentTriple t = symplectic_moment(q);
            for (int i = 0; i < r1; ++i)
                CHECK(std::abs(t.levels_real[i] - levels[i]) < 1e-12 * std::max(1.0, levels[i]));
            CHECK(t.residual_norm < 1e-12);
            CHECK(chamber_contains(t.levels_real, kind));
            if (kind != GroupKind::A) {
                const BilinearForm form = build_form(kind, dv.n());
                CHECK(isotropy_defect(q.alpha.back(), form) < 1e-14);
            }
        }
    }
}

TEST_CASE("boundary levels produce vanishing nu") {
    const auto nu2 = solve_chamber_levels({1.0, 0.0, 0.0}, GroupKind::A);
    CHECK(nu2[1][0] == 0.0);          // lambda_2 = 0
    CHECK(nu2[2][0] == 0.0);          // lambda_3 = 0
    CHECK(nu2[2][1] == 0.0);          // lambda_3 + lambda_2 = 0
    CHECK(nu2[2][2] == doctest::Approx(1.0));
}

TEST_CASE("hypertoric moment and fibres") {
    HypertoricPoint p;
    p.pairs = {{Complex(1, 0), Complex(0, 0)}};
    auto m = hypertoric_moment(p);
    CHECK(m[0].first == Complex(0, 0));
    CHECK(m[0].second == doctest::Approx(1.0));

    p.pairs = {{Complex(1, 0), Complex(1, 0)}};
    m = hypertoric_moment(p);
    CHECK(m[0].first == Complex(1, 0));
    CHECK(m[0].second == doctest::Approx(0.0));

    p.pairs = {{Complex(2, 0), Complex(0, 1)}};
    m = hypertoric_moment(p);
    CHECK(m[0].first == Complex(0, 2));
    CHECK(m[0].second == doctest::Approx(3.0));

    // Phase-rotated points share the fibre.
    Philox rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        HypertoricPoint a, b;
        for (int l = 0; l < 3; ++l) {
            Complex av = rng.complex_gaussian() + Complex(2, 0);
            Complex bv = rng.complex_gaussian() + Complex(2, 0);
            const double theta = 6.283185307179586 * rng.uniform();
            const Complex phase(std::cos(theta), std::sin(theta));
            a.pairs.emplace_back(av, bv);
            b.pairs.emplace_back(av * phase, bv / phase);
        }
        CHECK(hypertoric_fibre_check(a, b));
    }

    HypertoricPoint p1, p2;
    p1.pairs = {{Complex(1, 0), Complex(1, 0)}};
    p2.pairs = {{Complex(2, 0), Complex(1, 0)}};
    CHECK_FALSE(hypertoric_fibre_check(p1, p2));

    HypertoricPoint boundary;
    boundary.pairs = {{Complex(0, 0), Complex(1, 0)}};
    CHECK_THROWS_AS(hypertoric_fibre_check(boundary, boundary), BoundaryPoint);
}

TEST_CASE("beta normal form: identity, the (1,2) example, random SU(3)") {
    // Already normal: identity transcript.
    ToricQuiver t;
    t.nu = {{Complex(1, 0)}};
    t.mu = {{Complex(2, 0)}};
    const Quiver normal = build_toric_quiver(t, DimensionVector(GroupKind::A, {1, 2}));
    const NormalFormResult same = beta_normal_form(normal);
    CHECK(same.identity);
    CHECK((same.flavor - Matrix::Identity(2, 2)).norm() == 0.0);

    // alpha = (1,1)^t, beta = (1,1): the standardized beta is (0, sqrt 2).
    Quiver q = Quiver::zero(DimensionVector(GroupKind::A, {1, 2}), QuiverMode::hyperkahler);
    q.alpha[0] << Complex(1, 0), Complex(1, 0);
    q.beta[0] << Complex(1, 0), Complex(1, 0);
    const NormalFormResult nf = beta_normal_form(q);
    CHECK_FALSE(nf.identity);
    CHECK(std::abs(nf.quiver.beta[0](0, 0)) < 1e-14);
    CHECK(std::abs(std::abs(nf.quiver.beta[0](0, 1)) - std::sqrt(2.0)) < 1e-12);

    // Random on-level stable SU(3) quivers come out in the display pattern.
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, 3);
    Philox rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Complex> levels{Complex(rng.gaussian(), rng.gaussian()),
                                          Complex(rng.gaussian(), rng.gaussian())};
        const Quiver sample = random_on_complex_level(dv, levels, 30000 + trial);
        const NormalFormResult res = beta_normal_form(sample);
        CHECK(is_beta_normal(res.quiver));
        // The complex moment equations force the alphas lower Hessenberg:
        // entries above the superdiagonal band vanish.
        const Matrix& a2 = res.quiver.alpha[1];  // 3 x 2
        CHECK(std::abs(a2(2, 0)) < 1e-8 * std::max(1.0, sample.norm()));
        // Gauge/flavor transcript replays: applying it to the input gives
        // the normal form.
        const Quiver replay = act_gauge(act_flavor(sample, res.flavor), res.gauge, 1e-6);
        CHECK(testutil::quiver_distance(replay, res.quiver) < 1e-9 * std::max(1.0, sample.norm()));
    }

    Quiver unstable = Quiver::zero(dv, QuiverMode::hyperkahler);
    CHECK_THROWS_AS(beta_normal_form(unstable), NotStableHere);
}

TEST_CASE("alpha_T projection preserves the complex moment residual") {
    // Subdiagonal alpha is untouched.
    ToricQuiver t;
    t.nu = {{Complex(2, 0)}};
    t.mu = {{Complex(3, 0)}};
    const Quiver toric = build_toric_quiver(t, DimensionVector(GroupKind::A, {1, 2}));
    const Quiver same = alpha_T_projection(toric);
    CHECK(testutil::quiver_distance(same, toric) == 0.0);

    // (1,2) normal-form quiver: residual before and after match to 1e-12.
    Quiver q = Quiver::zero(DimensionVector(GroupKind::A, {1, 2}), QuiverMode::hyperkahler);
    q.alpha[0] << Complex(0.7, 0.2), Complex(1.5, -0.3);
    q.beta[0] << Complex(0, 0), Complex(2, 1);
    const MomentTriple before = hk_moment(q);
    const Quiver projected = alpha_T_projection(q);
    const MomentTriple after = hk_moment(projected);
    CHECK(std::abs(before.levels_complex[0] - after.levels_complex[0]) < 1e-12);
    CHECK(std::abs(before.residual_norm - after.residual_norm) < 1e-12);

    // 100 random normalized SU(3) quivers: the projected quiver satisfies
    // the same complex equations.
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, 3);
    Philox rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Complex> levels{Complex(rng.gaussian(), rng.gaussian()),
                                          Complex(rng.gaussian(), rng.gaussian())};
        const Quiver sample = random_on_complex_level(dv, levels, 40000 + trial);
        const NormalFormResult res = beta_normal_form(sample);
        const Quiver projected3 = alpha_T_projection(res.quiver);
        const MomentTriple mt = hk_moment(projected3);
        double cres = 0;
        for (std::size_t i = 0; i < mt.complex_part.size(); ++i) {
            const int d = static_cast<int>(mt.complex_part[i].rows());
            cres = std::max(cres, (mt.complex_part[i] - levels[i] * Matrix::Identity(d, d)).norm());
        }
        CHECK(cres < 1e-9 * std::max(1.0, sample.norm()));
    }

    CHECK_THROWS_AS(alpha_T_projection(random_quiver(dv, QuiverMode::hyperkahler, 2)),
                    NotNormalForm);
}
