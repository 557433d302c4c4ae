#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qnd/instrument.hpp"
#include "qnd/povm.hpp"
#include "qnd/regions.hpp"
#include "qnd/sampling.hpp"

using namespace qnd;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("rotations act as SO(3) on Bloch vectors") {
    const Rotation r(kYAxis, kPi / 2.0);
    CHECK((r.apply(kXAxis) - (-kZAxis)).norm() < 1e-15);
    CHECK((r.apply(kZAxis) - kXAxis).norm() < 1e-15);

    const Rotation taking = Rotation::taking({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
    CHECK((taking.apply(kZAxis) - kXAxis).norm() < 1e-15);
    CHECK(Rotation::taking(kXAxis, kXAxis).is_identity());
    // antipodal pair still lands correctly
    const Rotation flip = Rotation::taking(kXAxis, -kXAxis);
    CHECK((flip.apply(kXAxis) + kXAxis).norm() < 1e-12);

    SUBCASE("SU(2) matrix implements the same rotation") {
        const Rotation rot(Vec3{0.3, -0.5, 0.8}, 1.234);
        const Vec3 v{0.2, 0.7, -0.4};
        const Mat2 u = su2_from_rotation(rot);
        CHECK(is_unitary(u));
        const Mat2 conjugated = u * mat_from_bloch(0.0, v) * u.adjoint();
        HermitianOp back = HermitianOp::from_mat(conjugated);
        CHECK((back.v - rot.apply(v)).norm() < 1e-14);
    }
}

TEST_CASE("psd_sqrt closed form") {
    const HermitianOp one = HermitianOp::identity();
    CHECK(psd_sqrt(one).c == doctest::Approx(1.0));
    CHECK(psd_sqrt(one).v.norm() == doctest::Approx(0.0));

    const HermitianOp projector{0.5, kZAxis * 0.5};
    const HermitianOp root = psd_sqrt(projector);
    CHECK(std::abs(root.c - projector.c) < 1e-15);
    CHECK((root.v - projector.v).norm() < 1e-15);

    SUBCASE("squaring the root reproduces the input") {
        const HermitianOp m{0.5, kZAxis * 0.25};  // 1/2 (1 + 1/2 z.sigma)
        const HermitianOp s = psd_sqrt(m);
        const Mat2 squared = s.to_mat() * s.to_mat();
        CHECK(squared.max_abs_diff(m.to_mat()) < 1e-12);
        // same against the spectral matrix root
        CHECK(mat_sqrt_psd(m.to_mat()).max_abs_diff(s.to_mat()) < 1e-12);
    }

    SUBCASE("random PSD operators square back") {
        RandomStream rng(7);
        for (int i = 0; i < 200; ++i) {
            const double c = rng.uniform(0.01, 1.0);
            const Vec3 v = random_ball(rng) * c;
            const HermitianOp m{c, v};
            const HermitianOp s = psd_sqrt(m);
            CHECK((s.to_mat() * s.to_mat()).max_abs_diff(m.to_mat()) < 1e-12);
        }
    }

    CHECK_THROWS_AS(psd_sqrt(HermitianOp{0.1, kZAxis * 0.5}), NotPsdError);
    CHECK(psd_sqrt(HermitianOp::zero()).c == 0.0);
}

TEST_CASE("povm validation") {
    CHECK(validate(Povm::projective(kZAxis)).valid);
    CHECK(validate(Povm::projective(kZAxis)).normalization_residual == 0.0);
    CHECK(validate(Povm::trivial()).valid);

    const Povm skewed{{HermitianOp{0.6, kXAxis * 0.6}, HermitianOp{0.4, kXAxis * -0.4}}};
    const PovmReport r = validate(skewed);
    CHECK_FALSE(r.valid);
    CHECK(r.normalization_residual == doctest::Approx(0.2));
    CHECK_THROWS_AS(require_valid(skewed), InvalidPovmError);

    SUBCASE("three-outcome frontier family is valid across theta") {
        for (int i = 0; i <= 20; ++i) {
            const ThreeOutcomeFamily fam = three_outcome_family(0.5 * kPi * i / 20.0);
            const PovmReport fr = validate(fam.povm);
            CHECK(fr.valid);
            CHECK(fr.normalization_residual < 1e-12);
        }
    }
}

TEST_CASE("coarse graining") {
    const Povm proj = Povm::projective(kZAxis);
    const Povm merged = coarse_grain(proj, {{0, 1}});
    REQUIRE(merged.size() == 1);
    CHECK(std::abs(merged[0].c - 1.0) < 1e-15);
    CHECK(merged[0].v.norm() < 1e-15);

    SUBCASE("four-outcome mixture collapses pairwise to scaled identities") {
        const ObservablePair pair = ObservablePair::zx();
        const Povm mix = nn_saturating_povm(pair, {0.3, 0.7, RegionKind::nn, ""});
        REQUIRE(mix.size() == 4);
        const Povm pairwise = coarse_grain(mix, {{0, 1}, {2, 3}});
        CHECK(pairwise[0].v.norm() < 1e-15);
        CHECK(pairwise[1].v.norm() < 1e-15);
        CHECK(pairwise[0].c + pairwise[1].c == doctest::Approx(1.0));
    }

    SUBCASE("singleton groups leave the POVM unchanged") {
        const Povm same = coarse_grain(proj, {{0}, {1}});
        CHECK(same[0].c == proj[0].c);
        CHECK((same[1].v - proj[1].v).norm() == 0.0);
    }

    CHECK_THROWS_AS(coarse_grain(proj, {{0, 0}, {1}}), PartitionError);
    CHECK_THROWS_AS(coarse_grain(proj, {{0}}), PartitionError);
    CHECK_THROWS_AS(coarse_grain(proj, {{0}, {1}, {2}}), PartitionError);
}

TEST_CASE("instrument application") {
    const Instrument proj_z = Instrument::lueders(Povm::projective(kZAxis));

    SUBCASE("eigenstate is undisturbed") {
        const OutcomeResult r = apply_instrument(proj_z, State(kZAxis), 0);
        CHECK(r.probability == doctest::Approx(1.0));
        REQUIRE(r.post_defined);
        CHECK((r.post.bloch() - kZAxis).norm() < 1e-14);
    }

    SUBCASE("balanced superposition collapses with probability 1/2") {
        const OutcomeResult r = apply_instrument(proj_z, State(kXAxis), 0);
        CHECK(r.probability == doctest::Approx(0.5));
        REQUIRE(r.post_defined);
        CHECK((r.post.bloch() - kZAxis).norm() < 1e-14);
    }

    SUBCASE("three-outcome family probability via matrix trace") {
        const ThreeOutcomeFamily fam = three_outcome_family(kPi / 3.0);
        const std::size_t central = 1;  // the element along +x
        const OutcomeResult r = apply_instrument(fam.instrument, State(kXAxis), central);
        CHECK(std::abs(r.probability - 2.0 / 3.0) < 1e-12);
        CHECK(std::abs(r.probability -
                       test::oracle_probability(fam.povm[central], State(kXAxis))) < 1e-12);
    }

    CHECK_THROWS_AS(apply_instrument(proj_z, State(kZAxis), 2), OutcomeRangeError);

    SUBCASE("zero-probability outcome is flagged undefined") {
        const OutcomeResult r = apply_instrument(proj_z, State(-kZAxis), 0);
        CHECK(r.probability == 0.0);
        CHECK_FALSE(r.post_defined);
    }
}

TEST_CASE("instrument invariants on random draws") {
    SamplerConfig cfg;
    cfg.seed = 99;
    for (std::size_t i = 0; i < 200; ++i) {
        cfg.outcomes = 2 + static_cast<int>(i % 4);
        cfg.plane_xz = i % 2 == 0;
        cfg.rank_profile = i % 3 == 0 ? RankProfile::general : RankProfile::all_rank_one;
        const Povm povm = sample_povm(cfg, i);
        const Instrument inst = i % 2 == 0
                                    ? Instrument::lueders(povm)
                                    : Instrument::purity_preserving(
                                          povm, random_rotations(cfg, povm.size(), i));
        const State rho = random_state(cfg, i);

        double total = 0.0;
        for (std::size_t m = 0; m < povm.size(); ++m)
            total += apply_instrument(inst, rho, m).probability;
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("pure inputs stay pure under square-root dynamics") {
    SamplerConfig cfg;
    cfg.seed = 1234;
    cfg.outcomes = 3;
    cfg.plane_xz = false;
    cfg.rank_profile = RankProfile::general;
    RandomStream rng(55);
    for (std::size_t i = 0; i < 200; ++i) {
        const Povm povm = sample_povm(cfg, i);
        const State pure = State(random_unit_sphere(rng));
        for (std::size_t m = 0; m < povm.size(); ++m) {
            const OutcomeResult r = apply_instrument(Instrument::lueders(povm), pure, m);
            if (r.post_defined) CHECK(std::abs(r.post.bloch().norm() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("kraus updates validate and match the purity-preserving route") {
    SamplerConfig cfg;
    cfg.seed = 31337;
    cfg.outcomes = 3;
    cfg.rank_profile = RankProfile::general;
    const Povm povm = sample_povm(cfg, 0);
    const std::vector<Rotation> us = random_rotations(cfg, povm.size(), 0);
    const Instrument kraus = test::to_kraus_instrument(povm, us);
    CHECK_NOTHROW(require_valid(kraus));

    const Instrument pp = Instrument::purity_preserving(povm, us);
    const State rho = random_state(cfg, 5);
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const OutcomeResult a = apply_instrument(pp, rho, m);
        const OutcomeResult b = apply_instrument(kraus, rho, m);
        CHECK(std::abs(a.probability - b.probability) < 1e-12);
        if (a.post_defined && b.post_defined)
            CHECK((a.post.bloch() - b.post.bloch()).norm() < 1e-10);
    }

    SUBCASE("kraus operators must reproduce the POVM") {
        std::vector<std::vector<Mat2>> bad(povm.size(), {Mat2::identity()});
        CHECK_THROWS_AS(require_valid(Instrument::kraus(povm, bad)), ShapeError);
    }
}

TEST_CASE("bloch and matrix application routes agree") {
    SamplerConfig cfg;
    cfg.seed = 777;
    for (std::size_t i = 0; i < 100; ++i) {
        cfg.outcomes = 2 + static_cast<int>(i % 3);
        cfg.plane_xz = i % 2 == 0;
        cfg.rank_profile = i % 2 == 0 ? RankProfile::all_rank_one : RankProfile::general;
        const Povm povm = sample_povm(cfg, i);
        const Instrument inst =
            i % 2 == 0 ? Instrument::lueders(povm)
                       : Instrument::purity_preserving(povm,
                                                       random_rotations(cfg, povm.size(), i));
        const State rho = random_state(cfg, i);
        for (std::size_t m = 0; m < povm.size(); ++m) {
            const OutcomeResult a = apply_instrument(inst, rho, m);
            const OutcomeResult b = apply_instrument_mat2(inst, rho, m);
            CHECK(std::abs(a.probability - b.probability) < 1e-10);
            if (a.post_defined && b.post_defined && a.probability > 1e-6)
                CHECK((a.post.bloch() - b.post.bloch()).norm() < 1e-10);
        }
    }
}

TEST_CASE("instrument shape validation") {
    const Povm proj = Povm::projective(kZAxis);
    CHECK_THROWS_AS(require_valid(Instrument::purity_preserving(proj, {Rotation{}})),
                    ShapeError);
    CHECK_THROWS_AS(require_valid(Instrument::measure_prepare(proj, {State{}})), ShapeError);
}
