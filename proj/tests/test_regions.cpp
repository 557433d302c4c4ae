#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qnd/measures.hpp"
#include "qnd/regions.hpp"
#include "qnd/optimize.hpp"
#include "qnd/sampling.hpp"

using namespace qnd;

namespace {
const double kPi = std::numbers::pi;
const PauliObservable kZ = PauliObservable::z();
const PauliObservable kX = PauliObservable::x();

ObservablePair pair_with_dot(double dot) {
    const Vec3 b = kZAxis * dot + kXAxis * std::sqrt(1.0 - dot * dot);
    return {kZ, PauliObservable(b)};
}
}  // namespace

TEST_CASE("entropic preparation relation residual") {
    const ObservablePair orth = ObservablePair::zx();
    CHECK(std::abs(prep_relation_entropic(orth, 0.0, 1.0)) < 1e-12);
    CHECK(prep_relation_entropic(orth, 1.0, 1.0) == doctest::Approx(-1.0));

    SUBCASE("symmetric boundary point at dot 1/2") {
        const ObservablePair pair = pair_with_dot(0.5);
        const double t = std::sqrt(0.75);
        const double h = binary_entropy(t);
        CHECK(std::abs(h - 0.35458) < 1e-4);
        CHECK(std::abs(prep_relation_entropic(pair, h, h)) < 1e-9);
    }
}

TEST_CASE("standard-deviation preparation relation") {
    const ObservablePair orth = ObservablePair::zx();
    CHECK(std::abs(prep_relation_sd(orth, State(kZAxis))) < 1e-12);
    CHECK(prep_relation_sd(orth, State::maximally_mixed()) == doctest::Approx(1.0));

    SUBCASE("random pure states never go negative") {
        RandomStream rng(17);
        for (int i = 0; i < 2000; ++i) {
            const ObservablePair pair = pair_with_dot(rng.uniform(-1.0, 1.0));
            const State rho(random_unit_sphere(rng));
            CHECK(prep_relation_sd(pair, rho) >= -1e-9);
        }
    }
}

TEST_CASE("noise-noise region membership") {
    const ObservablePair orth = ObservablePair::zx();
    CHECK(nn_region_contains(orth, {0.5, 0.5, RegionKind::nn, ""}));
    CHECK_FALSE(nn_region_contains(orth, {0.4, 0.4, RegionKind::nn, ""}));
    CHECK(nn_region_contains(orth, {1.0, 1.0, RegionKind::nn, ""}));

    SUBCASE("convex-band lens membership at dot 1/2") {
        const ObservablePair pair = pair_with_dot(0.5);
        const double h = binary_entropy(std::sqrt(0.75));
        CHECK(nn_region_contains(pair, {h, h, RegionKind::nn, ""}));
        CHECK_FALSE(nn_region_contains(pair, {h - 1e-3, h - 1e-3, RegionKind::nn, ""}));
        CHECK(nn_region_contains(pair, {h + 1e-6, h + 1e-6, RegionKind::nn, ""}));
        // the lens is not closed under increasing a single coordinate
        CHECK_FALSE(nn_region_contains(pair, {1.0, 0.0, RegionKind::nn, ""}));
    }

    SUBCASE("non-convex band uses the hull") {
        const ObservablePair pair = pair_with_dot(0.2);
        CHECK(nn_region_contains(pair, {1.0, 1.0, RegionKind::nn, ""}));
        CHECK_FALSE(nn_region_contains(pair, {0.1, 0.1, RegionKind::nn, ""}));
        // a chord midpoint of the boundary lies in the hull but outside the
        // preparation region
        const std::vector<RegionPoint> bnd = prep_boundary_points(pair, 101);
        const RegionPoint mid{0.5 * (bnd[20].x + bnd[80].x), 0.5 * (bnd[20].y + bnd[80].y),
                              RegionKind::nn, ""};
        CHECK(nn_region_contains(pair, mid));
        CHECK(prep_relation_entropic(pair, mid.x, mid.y) > 1e-6);
    }
}

TEST_CASE("dichotomic relation residuals") {
    CHECK(std::abs(nn_dichotomic_relation(0.0, 1.0)) < 1e-12);
    CHECK(nn_dichotomic_relation(1.0, 1.0) == doctest::Approx(-1.0));
    CHECK(std::abs(luders_relation(0.0, 1.0)) < 1e-12);

    SUBCASE("sampled dichotomic POVMs satisfy the tradeoff") {
        SamplerConfig cfg;
        cfg.seed = 3;
        cfg.outcomes = 2;
        cfg.rank_profile = RankProfile::dichotomic_mixed_rank;
        for (std::size_t i = 0; i < 1000; ++i) {
            const Povm povm = sample_povm(cfg, i);
            CHECK(nn_dichotomic_relation(noise(povm, kZ).value, noise(povm, kX).value) <=
                  1e-9);
        }
    }
}

TEST_CASE("noise-noise saturating measurements") {
    const ObservablePair orth = ObservablePair::zx();

    SUBCASE("corner target gives the sharp measurement") {
        const Povm povm = nn_saturating_povm(orth, {0.0, 1.0, RegionKind::nn, ""});
        REQUIRE(povm.size() == 2);
        CHECK((povm[0].v.normalized() - kZAxis).norm() < 1e-9);
        CHECK(noise(povm, kZ).value < 1e-9);
        CHECK(std::abs(noise(povm, kX).value - 1.0) < 1e-9);
    }

    SUBCASE("line midpoint needs the four-outcome mixture") {
        const Povm povm = nn_saturating_povm(orth, {0.5, 0.5, RegionKind::nn, ""});
        REQUIRE(povm.size() == 4);
        for (const HermitianOp& m : povm.elements) CHECK(std::abs(m.c - 0.25) < 1e-12);
        CHECK(std::abs(noise(povm, kZ).value - 0.5) < 1e-6);
        CHECK(std::abs(noise(povm, kX).value - 0.5) < 1e-6);
    }

    SUBCASE("boundary point along the diagonal direction") {
        const double h = binary_entropy(1.0 / std::numbers::sqrt2);
        const Povm povm = nn_saturating_povm(orth, {h, h, RegionKind::nn, ""});
        REQUIRE(povm.size() == 2);
        const Vec3 expected = (kXAxis + kZAxis).normalized();
        CHECK(std::min((povm[0].v.normalized() - expected).norm(),
                       (povm[0].v.normalized() + expected).norm()) < 1e-6);
        CHECK(std::abs(noise(povm, kZ).value - h) < 1e-6);
        CHECK(std::abs(noise(povm, kX).value - h) < 1e-6);
    }

    SUBCASE("random line targets land within 1e-6") {
        RandomStream rng(23);
        for (int i = 0; i < 200; ++i) {
            const double t = rng.real();
            const Povm povm = nn_saturating_povm(orth, {t, 1.0 - t, RegionKind::nn, ""});
            CHECK(std::abs(noise(povm, kZ).value - t) < 1e-6);
            CHECK(std::abs(noise(povm, kX).value - (1.0 - t)) < 1e-6);
        }
    }

    SUBCASE("hull chord target for a non-convex pair") {
        const ObservablePair pair = pair_with_dot(0.2);
        const std::vector<RegionPoint> bnd = prep_boundary_points(pair, 201);
        const RegionPoint target{0.55 * bnd[40].x + 0.45 * bnd[160].x,
                                 0.55 * bnd[40].y + 0.45 * bnd[160].y, RegionKind::nn, ""};
        REQUIRE(prep_relation_entropic(pair, target.x, target.y) > 1e-6);
        const Povm povm = nn_saturating_povm(pair, target);
        CHECK(std::abs(noise(povm, pair.a).value - target.x) < 1e-6);
        CHECK(std::abs(noise(povm, pair.b).value - target.y) < 1e-6);
    }

    CHECK_THROWS_AS(nn_saturating_povm(orth, {0.2, 0.2, RegionKind::nn, ""}),
                    RegionTargetError);
}

TEST_CASE("three-outcome frontier family") {
    SUBCASE("endpoints") {
        const ThreeOutcomeFamily at0 = three_outcome_family(0.0);
        CHECK(at0.noise == doctest::Approx(1.0));
        CHECK(at0.disturbance == doctest::Approx(0.0));
        const ThreeOutcomeFamily at90 = three_outcome_family(0.5 * kPi);
        CHECK(at90.noise == doctest::Approx(0.0));
        CHECK(at90.disturbance == doctest::Approx(1.0));
        CHECK(at90.povm[1].c < 1e-15);  // central outcome weight vanishes
    }

    SUBCASE("closed forms match the measures layer across theta") {
        for (int i = 0; i <= 1570; ++i) {  // 1e-3 grid over [0, pi/2]
            const ThreeOutcomeFamily fam = three_outcome_family(i * 1e-3);
            CHECK(std::abs(noise(fam.povm, kZ).value - fam.noise) < 1e-10);
            CHECK(std::abs(
                      disturbance_corrected(fam.instrument, kX, fam.correction).value -
                      fam.disturbance) < 1e-10);
        }
    }

    SUBCASE("unitary implementation of the correction gives the same point") {
        const ThreeOutcomeFamily fam = three_outcome_family(kPi / 3.0);
        const Correction rotations = heuristic_alignment(fam.povm, kX);
        const double via_rotations =
            disturbance_corrected(fam.instrument, kX, rotations).value;
        CHECK(std::abs(via_rotations - fam.disturbance) < 1e-10);
    }

    CHECK_THROWS_AS(three_outcome_family(-0.1), DomainError);
    CHECK_THROWS_AS(three_outcome_family(2.0), DomainError);
}

TEST_CASE("conjectured noise-disturbance frontier") {
    const std::vector<RegionPoint> curve = nd_boundary_curve(101);
    REQUIRE(curve.size() == 101);
    CHECK(curve.front().x == doctest::Approx(1.0));
    CHECK(curve.front().y == doctest::Approx(0.0));
    CHECK(curve.back().x == doctest::Approx(0.0));
    CHECK(curve.back().y == doctest::Approx(1.0));

    SUBCASE("the frontier dominates the linear joint-measurement bound") {
        for (const RegionPoint& p : curve) CHECK(p.x + p.y >= 1.0 - 1e-9);
    }

    SUBCASE("noise decreases strictly along the curve") {
        for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].x < curve[i - 1].x);
    }

    SUBCASE("inversion by noise is consistent") {
        for (const RegionPoint& p : curve) {
            CHECK(std::abs(nd_curve_disturbance_at(p.x) - p.y) < 1e-9);
            CHECK(nd_curve_admits(p.x, p.y));
            CHECK_FALSE(nd_curve_admits(p.x, p.y - 1e-6, 1e-9));
        }
    }

    SUBCASE("the frontier is asymmetric under swapping the axes") {
        const ThreeOutcomeFamily fam = three_outcome_family(kPi / 3.0);
        const double swapped = nd_curve_disturbance_at(fam.disturbance);
        CHECK(std::abs(swapped - fam.noise) > 1e-3);
    }

    CHECK_THROWS_AS(nd_boundary_curve(1), DomainError);
}

TEST_CASE("fixed dichotomic violation") {
    const DichotomicViolation v = dichotomic_violation_example();
    CHECK(std::abs(v.noise - 0.870) < 1e-3);
    CHECK(std::abs(v.disturbance - 0.255) < 1e-3);
    CHECK(std::abs(v.gsum - 1.011) < 2e-3);
    CHECK(v.gsum > 1.0);
    CHECK(std::abs(v.disturbance -
                   test::oracle_disturbance(v.instrument, kX, v.correction)) < 1e-12);
}

TEST_CASE("square-root-dynamics saturating measurements") {
    SUBCASE("sharp corner") {
        const Povm povm = luders_saturating_povm(0.0, 1.0);
        CHECK((povm[0].v.normalized() - kZAxis).norm() < 1e-9);
    }
    SUBCASE("blind corner is the split trivial measurement") {
        const Povm povm = luders_saturating_povm(1.0, 0.0);
        CHECK(povm[0].v.norm() < 1e-9);
        CHECK(std::abs(povm[0].c - 0.5) < 1e-12);
        CHECK(noise(povm, kZ).value == doctest::Approx(1.0));
        CHECK(disturbance_identity_lueders(povm, kX).value == doctest::Approx(0.0));
    }
    SUBCASE("symmetric point uses a half-sharp z measurement") {
        const double s = binary_entropy(1.0 / std::numbers::sqrt2);
        const Povm povm = luders_saturating_povm(s, s);
        CHECK(std::abs(noise(povm, kZ).value - s) < 1e-8);
        CHECK(std::abs(disturbance_identity_lueders(povm, kX).value - s) < 1e-8);
        CHECK(std::abs(povm[0].v.norm() - 0.5 / std::numbers::sqrt2) < 1e-9);
    }
    CHECK_THROWS_AS(luders_saturating_povm(0.1, 0.1), RegionTargetError);
}

TEST_CASE("ensemble doubling restores the maximally mixed average") {
    RandomStream rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 4;
        WeightedEnsemble e;
        e.weights = random_dirichlet(rng, n);
        for (int i = 0; i < n; ++i) e.states.emplace_back(random_ball(rng));

        const WeightedEnsemble d = double_ensemble(e);
        REQUIRE(d.weights.size() == 2 * e.weights.size());
        Vec3 mean{};
        for (std::size_t i = 0; i < d.weights.size(); ++i)
            mean += d.states[i].bloch() * d.weights[i];
        CHECK(mean.norm() < 1e-12);

        double ha = 0.0, hb = 0.0, ha2 = 0.0, hb2 = 0.0;
        for (std::size_t i = 0; i < e.weights.size(); ++i) {
            ha += e.weights[i] * observable_entropy(kZ, e.states[i]);
            hb += e.weights[i] * observable_entropy(kX, e.states[i]);
        }
        for (std::size_t i = 0; i < d.weights.size(); ++i) {
            ha2 += d.weights[i] * observable_entropy(kZ, d.states[i]);
            hb2 += d.weights[i] * observable_entropy(kX, d.states[i]);
        }
        CHECK(std::abs(ha - ha2) < 1e-14);
        CHECK(std::abs(hb - hb2) < 1e-14);
    }
    CHECK_THROWS_AS(double_ensemble(WeightedEnsemble{{0.5}, {}}), ShapeError);
}

TEST_CASE("boundary emission") {
    SUBCASE("preparation boundary has zero residual") {
        const ObservablePair pair = pair_with_dot(0.5);
        for (const RegionPoint& p : prep_boundary_points(pair, 257))
            CHECK(std::abs(prep_relation_entropic(pair, p.x, p.y)) < 1e-9);
    }
    SUBCASE("orthogonal noise-noise boundary is the unit line") {
        const std::vector<RegionPoint> line =
            nn_boundary_points(ObservablePair::zx(), 2);
        REQUIRE(line.size() == 2);
        CHECK(line[0].x == 0.0);
        CHECK(line[0].y == 1.0);
        CHECK(line[1].x == 1.0);
        CHECK(line[1].y == 0.0);
    }
    SUBCASE("band boundary points are admitted and nearly tight") {
        const ObservablePair pair = pair_with_dot(0.2);
        for (const RegionPoint& p : nn_boundary_points(pair, 65)) {
            CHECK(nn_region_contains(pair, p));
            CHECK_FALSE(nn_region_contains(pair, {p.x - 1e-3, p.y - 1e-3, p.kind, ""}));
        }
    }
    SUBCASE("region kind strings round-trip") {
        CHECK(region_kind_from_string(to_string(RegionKind::prep)) == RegionKind::prep);
        CHECK(region_kind_from_string(to_string(RegionKind::nn)) == RegionKind::nn);
        CHECK(region_kind_from_string(to_string(RegionKind::nd)) == RegionKind::nd);
        CHECK_THROWS_AS(region_kind_from_string("bogus"), ParseError);
    }
}

TEST_CASE("sampled noise-disturbance points stay inside the monotone-closed region") {
    SamplerConfig cfg;
    cfg.seed = 301;
    cfg.outcomes = 3;
    cfg.plane_xz = true;
    cfg.rank_profile = RankProfile::all_rank_one;
    const ObservablePair orth = ObservablePair::zx();
    for (std::size_t i = 0; i < 200; ++i) {
        const Povm povm = sample_povm(cfg, i);
        const Instrument inst = Instrument::lueders(povm);
        const double n = noise(povm, kZ).value;
        const double d = disturbance_optimized(inst, kX, OptimizeStrategy::heuristic).value;
        CHECK(nn_region_contains(orth, {n, d, RegionKind::nd, ""}));
    }
}
