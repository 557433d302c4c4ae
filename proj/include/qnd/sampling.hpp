#pragma once

#include <cstdint>
#include <vector>

#include "qnd/povm.hpp"
#include "qnd/rng.hpp"

namespace qnd {

enum class RankProfile { all_rank_one, general, dichotomic_mixed_rank };

// Deterministic sampler configuration. A (config, draw index) pair fully
// determines the output, so sampling parallelizes without coordination.
struct SamplerConfig {
    std::uint64_t seed = 0;
    int outcomes = 2;
    bool plane_xz = true;
    RankProfile rank_profile = RankProfile::all_rank_one;
};

// Uniform unit vector in the xz-plane.
Vec3 random_unit_xz(RandomStream& rng);
// Uniform unit vector on the sphere.
Vec3 random_unit_sphere(RandomStream& rng);
// Uniform in the xz unit disk / unit ball, by rejection from the bounding box.
Vec3 random_disk_xz(RandomStream& rng);
Vec3 random_ball(RandomStream& rng);
// Symmetric Dirichlet weights via normalized unit-rate exponentials.
std::vector<double> random_dirichlet(RandomStream& rng, int k);

// Rank-one POVM: directions u_m with sum 0 (last set to minus the rest),
// n_m = u_m/|u_m|, p_m = |u_m| / sum |u_m'|.
Povm random_rank1_povm(const SamplerConfig& cfg, std::uint64_t index = 0);

// General-rank POVM: random states rho_m and weights p_m, conjugated by the
// inverse square root of the mean state so the elements sum to identity.
Povm random_general_povm(const SamplerConfig& cfg, std::uint64_t index = 0);

// Dichotomic POVM with one rank-one and one rank-two element:
// M_+ = p(1 + n.sigma) with p in (0, 1/2), n a unit vector in the xz-plane.
Povm random_dichotomic_mixed_rank(const SamplerConfig& cfg, std::uint64_t index = 0);

// Dispatch on cfg.rank_profile.
Povm sample_povm(const SamplerConfig& cfg, std::uint64_t index = 0);

// Per-outcome correction unitaries: angle uniform in [0, 2pi) about the
// y-axis when plane-restricted, uniform axis otherwise.
std::vector<Rotation> random_rotations(const SamplerConfig& cfg, std::size_t count,
                                       std::uint64_t index = 0);

// Random density operators, uniform over the disk (plane) or ball.
State random_state(const SamplerConfig& cfg, std::uint64_t index = 0);

}  // namespace qnd
