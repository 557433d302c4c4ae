#include "qnd/sampling.hpp"

#include <cmath>
#include <numbers>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

constexpr int kMaxRedraws = 100;

void check_outcomes(const SamplerConfig& cfg, int lo, int hi) {
    if (cfg.outcomes < lo || cfg.outcomes > hi)
        throw SamplerError("outcome count " + std::to_string(cfg.outcomes) +
                           " outside supported range [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
}

Vec3 random_direction(const SamplerConfig& cfg, RandomStream& rng) {
    return cfg.plane_xz ? random_unit_xz(rng) : random_unit_sphere(rng);
}

}  // namespace

Vec3 random_unit_xz(RandomStream& rng) {
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(phi), 0.0, std::sin(phi)};
}

Vec3 random_unit_sphere(RandomStream& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double s = std::sqrt(std::max(1.0 - z * z, 0.0));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

Vec3 random_disk_xz(RandomStream& rng) {
    for (;;) {
        const Vec3 v{rng.uniform(-1.0, 1.0), 0.0, rng.uniform(-1.0, 1.0)};
        if (v.norm2() <= 1.0) return v;
    }
}

Vec3 random_ball(RandomStream& rng) {
    for (;;) {
        const Vec3 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (v.norm2() <= 1.0) return v;
    }
}

std::vector<double> random_dirichlet(RandomStream& rng, int k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (double& x : w) {
        x = -std::log(1.0 - rng.real());
        total += x;
    }
    if (total <= 0.0) total = 1.0;
    for (double& x : w) x /= total;
    return w;
}

Povm random_rank1_povm(const SamplerConfig& cfg, std::uint64_t index) {
    check_outcomes(cfg, 2, 8);
    RandomStream rng(cfg.seed, index);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        std::vector<Vec3> dirs(cfg.outcomes);
        Vec3 sum{};
        for (int m = 0; m + 1 < cfg.outcomes; ++m) {
            dirs[m] = random_direction(cfg, rng);
            sum += dirs[m];
        }
        dirs[cfg.outcomes - 1] = -sum;
        double total = 0.0;
        bool degenerate = false;
        for (const Vec3& u : dirs) {
            const double len = u.norm();
            if (len < 1e-9) degenerate = true;
            total += len;
        }
        if (degenerate) continue;
        Povm povm;
        povm.elements.reserve(cfg.outcomes);
        for (const Vec3& u : dirs) {
            const double p = u.norm() / total;
            povm.elements.push_back({p, u * (p / u.norm())});
        }
        return povm;
    }
    throw SamplerError("rank-one POVM draw degenerated " + std::to_string(kMaxRedraws) +
                       " times");
}

Povm random_general_povm(const SamplerConfig& cfg, std::uint64_t index) {
    check_outcomes(cfg, 1, 8);
    RandomStream rng(cfg.seed, index);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        std::vector<Vec3> blochs(cfg.outcomes);
        for (Vec3& r : blochs) r = cfg.plane_xz ? random_disk_xz(rng) : random_ball(rng);
        const std::vector<double> w = random_dirichlet(rng, cfg.outcomes);

        Vec3 mean{};
        for (int m = 0; m < cfg.outcomes; ++m) mean += blochs[m] * w[m];
        const double k = mean.norm();
        if (0.5 * (1.0 - k) < 1e-10) continue;  // mean state singular within tolerance

        // Inverse square root of rho_bar = 1/2 (1 + mean.sigma).
        const double alpha = 0.5 * (std::sqrt(1.0 + k) + std::sqrt(1.0 - k));
        const double beta = 0.5 * (std::sqrt(1.0 + k) - std::sqrt(1.0 - k));
        const double scale = std::sqrt(0.5) * std::sqrt(1.0 - k * k);
        const Vec3 n = k > 0.0 ? mean / k : Vec3{};
        const HermitianOp inv_sqrt{alpha / scale, n * (-beta / scale)};

        Povm povm;
        povm.elements.reserve(cfg.outcomes);
        for (int m = 0; m < cfg.outcomes; ++m) {
            const HermitianOp rho{0.5, blochs[m] * 0.5};
            povm.elements.push_back(conjugate(inv_sqrt, rho) * w[m]);
        }
        return povm;
    }
    throw SamplerError("general POVM draw hit a singular mean state " +
                       std::to_string(kMaxRedraws) + " times");
}

Povm random_dichotomic_mixed_rank(const SamplerConfig& cfg, std::uint64_t index) {
    if (cfg.outcomes != 2)
        throw SamplerError("mixed-rank dichotomic profile requires exactly 2 outcomes");
    RandomStream rng(cfg.seed, index);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const double p = 0.5 * rng.real();
        if (p <= 1e-9 || p >= 0.5 - 1e-9) continue;
        const Vec3 n = random_unit_xz(rng);
        return Povm{{HermitianOp{p, n * p}, HermitianOp{1.0 - p, n * -p}}};
    }
    throw SamplerError("mixed-rank dichotomic draw degenerated " +
                       std::to_string(kMaxRedraws) + " times");
}

Povm sample_povm(const SamplerConfig& cfg, std::uint64_t index) {
    switch (cfg.rank_profile) {
        case RankProfile::all_rank_one:
            return random_rank1_povm(cfg, index);
        case RankProfile::general:
            return random_general_povm(cfg, index);
        case RankProfile::dichotomic_mixed_rank:
            return random_dichotomic_mixed_rank(cfg, index);
    }
    throw SamplerError("unknown rank profile");
}

std::vector<Rotation> random_rotations(const SamplerConfig& cfg, std::size_t count,
                                       std::uint64_t index) {
    RandomStream rng(cfg.seed ^ 0x5bd1e995u, index);
    std::vector<Rotation> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        out.emplace_back(cfg.plane_xz ? kYAxis : random_unit_sphere(rng), angle);
    }
    return out;
}

State random_state(const SamplerConfig& cfg, std::uint64_t index) {
    RandomStream rng(cfg.seed ^ 0x2545f491u, index);
    return State(cfg.plane_xz ? random_disk_xz(rng) : random_ball(rng));
}

}  // namespace qnd
