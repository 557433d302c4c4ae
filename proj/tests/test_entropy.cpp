#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qnd/entropy.hpp"
#include "qnd/rng.hpp"

using namespace qnd;

TEST_CASE("binary entropy endpoints and reference value") {
    CHECK(binary_entropy(0.0) == 1.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(std::abs(binary_entropy(0.5) - 0.811278) < 1e-6);
    CHECK(std::abs(binary_entropy(0.5) - test::oracle_binary_entropy(0.5)) < 1e-15);

    SUBCASE("strictly decreasing") {
        double prev = binary_entropy(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double cur = binary_entropy(i / 1000.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }

    SUBCASE("clamp band and domain errors") {
        CHECK(binary_entropy(1.0 + 1e-10) == 0.0);
        CHECK(binary_entropy(-1e-10) == 1.0);
        CHECK_THROWS_AS(binary_entropy(1.0 + 1e-6), DomainError);
        CHECK_THROWS_AS(binary_entropy(-1e-6), DomainError);
        CHECK_THROWS_AS(binary_entropy_inverse(-1e-6), DomainError);
    }
}

TEST_CASE("binary entropy inverse") {
    CHECK(binary_entropy_inverse(1.0) == 0.0);
    CHECK(binary_entropy_inverse(0.0) == 1.0);
    CHECK(std::abs(binary_entropy_inverse(0.811278) - 0.5) < 1e-6);

    SUBCASE("h(g(y)) = y to bisection accuracy") {
        for (int i = 0; i <= 1000; ++i) {
            const double y = i / 1000.0;
            CHECK(std::abs(binary_entropy(binary_entropy_inverse(y)) - y) < 1e-12);
        }
    }

    SUBCASE("round trips hold at 1e-10") {
        for (int i = 0; i <= 1000; ++i) {
            const double v = i / 1000.0;
            CHECK(std::abs(binary_entropy_inverse(binary_entropy(v)) - v) < 1e-10);
            CHECK(std::abs(binary_entropy(binary_entropy_inverse(v)) - v) < 1e-10);
        }
    }
}

TEST_CASE("midpoint convexity of h(sqrt(1-x^2)) on a coarse grid") {
    const auto f = [](double x) { return binary_entropy(std::sqrt(1.0 - x * x)); };
    for (int i = 0; i <= 100; ++i)
        for (int j = i; j <= 100; ++j) {
            const double x1 = i / 100.0, x2 = j / 100.0;
            CHECK(f(0.5 * (x1 + x2)) <= 0.5 * (f(x1) + f(x2)) + 1e-12);
        }
}

namespace {

JointDist random_table(RandomStream& rng, std::size_t rows, std::size_t cols) {
    JointDist j(rows, cols);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) total += (j.at(r, c) = rng.real());
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) j.at(r, c) /= total;
    return j;
}

}  // namespace

TEST_CASE("conditional entropy") {
    SUBCASE("independent uniform pair") {
        JointDist j(2, 2);
        j.at(0, 0) = j.at(0, 1) = j.at(1, 0) = j.at(1, 1) = 0.25;
        CHECK(conditional_entropy(j) == doctest::Approx(1.0));
    }
    SUBCASE("perfectly correlated pair") {
        JointDist j(2, 2);
        j.at(0, 0) = j.at(1, 1) = 0.5;
        CHECK(conditional_entropy(j) == doctest::Approx(0.0));
    }
    SUBCASE("single outcome reveals nothing") {
        JointDist j(2, 1);
        j.at(0, 0) = j.at(1, 0) = 0.5;
        CHECK(conditional_entropy(j) == doctest::Approx(1.0));
    }

    SUBCASE("weighted form equals the chain-rule form") {
        RandomStream rng(5);
        for (int i = 0; i < 200; ++i) {
            const JointDist j = random_table(rng, 2 + i % 3, 2 + i % 5);
            j.validate();
            CHECK(std::abs(conditional_entropy(j) - conditional_entropy_chain(j)) < 1e-12);
            CHECK(std::abs(conditional_entropy(j) - test::oracle_conditional_entropy(j)) <
                  1e-12);
        }
    }

    SUBCASE("relabelling either variable changes nothing") {
        RandomStream rng(6);
        const JointDist j = random_table(rng, 3, 4);
        JointDist rows_swapped(3, 4), cols_swapped(3, 4);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                rows_swapped.at(2 - r, c) = j.at(r, c);
                cols_swapped.at(r, 3 - c) = j.at(r, c);
            }
        CHECK(std::abs(conditional_entropy(j) - conditional_entropy(rows_swapped)) < 1e-14);
        CHECK(std::abs(conditional_entropy(j) - conditional_entropy(cols_swapped)) < 1e-14);
    }

    SUBCASE("conditioning never increases entropy") {
        RandomStream rng(7);
        for (int i = 0; i < 200; ++i) {
            const JointDist j = random_table(rng, 2, 2 + i % 6);
            CHECK(conditional_entropy(j) <= shannon_entropy(j.row_marginal()) + 1e-12);
        }
    }

    SUBCASE("zero entries follow the 0 log 0 convention") {
        JointDist j(2, 2);
        j.at(0, 0) = 1.0;
        CHECK(conditional_entropy(j) == 0.0);
    }
}

TEST_CASE("observable entropy") {
    const PauliObservable z = PauliObservable::z();
    CHECK(observable_entropy(z, State(kZAxis)) == doctest::Approx(0.0));
    CHECK(observable_entropy(z, State(kXAxis)) == doctest::Approx(1.0));

    SUBCASE("tilted mixed state against the matrix-trace route") {
        const Vec3 u = (kXAxis + kZAxis).normalized();
        const State rho(u * (1.0 / std::numbers::sqrt2));
        const double h = observable_entropy(z, rho);
        CHECK(std::abs(h - 0.811278) < 1e-6);
        const double p_plus = test::oracle_probability(z.eigenprojector(+1), rho);
        const double direct = -test::plog2p_ld(p_plus) - test::plog2p_ld(1.0 - p_plus);
        CHECK(std::abs(h - direct) < 1e-12);
    }
}
