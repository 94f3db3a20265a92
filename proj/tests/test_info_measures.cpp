#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wthi/info_measures.hpp"

using namespace wthi;

TEST_CASE("g matches the Gaussian rate function") {
    CHECK(g(0.0) == doctest::Approx(0.0));
    CHECK(g(3.0) == doctest::Approx(1.0));
    CHECK(g(1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(g(-0.1), std::domain_error);
}

TEST_CASE("g is increasing and midpoint-concave") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng), y = u(rng);
        if (x > y) std::swap(x, y);
        if (x == y) continue;
        CHECK(g(x) < g(y));
        CHECK(g(0.5 * (x + y)) >= 0.5 * (g(x) + g(y)) - 1e-12);
    }
}

TEST_CASE("entropy on named distributions") {
    CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(entropy(std::vector<double>{1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(entropy(std::vector<double>{1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("entropy is maximized by the uniform distribution") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = 2 + rng() % 6;
        std::vector<double> p(k);
        double sum = 0.0;
        for (auto& v : p) {
            v = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-6;
            sum += v;
        }
        for (auto& v : p) v /= sum;
        double s2 = 0.0;
        for (double v : p) s2 += v;
        p.back() += 1.0 - s2;
        CHECK(entropy(p) <= std::log2(static_cast<double>(k)) + 1e-9);
    }
    CHECK(entropy(std::vector<double>(8, 0.125)) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("mutual information on named joints") {
    CHECK(mutual_information({{0.5, 0.0}, {0.0, 0.5}}) == doctest::Approx(1.0));
    CHECK(mutual_information({{0.25, 0.25}, {0.25, 0.25}}) == doctest::Approx(0.0));
    // Frozen from a hand evaluation of H(rows)+H(cols)-H(joint).
    CHECK(mutual_information({{0.4, 0.1}, {0.1, 0.4}}) == doctest::Approx(0.278072).epsilon(1e-6));
    CHECK_THROWS_AS(mutual_information({{0.7, 0.7}}), std::invalid_argument);
    CHECK_THROWS_AS(mutual_information({}), std::invalid_argument);
}

TEST_CASE("mutual information properties on random joints") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const std::size_t rows = 2 + rng() % 3, cols = 2 + rng() % 3;
        std::vector<std::vector<double>> joint(rows, std::vector<double>(cols));
        double sum = 0.0;
        for (auto& row : joint) {
            for (auto& v : row) {
                v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                sum += v;
            }
        }
        for (auto& row : joint) {
            for (auto& v : row) v /= sum;
        }
        double s2 = 0.0;
        for (auto& row : joint) {
            for (double v : row) s2 += v;
        }
        joint.back().back() += 1.0 - s2;

        const double mi = mutual_information(joint);
        CHECK(mi >= 0.0);

        // Row and column permutation invariance.
        auto permuted = joint;
        std::swap(permuted[0], permuted[rows - 1]);
        for (auto& row : permuted) std::swap(row[0], row[cols - 1]);
        CHECK(mutual_information(permuted) == doctest::Approx(mi).epsilon(1e-12));
    }
}

TEST_CASE("product joints carry zero information") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> p{0.0, 0.0}, q{0.0, 0.0, 0.0};
        p[0] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        p[1] = 1.0 - p[0];
        double sum = 0.0;
        for (auto& v : q) {
            v = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0.01;
            sum += v;
        }
        for (auto& v : q) v /= sum;
        q[2] += 1.0 - q[0] - q[1] - q[2];
        std::vector<std::vector<double>> joint(2, std::vector<double>(3));
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 3; ++c) joint[r][c] = p[r] * q[c];
        }
        joint[1][2] += 1.0 - (joint[0][0] + joint[0][1] + joint[0][2] + joint[1][0] +
                              joint[1][1] + joint[1][2]);
        CHECK(mutual_information(joint) <= 1e-9);
    }
}
