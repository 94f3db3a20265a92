#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "wthi/dmc_whi.hpp"
#include "wthi/info_measures.hpp"

using namespace wthi;
using namespace wthi::test;

namespace {

const ProductInput kUniform22{{0.5, 0.5}, {0.5, 0.5}};

} // namespace

TEST_CASE("Dmc validation names the failing slice") {
    CHECK_THROWS_WITH_AS(Dmc(1, 1, 2, 1, {0.5, 0.6}),
                         doctest::Contains("slice (x1=0,x2=0)"), std::invalid_argument);
    CHECK_THROWS_AS(Dmc(2, 2, 2, 2, std::vector<double>(8, 0.25)), std::invalid_argument);
    CHECK_THROWS_WITH_AS(Dmc(1, 2, 2, 1, {1.5, -0.5, 0.5, 0.5}),
                         doctest::Contains("negative"), std::invalid_argument);
}

TEST_CASE("Dmc JSON round trip and loader errors") {
    const auto ch = indep_eavesdropper_channel();
    const auto back = Dmc::from_json(ch.to_json());
    CHECK(back.n_y1() == 2);
    for (std::size_t x1 = 0; x1 < 2; ++x1) {
        for (std::size_t y1 = 0; y1 < 2; ++y1) {
            CHECK(back.p(x1, 0, y1, 0) == ch.p(x1, 0, y1, 0));
        }
    }
    CHECK_THROWS_AS(Dmc::from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(Dmc::from_json(R"({"nx1":2,"nx2":2,"ny1":2,"ny2":2})"),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        Dmc::from_json(
            R"({"nx1":1,"nx2":1,"ny1":1,"ny2":2,"kernel":[[[[0.7,0.7]]]]})"),
        doctest::Contains("slice (x1=0,x2=0)"), std::invalid_argument);
}

TEST_CASE("DMC mutual-information profiles") {
    {
        const auto prof = mi_profile_dmc(indep_eavesdropper_channel(), kUniform22);
        CHECK(prof.receiver.i1_given_2 == doctest::Approx(1.0));
        CHECK(prof.receiver.i1_alone == doctest::Approx(1.0));
        CHECK(prof.eavesdropper.i_sum == doctest::Approx(0.0));
        CHECK(prof.eavesdropper.i1_alone == doctest::Approx(0.0));
    }
    {
        const auto prof = mi_profile_dmc(xor_receiver_channel(), kUniform22);
        CHECK(prof.receiver.i1_alone == doctest::Approx(0.0));
        CHECK(prof.receiver.i1_given_2 == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(mi_profile_dmc(indep_eavesdropper_channel(), {{1.0}, {0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("DMC profiles obey the chain rule for product inputs") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const auto ch = random_channel(2, 3, 2, 2, rng());
        const ProductInput input{{0.3, 0.7}, {0.2, 0.5, 0.3}};
        const auto prof = mi_profile_dmc(ch, input);
        for (const auto& p : {prof.receiver, prof.eavesdropper}) {
            CHECK(p.i1_given_2 + p.i2_alone == doctest::Approx(p.i_sum).epsilon(1e-9));
            CHECK(p.i2_given_1 + p.i1_alone == doctest::Approx(p.i_sum).epsilon(1e-9));
        }
    }
}

TEST_CASE("region construction") {
    {
        MiProfilePair zero{};
        const auto rs = build_regions(zero);
        CHECK(rs.r1_mac.contains(0.0, 0.0));
        CHECK_FALSE(rs.r1_mac.contains(0.1, 0.0));
        CHECK_FALSE(rs.r1_mac.contains(0.0, 0.1));
    }
    {
        MiProfilePair p{};
        p.receiver = {1.0, 1.0, 1.5, 0.5, 0.5};
        const auto rs = build_regions(p);
        const auto verts = rs.r1_mac.vertices();
        bool has_corner = false;
        for (const auto& v : verts) {
            if (std::abs(v.first - 1.0) < 1e-9 && std::abs(v.second - 0.5) < 1e-9) {
                has_corner = true;
            }
        }
        CHECK(has_corner);
        CHECK(verts.size() == 5); // MAC pentagon
    }
    {
        const auto prof = gaussian_mi_profile(2.0, {1.0, 2.0});
        const auto rs = build_regions(prof);
        double sum_const = 0.0;
        for (const auto& f : rs.r1_mac.faces) {
            if (f.a1 == 1.0 && f.a2 == 1.0) sum_const = f.rhs;
        }
        CHECK(sum_const == doctest::Approx(g(5.0)).epsilon(1e-12));
        // The eavesdropper faces record the paper's strict inequalities.
        bool any_strict = false;
        for (const auto& f : rs.r2_mac.faces) any_strict |= f.strict;
        CHECK(any_strict);
    }
}

TEST_CASE("fixed-input optimizer on named profiles") {
    {
        MiProfilePair p{};
        p.receiver = {1.0, 1.0, 1.5, 0.5, 0.5};
        const auto res = theorem1_rate_fixed_input(p);
        CHECK(res.rate == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.triple.r1d == doctest::Approx(0.0));
        CHECK(res.triple.r2 >= -1e-12);
        CHECK(res.triple.r2 <= 0.5 + 1e-9);
    }
    {
        const auto prof = gaussian_mi_profile(2.0, {1.0, 2.0});
        const auto res = theorem1_rate_fixed_input(prof);
        CHECK(res.rate == doctest::Approx(g(5.0) - g(4.0)).epsilon(1e-9));
    }
    {
        auto prof = gaussian_mi_profile(1.3, {2.0, 2.0});
        prof.eavesdropper = prof.receiver;
        const auto res = theorem1_rate_fixed_input(prof);
        CHECK(res.rate <= 1e-12);
        CHECK(res.rate >= 0.0);
    }
}

TEST_CASE("fixed-input optimizer matches the Gaussian closed form") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ua(0.0, 4.0), up(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng), p1 = up(rng), p2 = up(rng);
        const auto res = theorem1_rate_fixed_input(gaussian_mi_profile(a, {p1, p2}));
        const double expected = secrecy_rate(a, {p1, p2});
        CHECK(std::abs(res.rate - expected) <= 1e-9);
    }
}

TEST_CASE("fixed-input optimizer matches the brute-force grid scan") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 10; ++i) {
        const auto prof = random_profiles(rng, 0.4);
        const double exact = theorem1_rate_fixed_input(prof).rate;
        const double scanned = grid_scan_rate(prof, 1e-3);
        CHECK(std::abs(exact - scanned) <= 2e-3);
    }
}

TEST_CASE("optimizer monotonicity in the profile constants") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 40; ++i) {
        auto prof = random_profiles(rng, 0.5);
        const double base = theorem1_rate_fixed_input(prof).rate;

        auto better_rx = prof;
        better_rx.receiver.i1_given_2 += 0.05;
        better_rx.receiver.i_sum += 0.05;
        CHECK(theorem1_rate_fixed_input(better_rx).rate >= base - 1e-9);

        auto better_eve = prof;
        better_eve.eavesdropper.i1_alone += 0.05;
        CHECK(theorem1_rate_fixed_input(better_eve).rate <= base + 1e-9);

        auto worse_eve = prof;
        worse_eve.eavesdropper.i_sum += 0.05;
        CHECK(theorem1_rate_fixed_input(worse_eve).rate <= base + 1e-9);
    }
}

TEST_CASE("full optimization over input distributions") {
    {
        const auto res = theorem1_rate(indep_eavesdropper_channel(), 4);
        CHECK(res.rate == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.input.px1[0] == doctest::Approx(0.5));
    }
    {
        // Y1 and Y2 are the same observation: no secrecy at any input.
        const auto ch = product_channel(
            2, 2, 2, 2,
            [](std::size_t x1, std::size_t, std::size_t y) { return bsc(0.1, x1, y); },
            [](std::size_t x1, std::size_t, std::size_t y) { return bsc(0.1, x1, y); });
        CHECK(theorem1_rate(ch, 6).rate <= 1e-9);
    }
    {
        const auto ch = random_channel(2, 2, 2, 2, 99);
        const double coarse = theorem1_rate(ch, 4).rate;
        const double fine = theorem1_rate(ch, 8).rate;
        CHECK(coarse <= fine + 1e-12);
        CHECK(coarse >= 0.0);
        // Worker count must not change the result.
        CHECK(theorem1_rate(ch, 8, 1).rate == fine);
        CHECK(theorem1_rate(ch, 8, 3).rate == fine);
    }
    CHECK_THROWS_AS(theorem1_rate(indep_eavesdropper_channel(), 0), std::invalid_argument);
}

TEST_CASE("interference classification") {
    {
        // Very strong interference per the symmetric Gaussian example.
        std::vector<MiProfilePair> profiles;
        for (double p1 : {0.5, 1.0, 2.0}) {
            for (double p2 : {0.5, 1.0, 2.0}) {
                profiles.push_back(gaussian_mi_profile(3.0, {p1, p2}));
            }
        }
        CHECK(classify_profiles(profiles) == InterferenceClass::VeryStrong);
    }
    {
        // Eavesdropper sees a degraded copy of the receiver's observation.
        const auto ch = product_channel(
            2, 2, 2, 2,
            [](std::size_t x1, std::size_t, std::size_t y) { return bsc(0.1, x1, y); },
            [](std::size_t x1, std::size_t, std::size_t y) { return bsc(0.25, x1, y); });
        std::vector<ProductInput> inputs{kUniform22, {{0.2, 0.8}, {0.6, 0.4}},
                                         {{0.9, 0.1}, {0.3, 0.7}}};
        CHECK(classify_interference(ch, inputs) == InterferenceClass::Weak);
    }
    {
        // The eavesdropper would see X1 perfectly given X2 (stronger cross
        // link than the 0.1-noisy direct link) but cannot strip the helper's
        // jamming on its own, so interference is strong without being very
        // strong.
        const auto ch = product_channel(
            2, 2, 4, 2,
            [](std::size_t x1, std::size_t x2, std::size_t y1) {
                const std::size_t bit = y1 >> 1, hx2 = y1 & 1;
                return hx2 == x2 ? bsc(0.1, x1, bit) : 0.0;
            },
            [](std::size_t x1, std::size_t x2, std::size_t y2) {
                return y2 == (x1 ^ x2) ? 1.0 : 0.0;
            });
        std::vector<ProductInput> inputs{kUniform22, {{0.3, 0.7}, {0.8, 0.2}}};
        CHECK(classify_interference(ch, inputs) == InterferenceClass::Strong);
    }
    CHECK_THROWS_AS(classify_interference(indep_eavesdropper_channel(), {}),
                    std::invalid_argument);
}

TEST_CASE("strong and weak simplified formulas") {
    {
        auto prof = gaussian_mi_profile(1.5, {1.0, 1.0});
        prof.eavesdropper = prof.receiver;
        CHECK(strong_formula(prof) == 0.0);
        CHECK(weak_formula(prof) == 0.0);
    }
    {
        const auto prof = gaussian_mi_profile(0.5, {2.0, 2.0 / 3.0});
        CHECK(weak_formula(prof) ==
              doctest::Approx(std::max(g(2.0) - g(1.0), g(1.5) - g(0.6))).epsilon(1e-12));
        CHECK(weak_formula(prof) == doctest::Approx(0.321928).epsilon(1e-6));
        CHECK(weak_formula(prof) ==
              doctest::Approx(theorem1_rate_fixed_input(prof).rate).epsilon(1e-9));
    }
    {
        const auto prof = gaussian_mi_profile(2.0, {1.0, 2.0});
        CHECK(strong_formula(prof) ==
              doctest::Approx(std::min(g(5.0) - g(4.0), g(1.0) - g(2.0 / 3.0))).epsilon(1e-12));
        CHECK(strong_formula(prof) == doctest::Approx(0.131517).epsilon(1e-5));
        CHECK(strong_formula(prof) ==
              doctest::Approx(theorem1_rate_fixed_input(prof).rate).epsilon(1e-9));
    }
}

TEST_CASE("simplex lattice enumerates compositions") {
    const auto grid = simplex_lattice(2, 4);
    CHECK(grid.size() == 5);
    CHECK(grid.front()[1] == doctest::Approx(1.0)); // lexicographically first
    const auto grid3 = simplex_lattice(3, 3);
    CHECK(grid3.size() == 10);
    for (const auto& p : grid3) {
        double sum = 0.0;
        for (double v : p) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}
