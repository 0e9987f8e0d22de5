// Three-level detector algebra: free Hamiltonian, monopole operator, parity
// selection rules of monopole products, and the family-state mana formula.

#include <doctest.h>

#include "manasim/detector.hpp"
#include "manasim/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace manasim;
namespace ps = manasim::phase_space;

namespace {

detector::DetectorFamilyState random_family_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double p = uniform(rng);
    const double q = (1.0 - p) * uniform(rng);
    // |beta|^2 <= p (1 - p - q) keeps the {0,2} minor positive semidefinite
    const double magnitude = std::sqrt(std::max(p * (1.0 - p - q), 0.0)) * uniform(rng);
    return {p, q, std::polar(magnitude, 2.0 * std::numbers::pi * uniform(rng))};
}

}  // namespace

TEST_CASE("free hamiltonian") {
    const auto h = detector::free_hamiltonian(2.0, 2.0);
    CHECK(h(0, 0).real() == 0.0);
    CHECK(h(1, 1).real() == 2.0);
    CHECK(h(2, 2).real() == 4.0);

    const auto h12 = detector::free_hamiltonian(1.0, 2.0);
    CHECK(h12(1, 1).real() == 1.0);
    CHECK(h12(2, 2).real() == 3.0);
    CHECK(h12(0, 0).real() < h12(1, 1).real());
    CHECK(h12(1, 1).real() < h12(2, 2).real());

    CHECK_THROWS_AS(detector::free_hamiltonian(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(detector::free_hamiltonian(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("monopole operator") {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const auto mu0 = detector::monopole(0.0, 1.0, 2.0);
    CHECK(mu0(1, 0).real() == doctest::Approx(inv_sqrt2));
    CHECK(mu0(2, 1).real() == doctest::Approx(inv_sqrt2));
    CHECK(mu0(0, 0) == detector::Complex{0.0, 0.0});
    CHECK(mu0(2, 0) == detector::Complex{0.0, 0.0});

    const double tau = 0.731, omega1 = 1.4, omega2 = 0.6;
    const auto mu = detector::monopole(tau, omega1, omega2);
    CHECK((mu - mu.adjoint().eval()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(mu(1, 0) - inv_sqrt2 * std::polar(1.0, omega1 * tau)) < 1e-16);
    CHECK(std::abs(mu(2, 1) - inv_sqrt2 * std::polar(1.0, omega2 * tau)) < 1e-16);
}

TEST_CASE("parity support of monopole products") {
    CHECK(detector::parity_support({}, 1.0, 1.0) == std::set<int>{0});
    CHECK(detector::parity_support({0.37}, 1.0, 1.0) == std::set<int>{1});

    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> tau(-8.0, 8.0);
    std::uniform_int_distribution<int> length(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = length(rng);
        std::vector<double> taus(static_cast<std::size_t>(m));
        for (auto& t : taus) t = tau(rng);
        const auto support = detector::parity_support(taus, 0.9, 1.7);
        if (m % 2 == 1) {
            CHECK(support == std::set<int>{1});
        } else {
            for (int level : support) CHECK((level == 0 || level == 2));
        }
    }
}

TEST_CASE("state assembly") {
    const auto ground = detector::assemble_state({1.0, 0.0, {0.0, 0.0}});
    CHECK(ground(0, 0).real() == 1.0);
    CHECK(std::abs(ground(1, 1)) == 0.0);

    const auto mixed = detector::assemble_state({1.0 / 3.0, 1.0 / 3.0, {0.0, 0.0}});
    CHECK((mixed.entries() - ps::Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-16);

    SUBCASE("rejects bad populations") {
        CHECK_THROWS_AS(detector::assemble_state({-0.1, 0.5, {0.0, 0.0}}), std::invalid_argument);
        CHECK_THROWS_AS(detector::assemble_state({0.7, 0.5, {0.0, 0.0}}), std::invalid_argument);
    }

    SUBCASE("positivity of the {0,2} minor against the floor") {
        // p = 1 - q, rho_22 = 0: smallest eigenvalue is about -|beta|^2/(1-q)
        const double q = 1e-4;
        const detector::Complex small_beta{5e-6, 0.0};  // violation 2.5e-11, inside 1e-10
        CHECK_NOTHROW(detector::assemble_state({1.0 - q, q, small_beta}));
        const detector::Complex big_beta{5e-5, 0.0};  // violation 2.5e-9, outside
        CHECK_THROWS_AS(detector::assemble_state({1.0 - q, q, big_beta}), std::invalid_argument);
        CHECK_NOTHROW(detector::assemble_state({1.0 - q, q, big_beta}, 1e-8));
    }

    SUBCASE("field extraction round trip") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 25; ++trial) {
            const auto fam = random_family_state(rng);
            const auto back = detector::extract_family(detector::assemble_state(fam));
            CHECK(back.p == fam.p);
            CHECK(back.q == fam.q);
            CHECK(back.beta == fam.beta);
        }
    }
}

TEST_CASE("family mana formula") {
    CHECK(detector::family_mana(0.0, {0.0, 0.0}) == 0.0);

    // beta = -q/2 (real) makes the three absolute terms sum to exactly 3q
    CHECK(std::abs(detector::family_mana(0.01, {-0.005, 0.0})) < 1e-15);

    // at the harvesting point (coupling 0.1, omega sigma = 1)
    CHECK(detector::family_mana(8.310e-5, {-1.2066e-4, 0.0}) ==
          doctest::Approx(1.055e-4).epsilon(5e-4));

    SUBCASE("conjugation symmetry is exact") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> uniform(-0.3, 0.3);
        for (int trial = 0; trial < 50; ++trial) {
            const double q = std::abs(uniform(rng));
            const detector::Complex beta{uniform(rng), uniform(rng)};
            CHECK(detector::family_mana(q, beta) == detector::family_mana(q, std::conj(beta)));
        }
    }

    SUBCASE("matches the Wigner transform on random family states") {
        std::mt19937_64 rng(31);
        double worst = 0.0;
        for (int trial = 0; trial < 300; ++trial) {
            const auto fam = random_family_state(rng);
            const auto rho = detector::assemble_state(fam);
            worst = std::max(worst,
                             std::abs(detector::family_mana(fam.q, fam.beta) - ps::mana(rho)));
        }
        CHECK(worst < 1e-12);
    }

    SUBCASE("p-independence") {
        const double q = 0.12;
        const detector::Complex beta{0.05, -0.03};
        const double reference = detector::family_mana(q, beta);
        for (double p : {0.1, 0.3, 0.5, 0.8}) {
            if (p + q > 1.0) continue;
            const double pop_top = 1.0 - p - q;
            if (std::norm(beta) > p * pop_top) continue;  // would not be a state
            const auto rho = detector::assemble_state({p, q, beta});
            CHECK(ps::mana(rho) == doctest::Approx(reference).epsilon(1e-12));
        }
    }
}
