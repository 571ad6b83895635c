#include "doctest.h"
#include "helpers.hpp"
#include "qone/errors.hpp"

using namespace qone;
using qt::rel;

TEST_SUITE("modulus") {
    TEST_CASE("make_modulus rejects non-positive or non-finite omega") {
        CHECK_THROWS_AS(make_modulus(0), DomainError);
        CHECK_THROWS_AS(make_modulus(-1), DomainError);
        CHECK_THROWS_AS(make_modulus(INFINITY), DomainError);
        CHECK_THROWS_AS(make_modulus(NAN), DomainError);
    }

    TEST_CASE("q and Q lie on the unit circle") {
        auto m = make_modulus(qt::kW);
        CHECK(std::abs(m.q - std::exp(cplx(0, 2 * kPi * qt::kW))) < 1e-15);
        CHECK(std::abs(m.Qbig - std::exp(cplx(0, 2 * kPi / qt::kW))) < 1e-14);
        CHECK(m.Omega() == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-15));
        CHECK_FALSE(m.rational_proximity_warning);
    }

    TEST_CASE("rational omega raises the proximity warning") {
        auto m = make_modulus(0.5);
        CHECK(m.rational_proximity_warning);
        CHECK(m.near_p == 1);
        CHECK(m.near_s == 2);
    }

    TEST_CASE("one_minus_expi2pi keeps relative accuracy near integers") {
        const double d = 0x1p-40;  // exact, so 3 + d loses nothing
        const cplx v = one_minus_expi2pi(3 + d);
        CHECK(rel(v, cplx(0, -2 * kPi * d)) < 1e-11);
        CHECK(std::abs(one_minus_expi2pi(cplx(0.25, 40)) - 1.0) < 1e-15);
    }

    TEST_CASE("poch splits multiplicatively") {
        auto m = make_modulus(qt::kW);
        qt::Rng r(11);
        double worst = 0;
        for (int s = 0; s < 20; ++s) {
            const cplx x(r(-1, 1), r(-1, 1));
            for (int a = -5; a <= 5; ++a)
                for (int b = -5; b <= 5; ++b) {
                    const cplx lhs = poch(x, m.q, a + b);
                    const cplx rhs = poch(x, m.q, a) * poch(x * std::pow(m.q, a), m.q, b);
                    worst = std::max(worst, rel(rhs, lhs));
                }
        }
        CHECK(worst < 1e-12);
        CHECK(poch(cplx(0.3, 0.1), m.q, 0) == cplx(1));
    }

    TEST_CASE("torus coordinates are periodic") {
        auto m = make_modulus(qt::kW);
        const cplx g(0.37, -0.2);
        CHECK(rel(torus_q(m, g + 1 / qt::kW), torus_q(m, g)) < 1e-14);
        CHECK(rel(torus_Q(m, g + 1.0), torus_Q(m, g)) < 1e-14);
    }

    TEST_CASE("lattice extrema report infinities for empty sides") {
        std::vector<Anchor> only_left{{cplx(-0.4, 0), Anchor::Side::left}};
        auto [lo, hi] = lattice_extrema(only_left);
        CHECK(lo == doctest::Approx(-0.4));
        CHECK(std::isinf(hi));
        CHECK(hi > 0);
    }
}
