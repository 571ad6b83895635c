#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "qone/errors.hpp"
#include "qone/jacobi.hpp"
#include "qone/qhyper.hpp"

using namespace qone;
using qt::rel;

TEST_SUITE("jacobi") {
    TEST_CASE("low degrees") {
        auto m = make_modulus(qt::kW);
        auto p0 = little_jacobi(0, 0.3, 0.2, m);
        CHECK(p0.degree() == 0);
        CHECK(p0.coeffs[0] == cplx(1));
        auto p1 = little_jacobi(1, 0.3, 0.2, m);
        const cplx c = -one_minus_expi2pi(qt::kW * 2.5) / one_minus_expi2pi(qt::kW * 1.3);
        CHECK(rel(p1.coeffs[1], c) < 1e-14);
        CHECK_THROWS_AS(little_jacobi(-1, 0.3, 0.2, m), DomainError);
    }

    TEST_CASE("evaluation at q^x is the terminating series at x + 1") {
        auto m = make_modulus(qt::kW);
        const double a = 0.3, b = 0.2, x = 0.3;
        for (int n = 0; n <= 3; ++n) {
            auto p = little_jacobi(n, a, b, m);
            CAPTURE(n);
            CHECK(rel(p(expi2pi(qt::kW * x)), phi_terminating(n, a + b + n + 1, a + 1, x + 1, m)) < 1e-12);
        }
    }

    TEST_CASE("product coefficients are symmetric in m and n") {
        auto m = make_modulus(0.618);
        auto a = product_coeffs(1, 2, 0.4, 0.7, m), b = product_coeffs(2, 1, 0.4, 0.7, m);
        REQUIRE(a.size() == 4);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-14 * std::abs(a[k]) + 1e-300);
    }

    TEST_CASE("moment identity holds for random parameters") {
        qt::Rng rng(29);
        for (int d = 0; d < 10; ++d) {
            auto m = make_modulus(rng(0.3, 1.7));
            const double al = rng(0.1, 3.0), be = rng(0.1, 3.0);
            for (int i = 0; i <= 3; ++i)
                for (int j = 0; j <= 3; ++j) {
                    double big = 0;
                    const cplx s = jacobi_moment_sum(i, j, al, be, m, &big);
                    const cplx r = s - jacobi_norm_factor(i, j, al, be, m);
                    const double scale = i == j ? std::abs(jacobi_norm_factor(i, j, al, be, m)) : std::max(1.0, big);
                    CAPTURE(i);
                    CAPTURE(j);
                    CHECK(std::abs(r) < 1e-11 * scale);
                }
        }
    }

    TEST_CASE("orthogonality by quadrature") {
        auto m = make_modulus(qt::kW);
        for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
            auto r = orthogonality_pair(i, j, 0.2, 0.15, m, 1e-12);
            const double scale = std::max(std::abs(r.expected), std::abs(qbeta_closed_form(0.2, 0.15, m)));
            CAPTURE(i);
            CAPTURE(j);
            CHECK(std::abs(r.termwise - r.expected) < 1e-9 * scale);
            CHECK(std::abs(r.direct - r.termwise) < 1e-9 * scale);
            CHECK(std::abs(r.algebraic - r.expected) < 1e-12 * scale);
        }
    }

    TEST_CASE("a monomial outside the window is named in the error") {
        auto m = make_modulus(qt::kW);
        try {
            orthogonality_pair(2, 2, 0.3, 6.0, m, 1e-10);
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(std::string(e.what()).find("monomial t^") != std::string::npos);
        }
    }
}
