#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "qone/errors.hpp"
#include "qone/qhyper.hpp"

using namespace qone;
using qt::rel;

namespace {

const CocycleElement kOneT = CocycleElement::constant(Variable::Q_side, 1);

HGParams fixture(double a, double b, double g, double x) { return {make_modulus(qt::kW), a, b, g, x}; }

}  // namespace

TEST_SUITE("qhyper") {
    TEST_CASE("psi equals the prefactor times the Jordan-Pochhammer pairing") {
        auto p = fixture(0.4, 1.2, 1.3, 0.3);
        auto v = psi(p, 1e-12);
        auto q = pair(psi_weight(p), CocycleElement::constant(Variable::q_side, 1), kOneT, 1e-12);
        CHECK(rel(v.value, psi_prefactor(p) * q.value) < 1e-12);
        CHECK(v.quad.converged);
    }

    TEST_CASE("psi against the high-precision quadrature reference") {
        // mpmath line integrals at 20 digits (tests/oracle/contour_oracle.py psi, psi2)
        CHECK(rel(psi(fixture(0.4, 1.2, 1.3, 0.3), 1e-12).value,
                  cplx(1.02662481512174374, 0.791040290512418245)) < 1e-11);
        CHECK(rel(psi(fixture(0.3, 0.8, 1.1, 0.5), 1e-12).value,
                  cplx(0.984764308142345971, 0.404634522918827479)) < 1e-11);
    }

    TEST_CASE("x outside the window") {
        auto p = fixture(0.4, 1.2, 1.3, 3.0);
        try {
            psi(p, 1e-10);
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(std::string(e.what()).find("x = 3 outside convergence window (0, 2.11421)") != std::string::npos);
        }
        auto w = psi_window(p, kOneT);
        CHECK(w.upper == doctest::Approx(p.mod.Omega() + 1.3 - 0.4 - 1.2));
    }

    TEST_CASE("Heine relations") {
        for (auto p : {fixture(0.4, 1.2, 1.3, 0.3), fixture(0.4, 1.2, 2.0, 0.3), fixture(0.35, 1.1, 1.25, 0.4)}) {
            auto h = heine_residuals(p, 1e-12);
            for (auto* r : {&h.r1, &h.r2, &h.r3}) CHECK(std::abs(r->residual) < 1e-8 * r->scale);
        }
    }

    TEST_CASE("Heine relations with a Q-side factor 1/(1 - C T)") {
        auto p = fixture(0.4, 1.2, 1.3, 0.3);
        auto h = heine_residuals(p, 1e-12, CocycleElement::basis(Variable::Q_side, p.gamma));
        for (auto* r : {&h.r1, &h.r2, &h.r3}) CHECK(std::abs(r->residual) < 1e-8 * r->scale);
    }

    TEST_CASE("Heine coefficient poles") {
        CHECK_THROWS_AS(heine_residuals(fixture(0.4, 1.2, 1.0, 0.3), 1e-10), PoleError);
    }

    TEST_CASE("connection formula and its integrand-level split") {
        for (auto p : {fixture(0.4, 1.2, 1.3, 0.3), fixture(0.3, 0.8, 1.1, 0.5)}) {
            auto r = connection_residual(p, 1e-12);
            CHECK(std::abs(r.residual) < 1e-8 * r.scale);
            auto [e1, e2] = connection_split(p);
            const cplx whole = psi(p, 1e-12).value;
            const cplx parts = psi_auto(p, e1, 1e-12).value + psi_auto(p, e2, 1e-12).value;
            CHECK(rel(parts, whole) < 1e-8);
        }
        CHECK_THROWS_AS(connection_split(fixture(0.4, 0.4, 1.3, 0.3)), DegenerateInputError);
    }

    TEST_CASE("second-order difference equation in x") {
        auto r = difference_equation_residual(fixture(0.4, 1.2, 2.0, 0.3), 1e-12);
        CHECK(std::abs(r.residual) < 1e-8 * r.scale);
        CHECK_THROWS_AS(difference_equation_residual(fixture(0.4, 1.2, 1.3, 0.3), 1e-12), DivergenceError);
    }

    TEST_CASE("terminating series") {
        auto m = make_modulus(qt::kW);
        CHECK(phi_terminating(0, 0.6, 1.4, 0.3, m) == cplx(1));
        const cplx q = m.q, b = expi2pi(qt::kW * 0.6), c = expi2pi(qt::kW * 1.4), qx = expi2pi(qt::kW * 0.3);
        const cplx one = 1.0 + (1.0 - 1.0 / q) * (1.0 - b) / ((1.0 - q) * (1.0 - c)) * qx;
        CHECK(rel(phi_terminating(1, 0.6, 1.4, 0.3, m), one) < 1e-14);
        CHECK_THROWS_AS(phi_terminating(-1, 0.6, 1.4, 0.3, m), DomainError);
    }

    TEST_CASE("alpha = -n reproduces the terminating series") {
        for (int n = 0; n <= 2; ++n) {
            auto p = fixture(-n, 0.6, 1.4, 0.3);
            const cplx f = phi_terminating(n, 0.6, 1.4, 0.3, p.mod);
            CAPTURE(n);
            CHECK(rel(psi_residue_corrected(n, p, 1e-12).value, f) < 1e-8);
            CHECK(rel(psi_auto(p, kOneT, 1e-12).value, f) < 1e-8);
        }
    }

    TEST_CASE("approach to alpha = -n is first order") {
        const int n = 1;
        const cplx f = phi_terminating(n, 0.6, 1.4, 0.3, make_modulus(qt::kW));
        double d[2];
        const double eps[2] = {1e-3, 1e-4};
        for (int k = 0; k < 2; ++k) d[k] = std::abs(psi_auto(fixture(-n + eps[k], 0.6, 1.4, 0.3), kOneT, 1e-12).value - f);
        CHECK(std::log10(d[0] / d[1]) == doctest::Approx(1.0).epsilon(0.1));
    }

    TEST_CASE("residue-corrected route agrees with the general one off the integers") {
        auto p = fixture(-1 + 0.01, 0.6, 1.4, 0.3);
        auto a = psi_residue_corrected(1, p, 1e-12);
        auto rc = pair_residue_corrected(psi_weight(p), CocycleElement::constant(Variable::q_side, 1), kOneT, 1e-12);
        CHECK(rel(a.value, psi_prefactor(p) * rc.value) < 1e-10);
        CHECK_THROWS_AS(psi_residue_corrected(1, fixture(0.4, 0.6, 1.4, 0.3), 1e-10), DomainError);
    }
}
