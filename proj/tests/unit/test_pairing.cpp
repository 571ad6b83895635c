#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/jacobi.hpp"
#include "qone/pairing.hpp"

using namespace qone;
using qt::rel;

namespace {

const CocycleElement kOne = CocycleElement::constant(Variable::q_side, 1);
const CocycleElement kOneT = CocycleElement::constant(Variable::Q_side, 1);

}  // namespace

TEST_SUITE("pairing") {
    TEST_CASE("q-Beta integral against the high-precision quadrature reference") {
        auto m = make_modulus(qt::kW);
        // mpmath line integral at 20 digits (tests/oracle/contour_oracle.py)
        const cplx ref(0.46620607559136176284, 0.45304085587021173629);
        auto r = pair(qbeta_weight(0.4, 0.9, m), kOne, kOneT, 1e-12);
        CHECK(r.converged);
        CHECK(rel(r.value, ref) < 1e-11);
        CHECK(rel(qbeta_closed_form(0.4, 0.9, m), ref) < 1e-12);
    }

    TEST_CASE("q-Beta window and separating line") {
        auto m = make_modulus(qt::kW);
        auto w = convergence_window(qbeta_weight(0.4, 0.9, m), kOne, kOneT);
        CHECK(w.lower == doctest::Approx(0.0));
        CHECK(w.upper == doctest::Approx(m.Omega() - 0.9));
        auto L = classify_factors(qbeta_weight(0.4, 0.9, m), kOne, kOneT);
        CHECK(L.left_max == doctest::Approx(-0.9));
        CHECK(L.right_min == doctest::Approx(0.0));
        auto p = make_pairing_problem(qbeta_weight(0.4, 0.9, m), kOne, kOneT);
        CHECK(p.contour.rho == doctest::Approx(-0.45));
    }

    TEST_CASE("outside the window is a divergence with the window in the message") {
        auto m = make_modulus(qt::kW);
        try {
            make_pairing_problem(qbeta_weight(1.8, 0.9, m), kOne, kOneT);
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(std::string(e.what()).find("outside convergence window (0, 1.51421)") != std::string::npos);
        }
        CHECK_THROWS_AS(make_pairing_problem(qbeta_weight(-0.1, 0.9, m), kOne, kOneT), DivergenceError);
    }

    TEST_CASE("overlapping lattices: straight line impossible, residue correction matches the closed form") {
        auto m = make_modulus(qt::kW);
        auto jp = qbeta_weight(0.4, -1.6, m);
        CHECK_THROWS_AS(make_pairing_problem(jp, kOne, kOneT), NoSeparatingLineError);
        auto r = pair_auto(jp, kOne, kOneT, 1e-12);
        CHECK(rel(r.value, qbeta_closed_form(0.4, -1.6, m)) < 1e-10);
    }

    TEST_CASE("residue-corrected value does not depend on the line") {
        auto m = make_modulus(qt::kW);
        auto jp = qbeta_weight(0.4, 0.9, m);
        ResidueOptions a, b;
        a.rho = -1.3;
        b.rho = 0.7;
        auto ra = pair_residue_corrected(jp, kOne, kOneT, 1e-12, a);
        auto rb = pair_residue_corrected(jp, kOne, kOneT, 1e-12, b);
        CHECK(ra.left_poles > 0);
        CHECK(rb.right_poles > 0);
        CHECK(rel(ra.value, rb.value) < 1e-10);
        CHECK(rel(ra.value, qbeta_closed_form(0.4, 0.9, m)) < 1e-10);
    }

    TEST_CASE("bilinearity") {
        auto m = make_modulus(qt::kW);
        auto jp = qbeta_weight(0.4, 0.3, m);
        auto t = CocycleElement::monomial(Variable::q_side, 1);
        const cplx a(2, 0), b(0, 3);
        auto combo = kOne.scaled(a).sum(t.scaled(b), m);
        const cplx lhs = pair(jp, combo, kOneT, 1e-12).value;
        const cplx rhs = a * pair(jp, kOne, kOneT, 1e-12).value + b * pair(jp, t, kOneT, 1e-12).value;
        CHECK(rel(lhs, rhs) < 1e-10);
        auto T = CocycleElement::monomial(Variable::Q_side, 1);
        auto combo2 = kOneT.scaled(a).sum(T.scaled(b), m);
        const cplx l2 = pair(jp, kOne, combo2, 1e-12).value;
        const cplx r2 = a * pair(jp, kOne, kOneT, 1e-12).value + b * pair(jp, kOne, T, 1e-12).value;
        CHECK(rel(l2, r2) < 1e-10);
    }

    TEST_CASE("coboundaries pair to zero") {
        auto m = make_modulus(qt::kW);
        auto jp = qbeta_weight(0.4, 0.3, m);
        for (int chi : {1, -1, 2, -2}) {
            auto r = pair_auto(jp, coboundary_generator(CocycleElement::monomial(Variable::q_side, 1), jp, chi), kOneT, 1e-12);
            CHECK(std::abs(r.value) < 1e-8 * r.scale);
            auto R = pair_auto(jp, kOne, coboundary_generator(CocycleElement::basis(Variable::Q_side, jp.gamma_primes[0]), jp, chi), 1e-12);
            CHECK(std::abs(R.value) < 1e-8 * R.scale);
        }
    }

    TEST_CASE("a detached denominator factor is rejected") {
        auto m = make_modulus(qt::kW);
        auto jp = qbeta_weight(0.4, 0.9, m);
        CHECK_THROWS_AS(classify_factors(jp, CocycleElement::basis(Variable::q_side, 0.123), kOneT), DomainError);
        CHECK_THROWS_AS(classify_factors(jp, CocycleElement::basis(Variable::q_side, jp.gamma_primes[0] + 2.0), kOneT),
                        DomainError);
        CHECK_THROWS_AS(classify_factors(jp, kOneT, kOneT), DomainError);
    }

    TEST_CASE("determinant for n = 1 is the q-Beta integral") {
        auto m = make_modulus(qt::kW);
        JordanPochhammerWeight jp{m, 0.4, {0.9}, {0.0}};
        auto d = det_pairing_matrix(jp, 1e-12);
        CHECK(rel(d.numeric_det, d.closed_form) < 1e-10);
        CHECK(rel(d.closed_form, qbeta_closed_form(0.4, 0.9, m)) < 1e-14);
        CHECK(d.abs_error_estimate < 1e-9);
    }

    TEST_CASE("determinant for n = 2: printed product is off by a Gaussian phase") {
        auto m = make_modulus(qt::kW);
        JordanPochhammerWeight jp{m, 0.5, {0.5, 0.9}, {0.0, 0.3}};
        auto d = det_pairing_matrix(jp, 1e-12);
        // mpmath 2x2 pairing matrix at 20 digits (tests/oracle/contour_oracle.py det)
        CHECK(rel(d.numeric_det, cplx(0.0313914632829289704, 0.656849961363356841)) < 1e-10);
        CHECK(rel(d.numeric_det, d.closed_form_sigma_swapped) < 1e-10);
        const double dd = -0.3;
        const cplx phase = std::exp(cplx(0, -2 * kPi * qt::kW * dd * dd));
        CHECK(rel(d.closed_form * phase, d.closed_form_sigma_swapped) < 1e-13);
        CHECK(rel(d.numeric_det, d.closed_form) > 0.1);
    }

    TEST_CASE("determinant at a window-violating fixture is a divergence") {
        auto m = make_modulus(qt::kW);
        JordanPochhammerWeight jp{m, 0.5, {1.1, 1.6}, {0.0, 0.3}};
        CHECK_THROWS_AS(det_pairing_matrix(jp, 1e-10), DivergenceError);
    }

    TEST_CASE("Mellin-Sato residual") {
        auto m = make_modulus(qt::kW);
        for (double beta : {0.9, -1.6})
            for (int chi : {1, -1}) {
                auto r = mellin_sato_residual(qbeta_weight(0.4, beta, m), kOneT, chi, 1e-12);
                CHECK(std::abs(r.residual) < 1e-8 * r.scale);
            }
        CHECK_THROWS_AS(mellin_sato_residual(qbeta_weight(0.4, 3.0, m), kOneT, 1, 1e-12), DivergenceError);
    }

    TEST_CASE("log_integrand is consistent with phi_jp") {
        auto m = make_modulus(qt::kW);
        auto p = make_pairing_problem(qbeta_weight(0.4, 0.9, m), kOne, kOneT);
        const cplx z(-0.45, 1.3);
        CHECK(rel(std::exp(log_integrand(p, z)), phi_jp(p.jp, z)) < 1e-13);
    }
}
