#include "doctest.h"
#include "helpers.hpp"
#include "qone/cocycle.hpp"
#include "qone/errors.hpp"
#include "qone/pairing.hpp"

using namespace qone;
using qt::rel;

namespace {

JordanPochhammerWeight psi_kernel(const ModulusParameters& m) {
    return {m, 0.3, {0.4, 1.2}, {cplx(m.Omega(), 0), 1.3}};
}

}  // namespace

TEST_SUITE("cocycle") {
    TEST_CASE("elements evaluate as rational functions of t") {
        auto m = make_modulus(qt::kW);
        auto one = CocycleElement::constant(Variable::q_side, 2.5);
        CHECK(one.eval_variable(m, cplx(0.3, 0.7)) == cplx(2.5));
        auto t2 = CocycleElement::monomial(Variable::q_side, 2, 3.0);
        CHECK(rel(t2.eval_variable(m, cplx(0.5, 0.5)), 3.0 * cplx(0.5, 0.5) * cplx(0.5, 0.5)) < 1e-15);
        auto b = CocycleElement::basis(Variable::q_side, 0.3);
        const cplx t(0.2, -0.9);
        CHECK(rel(b.eval_variable(m, t), 1.0 / (1.0 - torus_q(m, 0.3) * t)) < 1e-14);
        auto B = CocycleElement::basis(Variable::Q_side, 0.3);
        CHECK(rel(B.eval_variable(m, t), 1.0 / (1.0 - torus_Q(m, 0.3) * t)) < 1e-14);
    }

    TEST_CASE("eval at z uses t = e^{2 pi i w z} or T = e^{2 pi i z}") {
        auto m = make_modulus(qt::kW);
        const cplx z(0.2, 0.4);
        auto tq = CocycleElement::monomial(Variable::q_side, 1);
        auto tQ = CocycleElement::monomial(Variable::Q_side, 1);
        CHECK(rel(tq.eval(m, z), expi2pi(qt::kW * z)) < 1e-14);
        CHECK(rel(tQ.eval(m, z), expi2pi(z)) < 1e-14);
    }

    TEST_CASE("shifted, product, sum and difference agree with pointwise arithmetic") {
        auto m = make_modulus(qt::kW);
        auto a = CocycleElement::basis(Variable::q_side, 0.3).product(CocycleElement::monomial(Variable::q_side, 1, 2.0), m);
        auto b = CocycleElement::basis(Variable::q_side, 0.7);
        qt::Rng r(5);
        for (int i = 0; i < 20; ++i) {
            const cplx t = r.unit_disc_ring(0.5, 2.0);
            const cplx av = a.eval_variable(m, t), bv = b.eval_variable(m, t);
            CHECK(rel(a.product(b, m).eval_variable(m, t), av * bv) < 1e-12);
            CHECK(rel(a.sum(b, m).eval_variable(m, t), av + bv) < 1e-12);
            CHECK(rel(a.difference(b, m).eval_variable(m, t), av - bv) < 1e-12);
            CHECK(rel(a.shifted(m, 2).eval_variable(m, t), a.eval_variable(m, m.q * m.q * t)) < 1e-12);
            CHECK(rel(a.scaled(cplx(0, 3)).eval_variable(m, t), cplx(0, 3) * av) < 1e-14);
        }
    }

    TEST_CASE("cocycle law on both sides") {
        auto m = make_modulus(qt::kW);
        auto jp = psi_kernel(m);
        qt::Rng r(7);
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const cplx t = r.unit_disc_ring(0.5, 2.0);
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b) {
                    const cplx lq = b_chi(jp, a + b).element().eval_variable(m, t);
                    const cplx rq = b_chi(jp, a).element().eval_variable(m, t) *
                                    b_chi(jp, b).element().shifted(m, a).eval_variable(m, t);
                    const cplx lQ = b_tilde_chi(jp, a + b).element().eval_variable(m, t);
                    const cplx rQ = b_tilde_chi(jp, a).element().eval_variable(m, t) *
                                    b_tilde_chi(jp, b).element().shifted(m, a).eval_variable(m, t);
                    worst = std::max({worst, rel(rq, lq), rel(rQ, lQ)});
                }
        }
        CHECK(worst < 1e-12);
    }

    TEST_CASE("b_chi is the ratio Phi(z + chi) / Phi(z)") {
        auto m = make_modulus(qt::kW);
        auto jp = psi_kernel(m);
        qt::Rng r(8);
        for (int i = 0; i < 30; ++i) {
            const cplx z(r(-0.5, 0.5), r(-2, 2));
            for (int chi : {1, -1, 2, -2}) {
                CHECK(rel(b_chi(jp, chi).element().eval(m, z), phi_jp(jp, z + double(chi)) / phi_jp(jp, z)) < 1e-10);
                CHECK(rel(b_tilde_chi(jp, chi).element().eval(m, z),
                          phi_jp(jp, z + double(chi) / qt::kW) / phi_jp(jp, z)) < 1e-10);
            }
        }
    }

    TEST_CASE("factorization exposes b+ and b-") {
        auto m = make_modulus(qt::kW);
        auto jp = psi_kernel(m);
        auto f = b_chi(jp, 1);
        CHECK(f.plus_roots.size() == 2);
        CHECK(f.minus_roots.size() == 2);
        CHECK(rel(f.prefactor, expi2pi(qt::kW * jp.alpha)) < 1e-14);
        const cplx t(0.4, 0.3);
        CHECK(rel(f.element().eval_variable(m, t),
                  f.prefactor * f.plus().eval_variable(m, t) / f.minus().eval_variable(m, t)) < 1e-13);
    }

    TEST_CASE("coboundary generator is psi - b psi(q^chi t)") {
        auto m = make_modulus(qt::kW);
        auto jp = psi_kernel(m);
        auto psi = CocycleElement::basis(Variable::q_side, jp.gamma_primes[0]);
        for (int chi : {1, -2}) {
            auto g = coboundary_generator(psi, jp, chi);
            const cplx t(0.3, -0.8);
            const cplx expect = psi.eval_variable(m, t) -
                                b_chi(jp, chi).element().eval_variable(m, t) * psi.eval_variable(m, std::pow(m.q, chi) * t);
            CHECK(rel(g.eval_variable(m, t), expect) < 1e-12);
        }
    }

    TEST_CASE("partial fraction split under the integral") {
        qt::Rng r(9);
        double worst = 0;
        for (int i = 0; i < 1000; ++i)
            worst = std::max(worst, std::abs(partial_fraction_residual(r.unit_disc_ring(0.5, 1.5), r.unit_disc_ring(0.5, 1.5),
                                                                 r.unit_disc_ring(0.5, 1.5), r.unit_disc_ring(0.5, 1.5))));
        CHECK(worst < 1e-12);
        CHECK(std::abs(partial_fraction_residual(1.0, cplx(0, 1), 0.0, 0.5)) < 1e-15);
        CHECK_THROWS_AS(partial_fraction_residual(0.5, 0.5, 0.1, 0.2), DegenerateInputError);
        CHECK_THROWS_AS(partial_fraction_residual(0.5, 0.7, 2.0, 0.5), DegenerateInputError);
    }

    TEST_CASE("basis elements sit at the numerator offsets") {
        auto m = make_modulus(qt::kW);
        auto b = basis_elements(psi_kernel(m));
        REQUIRE(b.q_side.size() == 2);
        REQUIRE(b.Q_side.size() == 2);
        CHECK(b.q_side[1].denom.at(0) == cplx(1.3));
        JordanPochhammerWeight bad{m, 0.3, {0.4}, {}};
        CHECK_THROWS_AS(basis_elements(bad), DomainError);
    }

    TEST_CASE("lattice collisions are detected") {
        auto m = make_modulus(qt::kW);
        JordanPochhammerWeight jp{m, 0.3, {0.0}, {1.0}};
        CHECK_FALSE(lattice_collisions(jp).empty());
        CHECK(lattice_collisions(psi_kernel(m)).empty());
    }
}
