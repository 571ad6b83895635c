#include "qone/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/parallel.hpp"

namespace qone {

namespace {

// 1 - q^e
cplx omq(const ModulusParameters& mod, cplx e) { return one_minus_expi2pi(mod.omega * e); }

// (q^e; q)_n
cplx poch_q(const ModulusParameters& mod, cplx e, int n) {
    cplx acc = 1;
    for (int j = 0; j < n; ++j) acc *= omq(mod, e + double(j));
    return acc;
}

}  // namespace

cplx QPolynomial::operator()(cplx t) const {
    cplx acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

QPolynomial little_jacobi(int n, cplx a_exp, cplx b_exp, const ModulusParameters& mod) {
    if (n < 0) throw DomainError("little_jacobi: n must be non-negative");
    QPolynomial p;
    p.coeffs.assign(n + 1, 0);
    cplx c = 1;
    p.coeffs[0] = 1;
    for (int k = 1; k <= n; ++k) {
        const int j = k - 1;
        cplx d = omq(mod, double(j + 1)) * omq(mod, a_exp + 1.0 + double(j));
        if (d == cplx(0)) throw PoleError("little_jacobi: vanishing factor at j = " + std::to_string(j), j);
        c *= omq(mod, double(j - n)) * omq(mod, a_exp + b_exp + double(n + 1 + j)) / d * mod.q;
        p.coeffs[k] = c;
    }
    return p;
}

std::vector<cplx> product_coeffs(int m, int n, cplx a_exp, cplx b_exp, const ModulusParameters& mod) {
    auto pm = little_jacobi(m, a_exp, b_exp, mod), pn = little_jacobi(n, a_exp, b_exp, mod);
    std::vector<cplx> out(m + n + 1, 0);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) out[i + j] += pm.coeffs[i] * pn.coeffs[j];
    return out;
}

cplx jacobi_moment_sum(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod, double* max_term) {
    auto A = product_coeffs(m, n, alpha - 1.0, beta - 1.0, mod);
    cplx sum = 0, w = 1;
    for (std::size_t k = 0; k < A.size(); ++k) {
        if (k > 0) {
            cplx d = omq(mod, alpha + beta + double(k - 1));
            if (d == cplx(0)) throw PoleError("moment sum: vanishing factor 1 - q^{alpha+beta+j}", int(k - 1));
            w *= omq(mod, alpha + double(k - 1)) / d;
        }
        sum += A[k] * w;
        if (max_term) *max_term = std::max(*max_term, std::abs(A[k] * w));
    }
    return sum;
}

cplx jacobi_norm_factor(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod) {
    if (m != n) return 0;
    cplx den = omq(mod, alpha + beta + double(2 * n - 1)) * poch_q(mod, alpha + beta - 1.0, n) * poch_q(mod, alpha, n);
    if (den == cplx(0)) throw PoleError("norm factor: vanishing denominator");
    return omq(mod, alpha + beta - 1.0) * poch_q(mod, 1.0, n) * poch_q(mod, beta, n) / den *
           expi2pi(mod.omega * double(n) * alpha);
}

cplx moment_identity_residual(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod) {
    return jacobi_moment_sum(m, n, alpha, beta, mod) - jacobi_norm_factor(m, n, alpha, beta, mod);
}

cplx qbeta_closed_form(cplx alpha, cplx beta, const ModulusParameters& mod) {
    const auto& ev = AngleEvaluator::shared(mod);
    cplx den = ev.log_angle(alpha) + ev.log_angle(beta);
    if (den.real() == -INFINITY) throw PoleError("q-Beta closed form: <alpha> or <beta> vanishes");
    cplx num = ev.log_angle(1.0) + ev.log_angle(alpha + beta);
    if (num.real() == -INFINITY) return 0;
    return std::exp(num - den);
}

JordanPochhammerWeight qbeta_weight(cplx alpha, cplx beta, const ModulusParameters& mod) {
    return {mod, alpha, {beta}, {cplx(mod.Omega(), 0)}};
}

OrthogonalityResult orthogonality_pair(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod,
                                       double tol) {
    auto A = product_coeffs(m, n, alpha - 1.0, beta - 1.0, mod);
    const auto one_q = CocycleElement::constant(Variable::q_side, 1);
    const auto one_Q = CocycleElement::constant(Variable::Q_side, 1);
    OrthogonalityResult r;
    auto parts = parallel_map(A.size(), [&](std::size_t k) {
        try {
            return pair(qbeta_weight(alpha + double(k), beta, mod), one_q, one_Q, tol);
        } catch (const DivergenceError& e) {
            throw DivergenceError("orthogonality: monomial t^" + std::to_string(k) + " outside the window: " +
                                  e.what());
        }
    });
    std::vector<cplx> terms;
    for (std::size_t k = 0; k < A.size(); ++k) {
        terms.push_back(A[k] * parts[k].value);
        r.error_estimate += std::abs(A[k]) * (parts[k].abs_error_estimate + parts[k].truncation_bound);
    }
    r.termwise = pairwise_sum(terms.data(), terms.size());

    CocycleElement poly;
    poly.side = Variable::q_side;
    for (std::size_t k = 0; k < A.size(); ++k)
        if (A[k] != cplx(0)) poly.numerator[int(k)] = A[k];
    r.direct = pair(qbeta_weight(alpha, beta, mod), poly, one_Q, tol).value;

    const cplx cb = qbeta_closed_form(alpha, beta, mod);
    r.algebraic = cb * jacobi_moment_sum(m, n, alpha, beta, mod);
    r.expected = cb * jacobi_norm_factor(m, n, alpha, beta, mod);
    return r;
}

}  // namespace qone
