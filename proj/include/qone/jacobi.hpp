#pragma once

#include <vector>

#include "qone/pairing.hpp"

namespace qone {

struct QPolynomial {
    std::vector<cplx> coeffs;  // coefficient of t^k
    int degree() const { return int(coeffs.size()) - 1; }
    cplx operator()(cplx t) const;
};

// p_n^{(a,b)}(t) = phi(q^{-n}, q^{a+b+n+1}, q^{a+1}; q t).
QPolynomial little_jacobi(int n, cplx a_exp, cplx b_exp, const ModulusParameters& mod);

// Coefficients of p_m^{(a,b)}(t) p_n^{(a,b)}(t).
std::vector<cplx> product_coeffs(int m, int n, cplx a_exp, cplx b_exp, const ModulusParameters& mod);

// sum_k A_k prod_{j<k} (1-q^{alpha+j})/(1-q^{alpha+beta+j}), A_k from p^{(alpha-1, beta-1)}.
cplx jacobi_moment_sum(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod,
                       double* max_term = nullptr);
// delta_{mn} (1-q^{a+b-1})/(1-q^{a+b+2n-1}) (q)_n (q^b)_n / ((q^{a+b-1})_n (q^a)_n) q^{n a}
cplx jacobi_norm_factor(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod);
cplx moment_identity_residual(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod);

// <1><alpha+beta> / (<alpha><beta>)
cplx qbeta_closed_form(cplx alpha, cplx beta, const ModulusParameters& mod);
// The q-Beta kernel t^alpha <z+1+1/w>/<z+beta> as a weight.
JordanPochhammerWeight qbeta_weight(cplx alpha, cplx beta, const ModulusParameters& mod);

struct OrthogonalityResult {
    cplx termwise;   // sum_k A_k * (quadrature of the q-Beta kernel at alpha+k)
    cplx direct;     // one quadrature of the full polynomial kernel
    cplx algebraic;  // closed q-Beta value times jacobi_moment_sum
    cplx expected;   // delta_{mn} c_n
    double error_estimate = 0;
};
OrthogonalityResult orthogonality_pair(int m, int n, cplx alpha, cplx beta, const ModulusParameters& mod,
                                       double tol);

}  // namespace qone
