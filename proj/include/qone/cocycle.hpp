#pragma once

#include <map>
#include <vector>

#include "qone/modulus.hpp"

namespace qone {

// q-side elements are functions of t = e^{2 pi i w z}, Q-side of T = e^{2 pi i z}.
enum class Variable { q_side, Q_side };

// Phi(z) = t^alpha prod <z + gamma'_j> / prod <z + gamma_j>.
struct JordanPochhammerWeight {
    ModulusParameters mod;
    cplx alpha;
    std::vector<cplx> gammas;
    std::vector<cplx> gamma_primes;
};

// Pairs (j, k) for which gamma_j - gamma'_k sits on the zero/pole lattice.
std::vector<std::pair<int, int>> lattice_collisions(const JordanPochhammerWeight& jp, double tol = 1e-9);

// A factor block (c q^{-l} t; q)_l (left) or (c' t; q)_l (right), c = e^{2 pi i w anchor};
// on the Q-side the same with Q, T and C = e^{2 pi i anchor}.
struct DenomBlock {
    enum class Orientation { left, right };
    cplx anchor;
    int ell = 1;
    Orientation orientation = Orientation::right;
};

// f(t) prod (1 - e(E) t) / prod (1 - e(D) t), e(E) = e^{2 pi i w E} on the
// q-side and e^{2 pi i E} on the Q-side. f is a Laurent polynomial.
class CocycleElement {
public:
    Variable side = Variable::q_side;
    std::map<int, cplx> numerator;
    std::vector<cplx> num_roots;
    std::vector<cplx> denom;

    static CocycleElement constant(Variable side, cplx c);
    static CocycleElement monomial(Variable side, int k, cplx c = 1);
    static CocycleElement from_blocks(const ModulusParameters& mod, Variable side, std::map<int, cplx> numerator,
                                      const std::vector<DenomBlock>& blocks);
    // 1 / (1 - e(anchor) t)
    static CocycleElement basis(Variable side, cplx anchor);

    bool is_zero() const;
    // Numerator with the root factors multiplied out.
    std::map<int, cplx> expanded_numerator(const ModulusParameters& mod) const;

    // log of the value at z (real part -inf at zeros); skip marks denominator
    // factors to leave out.
    cplx log_eval(const ModulusParameters& mod, cplx z, const std::vector<bool>* skip = nullptr) const;
    cplx eval(const ModulusParameters& mod, cplx z) const;
    // Value as a function of the variable itself (t or T).
    cplx eval_variable(const ModulusParameters& mod, cplx t) const;

    // psi(q^chi t) (or psi(Q^chi T)).
    CocycleElement shifted(const ModulusParameters& mod, int chi) const;
    CocycleElement scaled(cplx c) const;

    CocycleElement product(const CocycleElement& o, const ModulusParameters& mod) const;
    CocycleElement sum(const CocycleElement& o, const ModulusParameters& mod) const;
    CocycleElement difference(const CocycleElement& o, const ModulusParameters& mod) const;
};

cplx eval_element(const CocycleElement& e, const ModulusParameters& mod, cplx z);

// b_chi = prefactor * prod(1 - e(plus_i) t) / prod(1 - e(minus_i) t).
struct CocycleFactorization {
    Variable side = Variable::q_side;
    cplx prefactor = 1;
    std::vector<cplx> plus_roots, minus_roots;
    bool shared_root_warning = false;

    CocycleElement element() const;
    CocycleElement plus() const;
    CocycleElement minus() const;
};

CocycleFactorization b_chi(const JordanPochhammerWeight& jp, int chi);
CocycleFactorization b_tilde_chi(const JordanPochhammerWeight& jp, int chi);

// psi - b_chi psi(q^chi t) (q-side) or psi - b~_chi psi(Q^chi T) (Q-side).
CocycleElement coboundary_generator(const CocycleElement& psi, const JordanPochhammerWeight& jp, int chi);

// (A-C)(1-BT)/((A-B)(1-CT)) + (B-C)(1-AT)/((B-A)(1-CT)) - 1, identically 0.
cplx partial_fraction_residual(cplx A, cplx B, cplx C, cplx T);

struct BasisElements {
    std::vector<CocycleElement> q_side, Q_side;
};
BasisElements basis_elements(const JordanPochhammerWeight& jp);

}  // namespace qone
