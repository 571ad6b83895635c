#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qone/cocycle.hpp"
#include "qone/contour.hpp"

namespace qone {

cplx log_phi_jp(const JordanPochhammerWeight& jp, cplx z);
cplx phi_jp(const JordanPochhammerWeight& jp, cplx z);

// Denominator factors of phi / phi~ sorted onto the angle factors of Phi.
// Left anchor j absorbs factors into 1/<z + gamma_j - l_j - l~_j/w>, right
// anchor j into <z + gamma'_j + l'_j + l~'_j/w>.
struct FactorLayout {
    std::vector<int> left_q, left_Q, right_q, right_Q;
    std::vector<cplx> left_shifted, right_shifted;  // gamma_j - l - l~/w, gamma'_j + l' + l~'/w
    std::vector<int> phi_owner, phi_tilde_owner;    // group id per denominator factor
    double left_max = 0, right_min = 0;             // extreme real parts of the two pole lattices
    int groups() const { return int(left_shifted.size() + right_shifted.size()); }
};

// Throws DomainError when a factor does not fit the block structure of Z / Z~.
FactorLayout classify_factors(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                              const CocycleElement& phi_tilde);

// Admissible range of Re alpha, intersected over all numerator monomials.
struct Window {
    double lower = 0, upper = 0;
    bool empty() const { return !(lower < upper); }
    bool contains(double a) const { return lower < a && a < upper; }
};
Window convergence_window(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                          const CocycleElement& phi_tilde);

struct PairingProblem {
    JordanPochhammerWeight jp;
    CocycleElement phi, phi_tilde;
    ContourSpec contour = default_contour_spec();
    FactorLayout layout;
};

// Validates the window and the separating line; fills contour.rho.
PairingProblem make_pairing_problem(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                                    const CocycleElement& phi_tilde);

// log of Phi(z) phi(t) phi~(T), optionally without one factor group.
cplx log_integrand(const PairingProblem& p, cplx z, int exclude_group = -1);

QuadratureResult pair(const PairingProblem& problem, double tol);
QuadratureResult pair(const JordanPochhammerWeight& jp, const CocycleElement& phi, const CocycleElement& phi_tilde,
                      double tol);

// Integral over a line Re z = rho plus the residues of the poles that lie
// on the wrong side of it. Works when no straight line separates the lattices.
struct ResidueCorrected {
    QuadratureResult line;
    cplx residues = 0;
    cplx value = 0;
    double rho = 0;
    int left_poles = 0, right_poles = 0;
};
struct ResidueOptions {
    std::optional<double> rho;
    // Left poles skipped (group, m, n); their contribution is supplied by the caller.
    std::vector<std::tuple<int, int, int>> skip_left;
};
ResidueCorrected pair_residue_corrected(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                                        const CocycleElement& phi_tilde, double tol,
                                        const ResidueOptions& opts = {});

// Straight line when one exists, otherwise residue corrected.
QuadratureResult pair_auto(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                           const CocycleElement& phi_tilde, double tol);

struct DetResult {
    cplx numeric_det, closed_form;
    cplx closed_form_sigma_swapped;
    Eigen::MatrixXcd matrix;
    double scale = 0;
    double abs_error_estimate = 0;  // first order in the entry errors, via cofactors
};
// The printed product with 1/sigma(g'_j - g'_k) for j < k.
cplx det_closed_form(const JordanPochhammerWeight& jp);
// Same product with sigma(g'_k - g'_j) in place of 1/sigma(g'_j - g'_k); differs
// from the printed one by prod_{j<k} exp(-2 pi i w (g'_j - g'_k)^2).
cplx det_closed_form_sigma_swapped(const JordanPochhammerWeight& jp);
DetResult det_pairing_matrix(const JordanPochhammerWeight& jp, double tol);

struct ResidualResult {
    cplx residual = 0;
    double scale = 0;  // largest magnitude among the combined terms
    std::vector<cplx> terms;
};
ResidualResult mellin_sato_residual(const JordanPochhammerWeight& jp, const CocycleElement& phi_tilde, int chi,
                                    double tol);

}  // namespace qone
