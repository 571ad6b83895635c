#pragma once

#include <optional>

#include "qone/pairing.hpp"

namespace qone {

struct HGParams {
    ModulusParameters mod;
    cplx alpha, beta, gamma, x;
};

// Kernel q^{xz} <z+1+1/w><z+gamma> / (<z+alpha><z+beta>) as a weight with
// exponent x, denominator offsets {alpha, beta}, numerator offsets {1+1/w, gamma}.
JordanPochhammerWeight psi_weight(const HGParams& p);
// <alpha><beta> / (<1><gamma>)
cplx psi_prefactor(const HGParams& p);
// Admissible Re x for the given phi~.
Window psi_window(const HGParams& p, const CocycleElement& phi_tilde);

struct PsiValue {
    cplx value;
    QuadratureResult quad;  // quadrature of the integral, before the prefactor
    bool residue_corrected = false;
};

PsiValue psi(const HGParams& p, double tol);
PsiValue psi_with_cocycle(const HGParams& p, const CocycleElement& phi_tilde, double tol);
// Falls back to residue correction when no straight line exists, and to
// psi_residue_corrected near alpha = -n.
PsiValue psi_auto(const HGParams& p, const CocycleElement& phi_tilde, double tol);

ResidualResult difference_equation_residual(const HGParams& p, double tol,
                                            const std::optional<CocycleElement>& phi_tilde = std::nullopt);

struct HeineResult {
    ResidualResult r1, r2, r3;
};
HeineResult heine_residuals(const HGParams& p, double tol,
                            const std::optional<CocycleElement>& phi_tilde = std::nullopt);

ResidualResult connection_residual(const HGParams& p, double tol);

// The two Q-side elements whose sum is 1:
// (A-C)(1-BT)/((A-B)(1-CT)) and (B-C)(1-AT)/((B-A)(1-CT)).
std::pair<CocycleElement, CocycleElement> connection_split(const HGParams& p);

cplx phi_terminating(int n, cplx beta, cplx gamma, cplx x, const ModulusParameters& mod);

// Residues at z = -alpha-k (k = 0..n) in closed form plus the remaining
// integral on a line left of them.
PsiValue psi_residue_corrected(int n, const HGParams& p, double tol);

}  // namespace qone
