#pragma once

#include <optional>
#include <vector>

#include "qone/modulus.hpp"

namespace qone {

// <x> = exp((pi i/2)((1+w)x - w x^2)) S2(x | 1, 1/w).
//
// |Im x| >= series_height: the product expansion in u = e^{2 pi i w x},
// v = e^{2 pi i x} (upper half plane) and reflection (lower half plane).
// Otherwise the argument is shifted into the middle of the strip
// 0 < Re x < 1 + 1/w and log S2 is integrated.
class AngleEvaluator {
public:
    explicit AngleEvaluator(const ModulusParameters& mod);

    // Cached per omega; safe to call from several threads.
    static const AngleEvaluator& shared(const ModulusParameters& mod);

    const ModulusParameters& modulus() const { return mod_; }
    double strip_lo() const { return 0.0; }
    double strip_hi() const { return mod_.Omega(); }
    double series_height() const { return y0_; }
    double lattice_tol() const { return 1e-9; }

    // log <x> on an arbitrary branch; real part -inf at zeros. Throws
    // PoleError on the pole lattice.
    cplx log_angle(cplx x) const;
    cplx angle(cplx x) const;
    cplx log_sigma(cplx x) const;
    cplx sigma(cplx x) const;

    // Individual routes, exposed for cross-checks.
    cplx log_angle_series(cplx x) const;  // requires Im x > 0
    cplx log_angle_strip(cplx x) const;   // requires 0 < Re x < 1 + 1/w

private:
    cplx log_s2_band(cplx x) const;

    ModulusParameters mod_;
    double y0_;
    cplx series_const_;
    std::vector<cplx> qcoef_, Qcoef_;  // 1/(k(q^k-1)), 1/(k(Q^k-1))
    double t1_;
    std::vector<double> small_t_;      // series part on [0, t1]
    std::vector<double> nodes_, weights_;
};

enum class LatticeKind { regular, zero, pole };

struct LatticeClassification {
    LatticeKind kind = LatticeKind::regular;
    std::optional<LatticePoint> point;
    double distance = 0;
};

LatticeClassification classify_lattice(const ModulusParameters& mod, cplx x, double tol = 1e-9);

cplx sigma(const ModulusParameters& mod, cplx x);
cplx angle(const ModulusParameters& mod, cplx x);
cplx log_angle(const ModulusParameters& mod, cplx x);

// Residue of 1/<w> at w = -m - n/w.
cplx residue_inverse_angle(const ModulusParameters& mod, int m, int n);

}  // namespace qone
