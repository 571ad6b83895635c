#pragma once

#include <functional>

#include "qone/modulus.hpp"

namespace qone {

// Vertical line Re z = rho, traversed from -i inf to +i inf.
struct ContourSpec {
    double rho = 0;
    double y_max = 8;        // initial half-height; extended while the tail matters
    double panel_tol = 0;    // tail cut-off relative to the scale; 0 follows the call's tol
    int max_panels = 6000;
    double y_max_cap = 600;
    int refine = 0;          // split every final panel into 2^refine pieces
};

struct QuadratureResult {
    cplx value;
    double abs_error_estimate = 0;
    int panels_used = 0;
    double truncation_bound = 0;
    bool converged = false;
    double scale = 0;        // integral of |f| over the line
    double y_lo = 0, y_hi = 0;
};

using ZFunction = std::function<cplx(cplx)>;

// Settings that new pairing problems start from (rho is ignored).
ContourSpec default_contour_spec();
void set_default_contour_spec(const ContourSpec& spec);

double find_separating_offset(double left_max_re, double right_min_re);

// Global adaptive Gauss-Kronrod (21 point) on z = rho + i y, including the
// factor dz = i dy. Converged means error + tail <= tol * scale.
QuadratureResult integrate_vertical(const ZFunction& f, const ContourSpec& spec, double tol);

// 2 pi i * regular_part(z0) * residue.
cplx residue_simple(const ZFunction& regular_part, cplx residue_of_singular_factor, cplx z0);

// |I(spec.rho) - I(rho2)|.
double offset_independence_check(const ZFunction& f, const ContourSpec& spec, double rho2, double tol);

// Sum in a fixed binary tree; the result depends only on the order of xs.
cplx pairwise_sum(const cplx* xs, std::size_t n);

}  // namespace qone
