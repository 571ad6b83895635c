#include "qone/modulus.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qone/errors.hpp"

namespace qone {

ModulusParameters make_modulus(double omega) {
    if (!std::isfinite(omega) || omega <= 0)
        throw DomainError("omega must be positive and finite, got " + std::to_string(omega));
    ModulusParameters mod;
    mod.omega = omega;
    mod.q = expi2pi(omega);
    mod.Qbig = expi2pi(1.0 / omega);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= 50; ++s) {
        double p = std::round(omega * s);
        double d = std::abs(omega - p / s);
        if (d < 1e-6 && d < best) {
            best = d;
            mod.rational_proximity_warning = true;
            mod.near_p = static_cast<int>(p);
            mod.near_s = s;
        }
    }
    return mod;
}

cplx expi2pi(cplx w) {
    double r = w.real() - std::round(w.real());
    return std::exp(cplx(-2 * kPi * w.imag(), 2 * kPi * r));
}

cplx one_minus_expi2pi(cplx w) {
    // 1 - e^{2 pi i w} = -2i e^{pi i r} sin(pi r) with r = w - round(Re w);
    // the two signs (-1)^n from the shift cancel.
    if (std::abs(w.imag()) > 1) return 1.0 - expi2pi(w);
    cplx r(w.real() - std::round(w.real()), w.imag());
    cplx e = std::exp(cplx(-kPi * r.imag(), kPi * r.real()));
    return cplx(0, -2) * e * std::sin(kPi * r);
}

cplx log_one_minus_expi2pi(cplx w) {
    if (w.imag() >= 0) return std::log(one_minus_expi2pi(w));
    // |e^{2 pi i w}| > 1: factor it out.
    double n = std::round(w.real());
    cplx r(w.real() - n, w.imag());
    return cplx(0, 2 * kPi) * r + std::log(-one_minus_expi2pi(-r));
}

cplx torus_q(const ModulusParameters& mod, cplx gamma) { return expi2pi(mod.omega * gamma); }

cplx torus_Q(const ModulusParameters&, cplx gamma) { return expi2pi(gamma); }

cplx poch(cplx x, cplx base, int n) {
    cplx acc = 1;
    if (n >= 0) {
        cplx b = 1;
        for (int j = 0; j < n; ++j) {
            acc *= 1.0 - x * b;
            b *= base;
        }
        return acc;
    }
    cplx inv = 1.0 / base, b = inv;
    for (int j = 1; j <= -n; ++j) {
        cplx f = 1.0 - x * b;
        if (std::abs(f) == 0) throw PoleError("poch: vanishing factor at j=" + std::to_string(j), j);
        acc *= f;
        b *= inv;
    }
    return 1.0 / acc;
}

LatticePoint lattice_point(const ModulusParameters& mod, int m, int n) {
    return {m, n, cplx(m + n * (1.0 / mod.omega), 0)};
}

std::pair<double, double> lattice_extrema(std::span<const Anchor> anchors) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& a : anchors) {
        if (a.side == Anchor::Side::left)
            lo = std::max(lo, a.value.real());
        else
            hi = std::min(hi, a.value.real());
    }
    return {lo, hi};
}

}  // namespace qone
