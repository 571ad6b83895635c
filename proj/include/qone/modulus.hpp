#pragma once

#include <complex>
#include <span>
#include <utility>

namespace qone {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct ModulusParameters {
    double omega = 0;
    cplx q;     // e^{2 pi i omega}
    cplx Qbig;  // e^{2 pi i / omega}
    bool rational_proximity_warning = false;
    int near_p = 0, near_s = 0;  // closest small rational when warned

    double Omega() const { return 1.0 + 1.0 / omega; }
};

ModulusParameters make_modulus(double omega);

// e^{2 pi i w} with the integer part of Re w removed first.
cplx expi2pi(cplx w);
// 1 - e^{2 pi i w}, accurate near the zeros w in Z.
cplx one_minus_expi2pi(cplx w);
// log(1 - e^{2 pi i w}) on some branch, finite for large |Im w|.
cplx log_one_minus_expi2pi(cplx w);

cplx torus_q(const ModulusParameters& mod, cplx gamma);
cplx torus_Q(const ModulusParameters& mod, cplx gamma);

cplx poch(cplx x, cplx base, int n);

struct LatticePoint {
    int m = 0, n = 0;
    cplx value;
};

LatticePoint lattice_point(const ModulusParameters& mod, int m, int n);

struct Anchor {
    enum class Side { left, right };
    cplx value;
    Side side;
};

// (left_max_re, right_min_re); an empty side gives -inf / +inf.
std::pair<double, double> lattice_extrema(std::span<const Anchor> anchors);

}  // namespace qone
