#pragma once

#include <cmath>
#include <random>

#include "qone/modulus.hpp"

namespace qt {

using qone::cplx;

inline const double kW = 1 / std::sqrt(2.0);

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double operator()(double a, double b) { return a + (b - a) * double(g() >> 11) * 0x1p-53; }
    cplx unit_disc_ring(double r0, double r1) { return std::polar((*this)(r0, r1), (*this)(0, 2 * qone::kPi)); }
};

}  // namespace qt
