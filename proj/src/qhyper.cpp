#include "qone/qhyper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/parallel.hpp"

namespace qone {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
    return buf;
}

CocycleElement one_q() { return CocycleElement::constant(Variable::q_side, 1); }
CocycleElement one_Q() { return CocycleElement::constant(Variable::Q_side, 1); }

cplx q_pow(const ModulusParameters& mod, cplx e) { return expi2pi(mod.omega * e); }

HGParams shifted(const HGParams& p, double da, double db, double dg, double dx = 0) {
    HGParams s = p;
    s.alpha += da;
    s.beta += db;
    s.gamma += dg;
    s.x += dx;
    return s;
}

ResidualResult assemble(std::vector<cplx> terms) {
    ResidualResult r;
    r.terms = std::move(terms);
    for (auto& t : r.terms) r.scale = std::max(r.scale, std::abs(t));
    r.residual = pairwise_sum(r.terms.data(), r.terms.size());
    return r;
}

}  // namespace

JordanPochhammerWeight psi_weight(const HGParams& p) {
    return {p.mod, p.x, {p.alpha, p.beta}, {cplx(p.mod.Omega(), 0), p.gamma}};
}

cplx psi_prefactor(const HGParams& p) {
    const auto& ev = AngleEvaluator::shared(p.mod);
    cplx lg = ev.log_angle(p.gamma);
    if (lg.real() == kNegInf) throw PoleError("Psi prefactor: <gamma> vanishes");
    cplx l = ev.log_angle(p.alpha) + ev.log_angle(p.beta) - ev.log_angle(1.0) - lg;
    return l.real() == kNegInf ? cplx(0) : std::exp(l);
}

Window psi_window(const HGParams& p, const CocycleElement& phi_tilde) {
    return convergence_window(psi_weight(p), one_q(), phi_tilde);
}

PsiValue psi_with_cocycle(const HGParams& p, const CocycleElement& phi_tilde, double tol) {
    Window win = psi_window(p, phi_tilde);
    if (!win.contains(p.x.real()))
        throw DivergenceError("x = " + fmt(p.x.real()) + " outside convergence window (" + fmt(win.lower) + ", " +
                              fmt(win.upper) + ")");
    auto problem = make_pairing_problem(psi_weight(p), one_q(), phi_tilde);
    PsiValue out;
    out.quad = pair(problem, tol);
    out.value = psi_prefactor(p) * out.quad.value;
    return out;
}

PsiValue psi(const HGParams& p, double tol) { return psi_with_cocycle(p, one_Q(), tol); }

PsiValue psi_auto(const HGParams& p, const CocycleElement& phi_tilde, double tol) {
    Window win = psi_window(p, phi_tilde);
    if (!win.contains(p.x.real()))
        throw DivergenceError("x = " + fmt(p.x.real()) + " outside convergence window (" + fmt(win.lower) + ", " +
                              fmt(win.upper) + ")");
    const bool trivial = phi_tilde.denom.empty() && phi_tilde.num_roots.empty() && phi_tilde.numerator.size() == 1 &&
                         phi_tilde.numerator.count(0);
    const double nr = -p.alpha.real();
    const long n = std::lround(nr);
    if (trivial && n >= 0 && std::abs(p.alpha + double(n)) < 1e-6) {
        PsiValue v = psi_residue_corrected(int(n), p, tol);
        v.value *= phi_tilde.numerator.at(0);
        return v;
    }
    auto jp = psi_weight(p);
    auto L = classify_factors(jp, one_q(), phi_tilde);
    if (L.left_max < L.right_min) return psi_with_cocycle(p, phi_tilde, tol);
    auto rc = pair_residue_corrected(jp, one_q(), phi_tilde, tol);
    PsiValue out;
    out.quad = rc.line;
    out.value = psi_prefactor(p) * rc.value;
    out.residue_corrected = true;
    return out;
}

ResidualResult difference_equation_residual(const HGParams& p, double tol,
                                            const std::optional<CocycleElement>& phi_tilde) {
    const CocycleElement pt = phi_tilde ? *phi_tilde : one_Q();
    Window win = psi_window(p, pt);
    for (int k = 0; k <= 2; ++k)
        if (!win.contains(p.x.real() + k))
            throw DivergenceError("difference equation: x + " + std::to_string(k) + " = " + fmt(p.x.real() + k) +
                                  " outside convergence window (" + fmt(win.lower) + ", " + fmt(win.upper) + ")");
    auto v = parallel_map(3, [&](std::size_t k) { return psi_auto(shifted(p, 0, 0, 0, double(k)), pt, tol).value; });
    const auto& mod = p.mod;
    const cplx qx = q_pow(mod, p.x), qg = q_pow(mod, p.gamma - 1.0), qa = q_pow(mod, p.alpha),
               qb = q_pow(mod, p.beta);
    return assemble({v[0], -(1.0 + qg) * v[1], qg * v[2], -qx * v[0], qx * (qa + qb) * v[1], -qx * qa * qb * v[2]});
}

HeineResult heine_residuals(const HGParams& p, double tol, const std::optional<CocycleElement>& phi_tilde) {
    const CocycleElement pt = phi_tilde ? *phi_tilde : one_Q();
    const auto& mod = p.mod;
    const cplx q = mod.q, a = q_pow(mod, p.alpha), b = q_pow(mod, p.beta), c = q_pow(mod, p.gamma);
    const cplx qx = q_pow(mod, p.x);
    if (std::abs(q - c) < 1e-14) throw PoleError("Heine r1: coefficient pole, q - c vanishes (gamma = 1)");
    if (std::abs(1.0 - c) < 1e-14) throw PoleError("Heine: coefficient pole, 1 - c vanishes");

    struct Shift {
        const char* name;
        double da, db, dg;
    };
    const Shift shifts[] = {{"Psi(alpha, beta, gamma)", 0, 0, 0},
                            {"Psi(alpha, beta, gamma-1)", 0, 0, -1},
                            {"Psi(alpha+1, beta+1, gamma+1)", 1, 1, 1},
                            {"Psi(alpha+1, beta, gamma)", 1, 0, 0},
                            {"Psi(alpha+1, beta-1, gamma)", 1, -1, 0},
                            {"Psi(alpha+1, beta, gamma+1)", 1, 0, 1}};
    auto v = parallel_map(6, [&](std::size_t i) {
        try {
            return psi_auto(shifted(p, shifts[i].da, shifts[i].db, shifts[i].dg), pt, tol).value;
        } catch (const Error& e) {
            throw DivergenceError(std::string("Heine: ") + shifts[i].name + " not evaluable: " + e.what());
        }
    });
    HeineResult r;
    r.r1 = assemble({v[1], -v[0], -qx * c * (1.0 - a) * (1.0 - b) / ((q - c) * (1.0 - c)) * v[2]});
    r.r2 = assemble({v[3], -v[0], -qx * a * (1.0 - b) / (1.0 - c) * v[2]});
    r.r3 = assemble({v[4], -v[0], -qx / q * (a * q - b) / (1.0 - c) * v[5]});
    return r;
}

std::pair<CocycleElement, CocycleElement> connection_split(const HGParams& p) {
    const cplx A = expi2pi(p.alpha), B = expi2pi(p.beta), C = expi2pi(p.gamma);
    if (std::abs(A - B) < 1e-14) throw DegenerateInputError("connection split: A = B");
    CocycleElement e1 = CocycleElement::constant(Variable::Q_side, (A - C) / (A - B));
    e1.num_roots = {p.beta};
    e1.denom = {p.gamma};
    CocycleElement e2 = CocycleElement::constant(Variable::Q_side, (B - C) / (B - A));
    e2.num_roots = {p.alpha};
    e2.denom = {p.gamma};
    return {e1, e2};
}

ResidualResult connection_residual(const HGParams& p, double tol) {
    const auto& ev = AngleEvaluator::shared(p.mod);
    const cplx a = p.alpha, b = p.beta, g = p.gamma, x = p.x;
    auto coefficient = [&](cplx u, cplx v) {
        // <v><g-u> / (<g><v-u>) * sigma(x+u)/sigma(x)
        cplx den = ev.log_angle(g) + ev.log_angle(v - u);
        if (den.real() == kNegInf) throw PoleError("connection formula: coefficient pole (<gamma> or <beta-alpha> = 0)");
        cplx num = ev.log_angle(v) + ev.log_angle(g - u);
        if (num.real() == kNegInf) return cplx(0);
        return std::exp(num - den + ev.log_sigma(x + u) - ev.log_sigma(x));
    };
    const cplx c1 = coefficient(a, b), c2 = coefficient(b, a);
    const cplx xp = p.mod.Omega() + g - a - b - x;
    HGParams p1{p.mod, a, 1.0 + a - g, 1.0 + a - b, xp};
    HGParams p2{p.mod, b, 1.0 + b - g, 1.0 + b - a, xp};
    const HGParams sets[] = {p, p1, p2};
    const char* names[] = {"Psi(alpha, beta, gamma; x)", "Psi(alpha, 1+alpha-gamma, 1+alpha-beta; x')",
                           "Psi(beta, 1+beta-gamma, 1+beta-alpha; x')"};
    auto v = parallel_map(3, [&](std::size_t i) {
        try {
            return psi_auto(sets[i], one_Q(), tol).value;
        } catch (const Error& e) {
            throw DivergenceError(std::string("connection formula: ") + names[i] + " not evaluable: " + e.what());
        }
    });
    return assemble({v[0], -c1 * v[1], -c2 * v[2]});
}

cplx phi_terminating(int n, cplx beta, cplx gamma, cplx x, const ModulusParameters& mod) {
    if (n < 0) throw DomainError("phi_terminating: n must be non-negative");
    const double w = mod.omega;
    cplx sum = 1, term = 1;
    const cplx qx = expi2pi(w * x);
    for (int k = 1; k <= n; ++k) {
        const int j = k - 1;
        cplx d1 = one_minus_expi2pi(w * double(j + 1));
        cplx d2 = one_minus_expi2pi(w * (double(j) + gamma));
        if (d1 == cplx(0) || d2 == cplx(0))
            throw PoleError("phi_terminating: vanishing denominator at j = " + std::to_string(j), j);
        term *= one_minus_expi2pi(w * double(j - n)) * one_minus_expi2pi(w * (double(j) + beta)) / (d1 * d2) * qx;
        sum += term;
    }
    return sum;
}

PsiValue psi_residue_corrected(int n, const HGParams& p, double tol) {
    if (n < 0) throw DomainError("psi_residue_corrected: n must be non-negative");
    if (std::abs(p.alpha.real() + n) >= 0.5)
        throw DomainError("psi_residue_corrected: Re alpha must lie within 1/2 of -n");
    const auto& mod = p.mod;
    const auto& ev = AngleEvaluator::shared(mod);
    const double w = mod.omega, iw = 1.0 / w;
    const cplx a = p.alpha, b = p.beta, g = p.gamma, x = p.x;

    // P * 2 pi i res_{z=-alpha-k} with <alpha><1+1/w-alpha-k> written as
    // sigma(alpha) prod_{i=1}^k (1 - q^{1-i}/a).
    const cplx base = std::exp(ev.log_angle(b) - ev.log_angle(g) + ev.log_sigma(a));
    std::vector<cplx> cluster;
    cplx prod = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) prod *= one_minus_expi2pi(w * (1.0 - double(k) - a)) / one_minus_expi2pi(-w * double(k));
        cplx lb = ev.log_angle(b - a - double(k));
        if (lb.real() == kNegInf) throw PoleError("psi_residue_corrected: <beta - alpha - k> vanishes", k);
        cplx lg = ev.log_angle(g - a - double(k));
        cplx ratio = lg.real() == kNegInf ? cplx(0) : std::exp(lg - lb);
        cluster.push_back(base * prod * ratio * expi2pi(-w * x * (a + double(k))));
    }
    PsiValue out;
    out.residue_corrected = true;
    out.value = pairwise_sum(cluster.data(), cluster.size());

    const cplx P = psi_prefactor(p);
    if (P == cplx(0)) {
        out.quad.converged = true;
        return out;
    }
    // Line left of the cluster and of both right lattices; widest gap among
    // the remaining left poles in (B - 1, B).
    const double B = std::min({0.0, mod.Omega() - g.real(), -a.real() - n});
    std::vector<double> xs{B - 1, B};
    for (cplx anchor : {a, b}) {
        const double top = -anchor.real();
        for (int nn = 0; top - nn * iw > B - 1; ++nn)
            for (int m = 0; top - m - nn * iw > B - 1; ++m) {
                double r = top - m - nn * iw;
                if (r < B) xs.push_back(r);
            }
    }
    std::sort(xs.begin(), xs.end());
    double best = -1, rho = B - 0.5;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i + 1] - xs[i] > best) {
            best = xs[i + 1] - xs[i];
            rho = 0.5 * (xs[i] + xs[i + 1]);
        }
    ResidueOptions opts;
    opts.rho = rho;
    for (int k = 0; k <= n; ++k) opts.skip_left.emplace_back(0, k, 0);
    auto rc = pair_residue_corrected(psi_weight(p), one_q(), one_Q(), tol, opts);
    out.quad = rc.line;
    out.value += P * rc.value;
    return out;
}

}  // namespace qone
