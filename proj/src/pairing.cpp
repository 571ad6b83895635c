#include "qone/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>

#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/parallel.hpp"

namespace qone {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kLatticeSearch = 64;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
    return buf;
}

bool near_int(double v, long& out) {
    double r = std::round(v);
    if (std::abs(v - r) > 1e-9) return false;
    out = static_cast<long>(r);
    return true;
}

// Writes d = p + s/w (q-side) or d = s + p/w (Q-side) with integer s, p and
// returns p. Among several matches the one with the smallest |s| wins.
std::optional<long> lattice_step(double w, Variable side, cplx d) {
    if (std::abs(d.imag()) > 1e-9) return std::nullopt;
    for (int a = 0; a <= kLatticeSearch; ++a)
        for (int s : {a, -a}) {
            long p;
            double v = side == Variable::q_side ? d.real() - s / w : (d.real() - s) * w;
            if (near_int(v, p)) return p;
            if (a == 0) break;
        }
    return std::nullopt;
}

void assign(const JordanPochhammerWeight& jp, const CocycleElement& e, std::vector<int>& owner,
            std::vector<std::vector<long>>& steps, const char* name) {
    const int nl = int(jp.gammas.size());
    owner.assign(e.denom.size(), -1);
    for (std::size_t i = 0; i < e.denom.size(); ++i) {
        const cplx E = e.denom[i];
        for (int j = 0; j < nl && owner[i] < 0; ++j) {
            auto p = lattice_step(jp.mod.omega, e.side, E - jp.gammas[j]);
            if (p && *p <= -1) {
                owner[i] = j;
                steps[j].push_back(*p);
            }
        }
        for (std::size_t k = 0; k < jp.gamma_primes.size() && owner[i] < 0; ++k) {
            auto p = lattice_step(jp.mod.omega, e.side, E - jp.gamma_primes[k]);
            if (p && *p >= 0) {
                owner[i] = nl + int(k);
                steps[nl + k].push_back(*p);
            }
        }
        if (owner[i] < 0)
            throw DomainError(std::string("denominator factor ") + std::to_string(i) + " of " + name +
                              " is not attached to any gamma_j or gamma'_j (element not in Z)");
    }
}

int block_length(std::vector<long> ps, bool left, const char* name) {
    std::sort(ps.begin(), ps.end());
    const int l = int(ps.size());
    for (int i = 0; i < l; ++i) {
        long want = left ? -l + i : i;
        if (ps[i] != want)
            throw DomainError(std::string("denominator factors of ") + name +
                              " do not form a Pochhammer block (element not in Z)");
    }
    return l;
}

}  // namespace

cplx log_phi_jp(const JordanPochhammerWeight& jp, cplx z) {
    const auto& ev = AngleEvaluator::shared(jp.mod);
    cplx acc = cplx(0, 2 * kPi * jp.mod.omega) * jp.alpha * z;
    for (std::size_t j = 0; j < jp.gammas.size(); ++j) {
        cplx l = ev.log_angle(z + jp.gammas[j]);
        if (l.real() == kNegInf) throw PoleError("Phi: denominator <z + gamma_" + std::to_string(j) + "> vanishes",
                                                 int(j));
        acc -= l;
    }
    for (std::size_t j = 0; j < jp.gamma_primes.size(); ++j) acc += ev.log_angle(z + jp.gamma_primes[j]);
    return acc;
}

cplx phi_jp(const JordanPochhammerWeight& jp, cplx z) {
    cplx l = log_phi_jp(jp, z);
    return l.real() == kNegInf ? cplx(0) : std::exp(l);
}

FactorLayout classify_factors(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                              const CocycleElement& phi_tilde) {
    if (phi.side != Variable::q_side) throw DomainError("phi must be a q-side element");
    if (phi_tilde.side != Variable::Q_side) throw DomainError("phi~ must be a Q-side element");
    const int nl = int(jp.gammas.size()), nr = int(jp.gamma_primes.size());
    const double w = jp.mod.omega;
    FactorLayout L;
    std::vector<std::vector<long>> sq(nl + nr), sQ(nl + nr);
    assign(jp, phi, L.phi_owner, sq, "phi");
    assign(jp, phi_tilde, L.phi_tilde_owner, sQ, "phi~");
    L.left_max = kNegInf;
    L.right_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nl; ++j) {
        L.left_q.push_back(block_length(sq[j], true, "phi"));
        L.left_Q.push_back(block_length(sQ[j], true, "phi~"));
        L.left_shifted.push_back(jp.gammas[j] - double(L.left_q[j]) - L.left_Q[j] / w);
        L.left_max = std::max(L.left_max, -L.left_shifted[j].real());
    }
    for (int k = 0; k < nr; ++k) {
        L.right_q.push_back(block_length(sq[nl + k], false, "phi"));
        L.right_Q.push_back(block_length(sQ[nl + k], false, "phi~"));
        L.right_shifted.push_back(jp.gamma_primes[k] + double(L.right_q[k]) + L.right_Q[k] / w);
        L.right_min = std::min(L.right_min, -L.right_shifted[k].real() + jp.mod.Omega());
    }
    return L;
}

Window convergence_window(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                          const CocycleElement& phi_tilde) {
    const double w = jp.mod.omega;
    auto a = phi.expanded_numerator(jp.mod), b = phi_tilde.expanded_numerator(jp.mod);
    Window win;
    if (a.empty() || b.empty()) {
        win.lower = kNegInf;
        win.upper = std::numeric_limits<double>::infinity();
        return win;
    }
    double top = double(phi.denom.size()) + phi_tilde.denom.size() / w;
    for (cplx g : jp.gamma_primes) top += g.real();
    for (cplx g : jp.gammas) top -= g.real();
    const int mlo = a.begin()->first, mhi = a.rbegin()->first;
    const int nlo = b.begin()->first, nhi = b.rbegin()->first;
    win.lower = -(mlo + nlo / w);
    win.upper = top - (mhi + nhi / w);
    return win;
}

PairingProblem make_pairing_problem(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                                    const CocycleElement& phi_tilde) {
    PairingProblem p{jp, phi, phi_tilde, {}, classify_factors(jp, phi, phi_tilde)};
    Window win = convergence_window(jp, phi, phi_tilde);
    if (!win.contains(jp.alpha.real()))
        throw DivergenceError("Re alpha = " + fmt(jp.alpha.real()) + " outside convergence window (" +
                              fmt(win.lower) + ", " + fmt(win.upper) + ")");
    p.contour.rho = find_separating_offset(p.layout.left_max, p.layout.right_min);
    return p;
}

cplx log_integrand(const PairingProblem& p, cplx z, int exclude_group) {
    const auto& ev = AngleEvaluator::shared(p.jp.mod);
    const int nl = int(p.jp.gammas.size());
    cplx acc = cplx(0, 2 * kPi * p.jp.mod.omega) * p.jp.alpha * z;
    for (int j = 0; j < nl; ++j) {
        if (j == exclude_group) continue;
        cplx l = ev.log_angle(z + p.jp.gammas[j]);
        if (l.real() == kNegInf) throw PoleError("integrand: <z + gamma_" + std::to_string(j) + "> vanishes", j);
        acc -= l;
    }
    for (std::size_t k = 0; k < p.jp.gamma_primes.size(); ++k) {
        if (nl + int(k) == exclude_group) continue;
        acc += ev.log_angle(z + p.jp.gamma_primes[k]);
    }
    std::vector<bool> skip1(p.phi.denom.size()), skip2(p.phi_tilde.denom.size());
    for (std::size_t i = 0; i < skip1.size(); ++i) skip1[i] = p.layout.phi_owner[i] == exclude_group;
    for (std::size_t i = 0; i < skip2.size(); ++i) skip2[i] = p.layout.phi_tilde_owner[i] == exclude_group;
    acc += p.phi.log_eval(p.jp.mod, z, &skip1);
    acc += p.phi_tilde.log_eval(p.jp.mod, z, &skip2);
    return acc;
}

namespace {

ZFunction integrand(const PairingProblem& p, int exclude = -1) {
    return [&p, exclude](cplx z) {
        cplx l = log_integrand(p, z, exclude);
        return l.real() == kNegInf ? cplx(0) : std::exp(l);
    };
}

}  // namespace

QuadratureResult pair(const PairingProblem& problem, double tol) {
    if (problem.phi.is_zero() || problem.phi_tilde.is_zero()) {
        QuadratureResult r;
        r.converged = true;
        return r;
    }
    return integrate_vertical(integrand(problem), problem.contour, tol);
}

QuadratureResult pair(const JordanPochhammerWeight& jp, const CocycleElement& phi, const CocycleElement& phi_tilde,
                      double tol) {
    return pair(make_pairing_problem(jp, phi, phi_tilde), tol);
}

ResidueCorrected pair_residue_corrected(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                                        const CocycleElement& phi_tilde, double tol, const ResidueOptions& opts) {
    PairingProblem p{jp, phi, phi_tilde, {}, classify_factors(jp, phi, phi_tilde)};
    Window win = convergence_window(jp, phi, phi_tilde);
    if (!win.contains(jp.alpha.real()))
        throw DivergenceError("Re alpha = " + fmt(jp.alpha.real()) + " outside convergence window (" +
                              fmt(win.lower) + ", " + fmt(win.upper) + ")");
    const double w = jp.mod.omega, iw = 1.0 / w;
    const int nl = int(jp.gammas.size()), nr = int(jp.gamma_primes.size());
    const auto& L = p.layout;

    double rho;
    if (opts.rho) {
        rho = *opts.rho;
    } else {
        // Midpoint of the widest gap between pole real parts around the overlap.
        const double lo = std::min(L.left_max, L.right_min) - 0.5;
        const double hi = std::max(L.left_max, L.right_min) + 0.5;
        std::vector<double> xs{lo, hi};
        for (int j = 0; j < nl; ++j) {
            double base = -L.left_shifted[j].real();
            for (int n = 0; base - n * iw >= lo; ++n)
                for (int m = 0; base - m - n * iw >= lo; ++m)
                    if (base - m - n * iw <= hi) xs.push_back(base - m - n * iw);
        }
        for (int k = 0; k < nr; ++k) {
            double base = -L.right_shifted[k].real();
            for (int n = 1; base + 1 + n * iw <= hi; ++n)
                for (int m = 1; base + m + n * iw <= hi; ++m)
                    if (base + m + n * iw >= lo) xs.push_back(base + m + n * iw);
        }
        std::sort(xs.begin(), xs.end());
        double best = -1;
        rho = 0.5 * (lo + hi);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (xs[i + 1] - xs[i] > best) {
                best = xs[i + 1] - xs[i];
                rho = 0.5 * (xs[i] + xs[i + 1]);
            }
    }
    p.contour.rho = rho;

    std::set<std::tuple<int, int, int>> skip(opts.skip_left.begin(), opts.skip_left.end());
    ResidueCorrected out;
    out.rho = rho;
    std::vector<cplx> terms;
    double res_scale = 0;
    for (int j = 0; j < nl; ++j) {
        cplx base = -L.left_shifted[j];
        for (int n = 0; base.real() - n * iw > rho; ++n)
            for (int m = 0; base.real() - m - n * iw > rho; ++m) {
                if (skip.count({j, m, n})) continue;
                cplx z0 = base - double(m) - n * iw;
                cplx r = residue_simple(integrand(p, j), residue_inverse_angle(jp.mod, m, n), z0);
                terms.push_back(r);
                res_scale += std::abs(r);
                ++out.left_poles;
            }
    }
    for (int k = 0; k < nr; ++k) {
        cplx base = -L.right_shifted[k];
        for (int n = 1; base.real() + 1 + n * iw < rho; ++n)
            for (int m = 1; base.real() + m + n * iw < rho; ++m) {
                cplx w0 = double(m) + n * iw;
                cplx res = -sigma(jp.mod, w0) * residue_inverse_angle(jp.mod, m - 1, n - 1);
                cplx r = residue_simple(integrand(p, nl + k), res, base + w0);
                terms.push_back(-r);
                res_scale += std::abs(r);
                ++out.right_poles;
            }
    }
    out.residues = pairwise_sum(terms.data(), terms.size());
    if (phi.is_zero() || phi_tilde.is_zero()) {
        out.line.converged = true;
    } else {
        out.line = integrate_vertical(integrand(p), p.contour, tol);
    }
    out.value = out.line.value + out.residues;
    out.line.scale = std::max(out.line.scale, res_scale);
    return out;
}

QuadratureResult pair_auto(const JordanPochhammerWeight& jp, const CocycleElement& phi,
                           const CocycleElement& phi_tilde, double tol) {
    auto L = classify_factors(jp, phi, phi_tilde);
    if (L.left_max < L.right_min) return pair(jp, phi, phi_tilde, tol);
    auto rc = pair_residue_corrected(jp, phi, phi_tilde, tol);
    QuadratureResult r = rc.line;
    r.value = rc.value;
    return r;
}

namespace {

cplx det_product(const JordanPochhammerWeight& jp, bool swapped) {
    const auto& mod = jp.mod;
    const std::size_t n = jp.gammas.size();
    if (n != jp.gamma_primes.size() || n == 0) throw DomainError("det_closed_form: need equal-length lists, n >= 1");
    const auto& ev = AngleEvaluator::shared(mod);
    cplx sg = 0, sgp = 0;
    for (std::size_t j = 0; j < n; ++j) {
        sg += jp.gammas[j];
        sgp += jp.gamma_primes[j];
    }
    cplx log_num = double(n) * ev.log_angle(1.0) - cplx(0, 2 * kPi * mod.omega) * jp.alpha * sgp +
                   ev.log_angle(jp.alpha + sg - sgp);
    cplx log_den = ev.log_angle(jp.alpha);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) log_den += ev.log_angle(jp.gammas[j] - jp.gamma_primes[k]);
    if (log_den.real() == kNegInf) throw PoleError("det_closed_form: vanishing angle in the denominator");
    if (log_num.real() == kNegInf) return 0;
    cplx v = std::exp(log_num - log_den);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            cplx d = jp.gamma_primes[j] - jp.gamma_primes[k];
            v *= one_minus_expi2pi(mod.omega * d) * one_minus_expi2pi(d) * (swapped ? ev.sigma(-d) : 1.0 / ev.sigma(d));
        }
    return v;
}

}  // namespace

cplx det_closed_form(const JordanPochhammerWeight& jp) { return det_product(jp, false); }
cplx det_closed_form_sigma_swapped(const JordanPochhammerWeight& jp) { return det_product(jp, true); }

DetResult det_pairing_matrix(const JordanPochhammerWeight& jp, double tol) {
    auto basis = basis_elements(jp);
    const std::size_t n = basis.q_side.size();
    auto entries = parallel_map(n * n, [&](std::size_t idx) {
        return pair_auto(jp, basis.q_side[idx / n], basis.Q_side[idx % n], tol);
    });
    DetResult r;
    r.matrix.resize(n, n);
    for (std::size_t i = 0; i < n * n; ++i) r.matrix(i / n, i % n) = entries[i].value;
    auto lu = r.matrix.partialPivLu();
    r.numeric_det = lu.determinant();
    if (r.numeric_det != cplx(0)) {
        const Eigen::MatrixXcd inv = lu.inverse();
        for (std::size_t i = 0; i < n * n; ++i) {
            const double e = entries[i].abs_error_estimate + entries[i].truncation_bound;
            r.abs_error_estimate += std::abs(r.numeric_det * inv(i % n, i / n)) * e;
        }
    }
    r.closed_form = det_closed_form(jp);
    r.closed_form_sigma_swapped = det_closed_form_sigma_swapped(jp);
    r.scale = std::abs(r.closed_form);
    return r;
}

ResidualResult mellin_sato_residual(const JordanPochhammerWeight& jp, const CocycleElement& phi_tilde, int chi,
                                    double tol) {
    ResidualResult out;
    if (chi == 0) return out;
    const auto b = b_chi(jp, chi);
    auto minus = b.minus().shifted(jp.mod, -chi).expanded_numerator(jp.mod);
    auto plus = b.plus().expanded_numerator(jp.mod);
    std::map<int, cplx> op;
    for (auto& [k, c] : minus) op[k] += c;
    for (auto& [k, c] : plus) op[k] -= b.prefactor * c;
    std::vector<int> ks;
    for (auto& [k, c] : op) ks.push_back(k);
    const auto one = CocycleElement::constant(Variable::q_side, 1);
    auto vals = parallel_map(ks.size(), [&](std::size_t i) {
        JordanPochhammerWeight s = jp;
        s.alpha += double(ks[i]);
        try {
            return pair_auto(s, one, phi_tilde, tol).value;
        } catch (const Error& e) {
            throw DivergenceError("Mellin-Sato: shifted value Psi(alpha + " + std::to_string(ks[i]) +
                                  ") not evaluable: " + e.what());
        }
    });
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const int k = ks[i];
        if (minus.count(k)) {
            out.terms.push_back(minus[k] * vals[i]);
            out.scale = std::max(out.scale, std::abs(out.terms.back()));
        }
        if (plus.count(k)) {
            out.terms.push_back(-b.prefactor * plus[k] * vals[i]);
            out.scale = std::max(out.scale, std::abs(out.terms.back()));
        }
    }
    out.residual = pairwise_sum(out.terms.data(), out.terms.size());
    return out;
}

}  // namespace qone
