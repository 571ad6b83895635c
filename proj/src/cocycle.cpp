#include "qone/cocycle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qone/doublesine.hpp"
#include "qone/errors.hpp"

namespace qone {

namespace {

// Argument w of e^{2 pi i w} for exponent E.
cplx torus_arg(const ModulusParameters& mod, Variable side, cplx E) {
    return side == Variable::q_side ? mod.omega * E : E;
}

cplx root_value(const ModulusParameters& mod, Variable side, cplx E) {
    return expi2pi(torus_arg(mod, side, E));
}

bool same_factor(const ModulusParameters& mod, Variable side, cplx a, cplx b) {
    cplx d = torus_arg(mod, side, a - b);
    return std::abs(d.imag()) < 1e-11 && std::abs(d.real() - std::round(d.real())) < 1e-11;
}

// Period shift of the variable: q^chi or Q^chi as an argument of e^{2 pi i .}.
double shift_arg(const ModulusParameters& mod, Variable side, int chi) {
    return side == Variable::q_side ? chi * mod.omega : chi / mod.omega;
}

cplx shift_exponent(const ModulusParameters& mod, Variable side, int chi) {
    return side == Variable::q_side ? cplx(chi, 0) : cplx(chi / mod.omega, 0);
}

using Laurent = std::map<int, cplx>;

Laurent multiply(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) out[i + j] += x * y;
    return out;
}

Laurent times_root(const Laurent& a, cplx r) {
    Laurent out;
    for (auto& [k, c] : a) {
        out[k] += c;
        out[k + 1] -= r * c;
    }
    return out;
}

void prune(Laurent& a) {
    double mx = 0;
    for (auto& [k, c] : a) mx = std::max(mx, std::abs(c));
    for (auto it = a.begin(); it != a.end();) {
        if (std::abs(it->second) <= 1e-15 * mx || it->second == cplx(0))
            it = a.erase(it);
        else
            ++it;
    }
}

// Cancel numerator root factors against equal denominator factors.
void cancel_roots(CocycleElement& e, const ModulusParameters& mod) {
    for (std::size_t i = 0; i < e.num_roots.size();) {
        bool hit = false;
        for (std::size_t j = 0; j < e.denom.size(); ++j) {
            if (same_factor(mod, e.side, e.num_roots[i], e.denom[j])) {
                e.denom.erase(e.denom.begin() + j);
                e.num_roots.erase(e.num_roots.begin() + i);
                hit = true;
                break;
            }
        }
        if (!hit) ++i;
    }
}

// Divide out denominator factors whose root zeroes the (expanded) numerator.
void reduce(CocycleElement& e, const ModulusParameters& mod) {
    for (std::size_t j = 0; j < e.denom.size();) {
        if (e.numerator.empty()) break;
        const cplx r = root_value(mod, e.side, e.denom[j]);
        const cplx t0 = 1.0 / r;
        cplx val = 0;
        double mag = 0;
        for (auto& [k, c] : e.numerator) {
            cplx p = std::pow(t0, k);
            val += c * p;
            mag += std::abs(c * p);
        }
        if (std::abs(val) > 1e-11 * mag) {
            ++j;
            continue;
        }
        const int kmin = e.numerator.begin()->first, kmax = e.numerator.rbegin()->first;
        Laurent out;
        cplx prev = 0;
        for (int k = kmin; k < kmax; ++k) {
            auto it = e.numerator.find(k);
            cplx p = it == e.numerator.end() ? cplx(0) : it->second;
            cplx qk = p + r * prev;
            out[k] = qk;
            prev = qk;
        }
        e.numerator = std::move(out);
        prune(e.numerator);
        e.denom.erase(e.denom.begin() + j);
    }
}

}  // namespace

std::vector<std::pair<int, int>> lattice_collisions(const JordanPochhammerWeight& jp, double tol) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t j = 0; j < jp.gammas.size(); ++j)
        for (std::size_t k = 0; k < jp.gamma_primes.size(); ++k) {
            auto cls = classify_lattice(jp.mod, jp.gammas[j] - jp.gamma_primes[k], tol);
            if (cls.kind != LatticeKind::regular) out.emplace_back(int(j), int(k));
        }
    return out;
}

CocycleElement CocycleElement::constant(Variable side, cplx c) {
    CocycleElement e;
    e.side = side;
    if (c != cplx(0)) e.numerator[0] = c;
    return e;
}

CocycleElement CocycleElement::monomial(Variable side, int k, cplx c) {
    CocycleElement e;
    e.side = side;
    if (c != cplx(0)) e.numerator[k] = c;
    return e;
}

CocycleElement CocycleElement::from_blocks(const ModulusParameters& mod, Variable side, std::map<int, cplx> numerator,
                                           const std::vector<DenomBlock>& blocks) {
    CocycleElement e;
    e.side = side;
    e.numerator = std::move(numerator);
    const double unit = side == Variable::q_side ? 1.0 : 1.0 / mod.omega;
    for (const auto& b : blocks) {
        if (b.ell < 0) throw DomainError("from_blocks: negative block length");
        for (int i = 0; i < b.ell; ++i) {
            int step = b.orientation == DenomBlock::Orientation::left ? -b.ell + i : i;
            e.denom.push_back(b.anchor + step * unit);
        }
    }
    return e;
}

CocycleElement CocycleElement::basis(Variable side, cplx anchor) {
    CocycleElement e = constant(side, 1);
    e.denom.push_back(anchor);
    return e;
}

bool CocycleElement::is_zero() const {
    for (auto& [k, c] : numerator)
        if (c != cplx(0)) return false;
    return true;
}

std::map<int, cplx> CocycleElement::expanded_numerator(const ModulusParameters& mod) const {
    Laurent out = numerator;
    for (cplx E : num_roots) out = times_root(out, root_value(mod, side, E));
    prune(out);
    return out;
}

cplx CocycleElement::log_eval(const ModulusParameters& mod, cplx z, const std::vector<bool>* skip) const {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (is_zero()) return cplx(kNegInf, 0);
    const cplx lt = cplx(0, 2 * kPi) * (side == Variable::q_side ? mod.omega * z : z);
    const int kmin = numerator.begin()->first, kmax = numerator.rbegin()->first;
    cplx acc = 0, out;
    if (lt.real() <= 0) {
        const cplx t = std::exp(lt);
        for (int k = kmax; k >= kmin; --k) {
            auto it = numerator.find(k);
            acc = acc * t + (it == numerator.end() ? cplx(0) : it->second);
        }
        out = double(kmin) * lt + std::log(acc);
    } else {
        const cplx u = std::exp(-lt);
        for (int k = kmin; k <= kmax; ++k) {
            auto it = numerator.find(k);
            acc = acc * u + (it == numerator.end() ? cplx(0) : it->second);
        }
        out = double(kmax) * lt + std::log(acc);
    }
    for (cplx E : num_roots) out += log_one_minus_expi2pi(torus_arg(mod, side, E + z));
    for (std::size_t j = 0; j < denom.size(); ++j) {
        if (skip && (*skip)[j]) continue;
        cplx l = log_one_minus_expi2pi(torus_arg(mod, side, denom[j] + z));
        if (!(l.real() > -700)) throw PoleError("cocycle element: denominator factor " + std::to_string(j) +
                                                    " vanishes", int(j));
        out -= l;
    }
    return out;
}

cplx CocycleElement::eval(const ModulusParameters& mod, cplx z) const {
    cplx l = log_eval(mod, z);
    if (std::isinf(l.real()) && l.real() < 0) return 0;
    return std::exp(l);
}

cplx CocycleElement::eval_variable(const ModulusParameters& mod, cplx t) const {
    cplx v = 0;
    for (auto& [k, c] : numerator) v += c * std::pow(t, k);
    for (cplx E : num_roots) v *= 1.0 - root_value(mod, side, E) * t;
    for (std::size_t j = 0; j < denom.size(); ++j) {
        cplx f = 1.0 - root_value(mod, side, denom[j]) * t;
        if (f == cplx(0)) throw PoleError("cocycle element: denominator factor vanishes", int(j));
        v /= f;
    }
    return v;
}

CocycleElement CocycleElement::shifted(const ModulusParameters& mod, int chi) const {
    CocycleElement e = *this;
    const double a = shift_arg(mod, side, chi);
    for (auto& [k, c] : e.numerator) c *= expi2pi(a * k);
    const cplx s = shift_exponent(mod, side, chi);
    for (auto& E : e.num_roots) E += s;
    for (auto& E : e.denom) E += s;
    return e;
}

CocycleElement CocycleElement::scaled(cplx c) const {
    CocycleElement e = *this;
    for (auto& [k, v] : e.numerator) v *= c;
    prune(e.numerator);
    return e;
}

CocycleElement CocycleElement::product(const CocycleElement& o, const ModulusParameters& mod) const {
    if (o.side != side) throw DomainError("cocycle element: product of elements on different sides");
    CocycleElement e;
    e.side = side;
    e.numerator = multiply(numerator, o.numerator);
    prune(e.numerator);
    e.num_roots = num_roots;
    e.num_roots.insert(e.num_roots.end(), o.num_roots.begin(), o.num_roots.end());
    e.denom = denom;
    e.denom.insert(e.denom.end(), o.denom.begin(), o.denom.end());
    cancel_roots(e, mod);
    return e;
}

CocycleElement CocycleElement::sum(const CocycleElement& o, const ModulusParameters& mod) const {
    if (o.side != side) throw DomainError("cocycle element: sum of elements on different sides");
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    std::vector<bool> used(denom.size(), false);
    std::vector<cplx> common = denom, missing_here;
    for (cplx d : o.denom) {
        bool hit = false;
        for (std::size_t j = 0; j < denom.size(); ++j)
            if (!used[j] && same_factor(mod, side, d, denom[j])) {
                used[j] = hit = true;
                break;
            }
        if (!hit) {
            common.push_back(d);
            missing_here.push_back(d);
        }
    }
    Laurent a = expanded_numerator(mod), b = o.expanded_numerator(mod);
    for (cplx d : missing_here) a = times_root(a, root_value(mod, side, d));
    for (std::size_t j = 0; j < denom.size(); ++j)
        if (!used[j]) b = times_root(b, root_value(mod, side, denom[j]));
    for (auto& [k, c] : b) a[k] += c;
    prune(a);
    CocycleElement e;
    e.side = side;
    e.numerator = std::move(a);
    e.denom = std::move(common);
    reduce(e, mod);
    return e;
}

CocycleElement CocycleElement::difference(const CocycleElement& o, const ModulusParameters& mod) const {
    return sum(o.scaled(-1), mod);
}

cplx eval_element(const CocycleElement& e, const ModulusParameters& mod, cplx z) { return e.eval(mod, z); }

CocycleElement CocycleFactorization::element() const {
    CocycleElement e = CocycleElement::constant(side, prefactor);
    e.num_roots = plus_roots;
    e.denom = minus_roots;
    return e;
}

CocycleElement CocycleFactorization::plus() const {
    CocycleElement e = CocycleElement::constant(side, 1);
    e.num_roots = plus_roots;
    return e;
}

CocycleElement CocycleFactorization::minus() const {
    CocycleElement e = CocycleElement::constant(side, 1);
    e.num_roots = minus_roots;
    return e;
}

namespace {

CocycleFactorization factorize(const JordanPochhammerWeight& jp, int chi, Variable side) {
    CocycleFactorization f;
    f.side = side;
    const double unit = side == Variable::q_side ? 1.0 : 1.0 / jp.mod.omega;
    // t^alpha contributes e^{2 pi i w alpha chi} (q-side) or e^{2 pi i alpha chi} (Q-side).
    f.prefactor = side == Variable::q_side ? expi2pi(jp.mod.omega * jp.alpha * double(chi))
                                           : expi2pi(jp.alpha * double(chi));
    if (chi > 0) {
        for (int i = 0; i < chi; ++i) {
            for (cplx g : jp.gammas) f.plus_roots.push_back(g + i * unit);
            for (cplx g : jp.gamma_primes) f.minus_roots.push_back(g + i * unit);
        }
    } else if (chi < 0) {
        for (int i = 1; i <= -chi; ++i) {
            for (cplx g : jp.gamma_primes) f.plus_roots.push_back(g - i * unit);
            for (cplx g : jp.gammas) f.minus_roots.push_back(g - i * unit);
        }
    }
    for (cplx a : f.plus_roots)
        for (cplx b : f.minus_roots)
            if (same_factor(jp.mod, side, a, b)) f.shared_root_warning = true;
    return f;
}

}  // namespace

CocycleFactorization b_chi(const JordanPochhammerWeight& jp, int chi) { return factorize(jp, chi, Variable::q_side); }

CocycleFactorization b_tilde_chi(const JordanPochhammerWeight& jp, int chi) {
    return factorize(jp, chi, Variable::Q_side);
}

CocycleElement coboundary_generator(const CocycleElement& psi, const JordanPochhammerWeight& jp, int chi) {
    const auto b = psi.side == Variable::q_side ? b_chi(jp, chi) : b_tilde_chi(jp, chi);
    CocycleElement moved = b.element().product(psi.shifted(jp.mod, chi), jp.mod);
    return psi.difference(moved, jp.mod);
}

cplx partial_fraction_residual(cplx A, cplx B, cplx C, cplx T) {
    const double scale = std::abs(A) + std::abs(B);
    if (std::abs(A - B) <= 1e-14 * scale) throw DegenerateInputError("partial_fraction: A = B");
    if (std::abs(1.0 - C * T) <= 1e-14) throw DegenerateInputError("partial_fraction: C T = 1");
    cplx first = (A - C) * (1.0 - B * T) / ((A - B) * (1.0 - C * T));
    cplx second = (B - C) * (1.0 - A * T) / ((B - A) * (1.0 - C * T));
    return first + second - 1.0;
}

BasisElements basis_elements(const JordanPochhammerWeight& jp) {
    if (jp.gammas.size() != jp.gamma_primes.size() || jp.gammas.empty())
        throw DomainError("basis_elements: need n >= 1 with equal-length gamma lists");
    BasisElements out;
    for (cplx g : jp.gamma_primes) {
        out.q_side.push_back(CocycleElement::basis(Variable::q_side, g));
        out.Q_side.push_back(CocycleElement::basis(Variable::Q_side, g));
    }
    return out;
}

}  // namespace qone
