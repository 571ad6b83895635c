#include "qone/doublesine.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qone/errors.hpp"

namespace qone {

namespace {

constexpr int kSeriesTerms = 160;
constexpr int kSmallT = 40;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

AngleEvaluator::AngleEvaluator(const ModulusParameters& mod) : mod_(mod) {
    const double w = mod.omega;
    const double mn = std::min(1.0, w);
    y0_ = 1.0 / (2 * kPi * mn);
    series_const_ = cplx(0, kPi * (w + 1 / w + 3) / 12);

    qcoef_.resize(kSeriesTerms + 1);
    Qcoef_.resize(kSeriesTerms + 1);
    for (int k = 1; k <= kSeriesTerms; ++k) {
        qcoef_[k] = 1.0 / (-double(k) * one_minus_expi2pi(k * w));
        Qcoef_[k] = 1.0 / (-double(k) * one_minus_expi2pi(k / w));
    }

    // [0, t1]: f(t) = (A w/2)(R(t^2) - 1)/t^2 with
    // R = [sinh(At)/(At)] / ([sinh t/t][sinh(t/w)/(t/w)]).
    t1_ = 0.4 * kPi * mn;
    const int K = kSmallT;
    std::vector<double> fact(2 * K + 2, 1.0);
    for (int i = 1; i < 2 * K + 2; ++i) fact[i] = fact[i - 1] * i;
    std::vector<double> d(K + 1, 0.0), inv(K + 1, 0.0), c(K + 1, 0.0);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i <= k; ++i)
            d[k] += std::pow(w, -2.0 * (k - i)) / (fact[2 * i + 1] * fact[2 * (k - i) + 1]);
    inv[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) s += d[i] * inv[k - i];
        inv[k] = -s;
    }
    for (int k = 1; k <= K; ++k) c[k] = std::pow(t1_, 2 * k - 1) / (2 * k - 1);
    small_t_.assign(K + 1, 0.0);
    for (int i = 0; i <= K; ++i) {
        double e = 0;
        for (int k = std::max(i, 1); k <= K; ++k) e += inv[k - i] * c[k];
        small_t_[i] = e / fact[2 * i + 1];
    }

    // [t1, T]: Gauss-Legendre panels, weights absorb 1/(t(1-e^{-2t})(1-e^{-2t/w})).
    const double lam = std::max(1.0, 1.0 / w);
    const double h = std::min(1.0, 0.5 * kPi * mn);
    const int panels = static_cast<int>(std::ceil((40.0 / lam) / h));
    using GL = boost::math::quadrature::gauss<double, 12>;
    const auto& xa = GL::abscissa();
    const auto& wa = GL::weights();
    for (int p = 0; p < panels; ++p) {
        double a = t1_ + p * h, mid = a + h / 2, half = h / 2;
        for (std::size_t i = 0; i < xa.size(); ++i) {
            for (int s : {-1, 1}) {
                double t = mid + s * half * xa[i];
                double wt = half * wa[i];
                double den = t * (-std::expm1(-2 * t)) * (-std::expm1(-2 * t / w));
                nodes_.push_back(t);
                weights_.push_back(wt / den);
            }
        }
    }
}

const AngleEvaluator& AngleEvaluator::shared(const ModulusParameters& mod) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<AngleEvaluator>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[mod.omega];
    if (!slot) slot = std::make_unique<AngleEvaluator>(mod);
    return *slot;
}

cplx AngleEvaluator::log_sigma(cplx x) const {
    const double w = mod_.omega;
    return cplx(0, kPi) * ((1 + w) * x - w * x * x);
}

cplx AngleEvaluator::sigma(cplx x) const { return std::exp(log_sigma(x)); }

cplx AngleEvaluator::log_angle_series(cplx x) const {
    const double w = mod_.omega;
    cplx u = expi2pi(w * x), v = expi2pi(x);
    cplx uk = 1, vk = 1, s = series_const_;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        uk *= u;
        vk *= v;
        cplx a = uk * qcoef_[k], b = vk * Qcoef_[k];
        s += a + b;
        if (std::abs(uk) + std::abs(vk) < 1e-19 && std::abs(a) + std::abs(b) < 1e-19) break;
    }
    return s;
}

cplx AngleEvaluator::log_s2_band(cplx x) const {
    const double w = mod_.omega;
    const double Om = mod_.Omega();
    const cplx A = 2.0 * x - Om;
    const cplx A2 = A * A;
    cplx poly = 0;
    for (int i = kSmallT; i >= 0; --i) poly = poly * A2 + small_t_[i];
    cplx s = 0.5 * A * w * poly - 0.5 * A * w / t1_;
    // e^{-2(Om-x)t} - e^{-2xt}; the two exponents share |Im|.
    const double ra = -2 * (Om - x.real()), rb = -2 * x.real(), im = 2 * x.imag();
    double acc_re = 0, acc_im = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double t = nodes_[k];
        const double ea = std::exp(ra * t), eb = std::exp(rb * t);
        const double th = im * t;
        acc_re += weights_[k] * (ea - eb) * std::cos(th);
        acc_im += weights_[k] * (ea + eb) * std::sin(th);
    }
    return s + cplx(acc_re, acc_im);
}

cplx AngleEvaluator::log_angle_strip(cplx x) const {
    const double w = mod_.omega;
    return cplx(0, kPi / 2) * ((1 + w) * x - w * x * x) + log_s2_band(x);
}

cplx AngleEvaluator::log_angle(cplx x) const {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw DomainError("angle: non-finite argument");
    if (std::abs(x.imag()) < 1e-6) {
        auto cls = classify_lattice(mod_, x, lattice_tol());
        if (cls.kind == LatticeKind::zero) return cplx(kNegInf, 0);
        if (cls.kind == LatticeKind::pole)
            throw PoleError("angle: argument on the pole lattice (m,n)=(" + std::to_string(cls.point->m) +
                            "," + std::to_string(cls.point->n) + ")");
    }
    if (x.imag() >= y0_) return log_angle_series(x);
    if (x.imag() <= -y0_) return log_sigma(x) - log_angle_series(mod_.Omega() - x);

    const double w = mod_.omega;
    const double Om = mod_.Omega();
    // Shift by the shorter period into [Om/2 - s/2, Om/2 + s/2].
    const bool unit = w <= 1;
    const double s = unit ? 1.0 : 1.0 / w;
    const double lo = Om / 2 - s / 2, hi = Om / 2 + s / 2;
    auto log_factor = [&](cplx y) { return log_one_minus_expi2pi(unit ? w * y : y); };
    cplx acc = 0;
    while (x.real() < lo) {
        acc += log_factor(x);
        x += s;
    }
    while (x.real() > hi) {
        x -= s;
        acc -= log_factor(x);
    }
    return acc + log_angle_strip(x);
}

cplx AngleEvaluator::angle(cplx x) const {
    cplx l = log_angle(x);
    if (l.real() == kNegInf) return 0;
    return std::exp(l);
}

LatticeClassification classify_lattice(const ModulusParameters& mod, cplx x, double tol) {
    const double w = mod.omega, iw = 1.0 / w;
    const double r = x.real();
    if (std::abs(r) > 1e7) throw DomainError("classify_lattice: argument too large");
    LatticeClassification out;
    double best = std::numeric_limits<double>::infinity();
    LatticePoint best_pt{};
    bool best_zero = false;
    auto consider = [&](int m, int n, bool zero) {
        double d = std::abs(x - cplx(m + n * iw, 0));
        if (d < best) {
            best = d;
            best_pt = {m, n, cplx(m + n * iw, 0)};
            best_zero = zero;
        }
    };
    // zeros: m, n <= 0
    {
        int nmin = static_cast<int>(std::floor((r - 1) * w)) - 1;
        for (int n = 0; n >= std::min(nmin, 0); --n) {
            int m = static_cast<int>(std::lround(r - n * iw));
            consider(std::min(m, 0), n, true);
        }
    }
    // poles: m, n >= 1
    {
        int nmax = static_cast<int>(std::ceil(r * w)) + 1;
        for (int n = 1; n <= std::max(nmax, 1); ++n) {
            int m = static_cast<int>(std::lround(r - n * iw));
            consider(std::max(m, 1), n, false);
        }
    }
    out.distance = best;
    if (best <= tol) {
        out.kind = best_zero ? LatticeKind::zero : LatticeKind::pole;
        out.point = best_pt;
    }
    return out;
}

cplx sigma(const ModulusParameters& mod, cplx x) { return AngleEvaluator::shared(mod).sigma(x); }

cplx angle(const ModulusParameters& mod, cplx x) { return AngleEvaluator::shared(mod).angle(x); }

cplx log_angle(const ModulusParameters& mod, cplx x) { return AngleEvaluator::shared(mod).log_angle(x); }

cplx residue_inverse_angle(const ModulusParameters& mod, int m, int n) {
    if (m < 0 || n < 0) throw DomainError("residue_inverse_angle: indices must be non-negative");
    cplx den = 2 * kPi * std::sqrt(mod.omega);
    for (int j = 1; j <= m; ++j) den *= one_minus_expi2pi(-j * mod.omega);
    for (int k = 1; k <= n; ++k) den *= one_minus_expi2pi(-k / mod.omega);
    return 1.0 / den;
}

}  // namespace qone
