#include "qone/contour.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <vector>

#include "qone/errors.hpp"

namespace qone {

namespace {

struct Segment {
    double a, b;
    cplx v;
    double err, l1;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
    return buf;
}

class LineIntegrator {
public:
    LineIntegrator(const ZFunction& f, double rho) : f_(f), rho_(rho) {}

    Segment eval(double a, double b) const {
        auto g = [&](double y) { return cplx(0, 1) * f_(cplx(rho_, y)); };
        Segment s{a, b, 0, 0, 0};
        s.v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, a, b, 0, 0, &s.err, &s.l1);
        if (!std::isfinite(s.v.real()) || !std::isfinite(s.v.imag()) || !std::isfinite(s.err))
            throw DivergenceError("integrand not finite on Re z = " + fmt(rho_) + ", Im z in [" + fmt(a) + ", " +
                                  fmt(b) + "]");
        return s;
    }

private:
    const ZFunction& f_;
    double rho_;
};

double tail_estimate(double inner, double outer) {
    if (outer == 0) return 0;
    if (!(outer < inner)) return std::numeric_limits<double>::infinity();
    double r = outer / inner;
    return outer * r / (1 - r);
}

}  // namespace

namespace {
std::mutex defaults_mu;
ContourSpec defaults;
}  // namespace

ContourSpec default_contour_spec() {
    std::lock_guard lk(defaults_mu);
    return defaults;
}

void set_default_contour_spec(const ContourSpec& spec) {
    if (!(spec.panel_tol >= 0) || spec.max_panels < 1 || !(spec.y_max_cap > 0))
        throw DomainError("quadrature settings: need panel_tol >= 0, max_panels >= 1, y_max_cap > 0");
    std::lock_guard lk(defaults_mu);
    defaults = spec;
    defaults.rho = 0;
}

cplx pairwise_sum(const cplx* xs, std::size_t n) {
    if (n == 0) return 0;
    if (n == 1) return xs[0];
    std::size_t h = n / 2;
    return pairwise_sum(xs, h) + pairwise_sum(xs + h, n - h);
}

double find_separating_offset(double left_max_re, double right_min_re) {
    if (!(left_max_re < right_min_re))
        throw NoSeparatingLineError("no vertical line separates the pole lattices (left max " + fmt(left_max_re) +
                                        " >= right min " + fmt(right_min_re) + ")",
                                    left_max_re, right_min_re);
    const bool lo_inf = std::isinf(left_max_re), hi_inf = std::isinf(right_min_re);
    if (lo_inf && hi_inf) return 0;
    if (lo_inf) return right_min_re - 0.5;
    if (hi_inf) return left_max_re + 0.5;
    return 0.5 * (left_max_re + right_min_re);
}

QuadratureResult integrate_vertical(const ZFunction& f, const ContourSpec& spec, double tol) {
    if (!(tol > 0)) throw DomainError("integrate_vertical: tol must be positive");
    LineIntegrator li(f, spec.rho);
    const double w = 1.0;
    const double Y0 = std::max(spec.y_max, 2.0);
    const int n0 = static_cast<int>(std::ceil(2 * Y0 / w));

    std::vector<Segment> segs;
    segs.reserve(4 * n0);
    for (int i = 0; i < n0; ++i) segs.push_back(li.eval(-Y0 + i * w, -Y0 + (i + 1) * w));

    auto total_l1 = [&] {
        double s = 0;
        for (auto& g : segs) s += g.l1;
        return s;
    };

    // Grow both ends until the geometric tail is negligible.
    std::vector<Segment> lo_ext, hi_ext;
    double tails[2] = {0, 0};
    bool capped = false;
    const double tail_tol = spec.panel_tol > 0 ? spec.panel_tol : tol;
    for (int side = 0; side < 2; ++side) {
        auto& ext = side == 0 ? lo_ext : hi_ext;
        double extent = Y0;
        double inner = side == 0 ? segs[1].l1 : segs[segs.size() - 2].l1;
        double outer = side == 0 ? segs[0].l1 : segs.back().l1;
        double checkpoint = 2 * Y0;
        double check_mag = outer;
        for (;;) {
            double scale = total_l1();
            for (auto& g : lo_ext) scale += g.l1;
            for (auto& g : hi_ext) scale += g.l1;
            double tail = tail_estimate(inner, outer);
            if (tail <= 0.05 * tail_tol * scale) {
                tails[side] = tail;
                break;
            }
            if (extent >= spec.y_max_cap) {
                tails[side] = std::isfinite(tail) ? tail : outer * extent;
                capped = true;
                break;
            }
            Segment s = side == 0 ? li.eval(-extent - w, -extent) : li.eval(extent, extent + w);
            extent += w;
            ext.push_back(s);
            inner = outer;
            outer = s.l1;
            if (extent >= checkpoint) {
                if (!(outer < check_mag))
                    throw DivergenceError("integrand does not decay along Re z = " + fmt(spec.rho) +
                                          " (|f| not decreasing between |Im z| = " + fmt(checkpoint / 2) +
                                          " and " + fmt(checkpoint) + ")");
                check_mag = outer;
                checkpoint *= 2;
            }
        }
    }
    {
        std::vector<Segment> all;
        all.reserve(lo_ext.size() + segs.size() + hi_ext.size());
        for (auto it = lo_ext.rbegin(); it != lo_ext.rend(); ++it) all.push_back(*it);
        for (auto& g : segs) all.push_back(g);
        for (auto& g : hi_ext) all.push_back(g);
        segs.swap(all);
    }

    // Global adaptive bisection of the worst segment.
    auto total_err = [&] {
        double s = 0;
        for (auto& g : segs) s += g.err;
        return s;
    };
    const double trunc = tails[0] + tails[1];
    for (;;) {
        const double target = tol * total_l1();
        if (total_err() + trunc <= 0.5 * target) break;
        if (static_cast<int>(segs.size()) >= spec.max_panels) break;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        if (segs[worst].err <= 0) break;
        Segment s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) break;
        segs[worst] = li.eval(s.a, m);
        segs.insert(segs.begin() + worst + 1, li.eval(m, s.b));
    }

    for (int r = 0; r < spec.refine; ++r) {
        std::vector<Segment> finer;
        finer.reserve(2 * segs.size());
        for (auto& g : segs) {
            double m = 0.5 * (g.a + g.b);
            finer.push_back(li.eval(g.a, m));
            finer.push_back(li.eval(m, g.b));
        }
        segs.swap(finer);
    }

    std::vector<cplx> vals(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) vals[i] = segs[i].v;
    QuadratureResult r;
    r.value = pairwise_sum(vals.data(), vals.size());
    r.abs_error_estimate = total_err();
    r.panels_used = static_cast<int>(segs.size());
    r.truncation_bound = trunc;
    r.scale = total_l1();
    r.y_lo = segs.front().a;
    r.y_hi = segs.back().b;
    r.converged = !capped && r.abs_error_estimate + r.truncation_bound <= tol * r.scale;
    return r;
}

cplx residue_simple(const ZFunction& regular_part, cplx residue_of_singular_factor, cplx z0) {
    cplx g;
    try {
        g = regular_part(z0);
    } catch (const PoleError& e) {
        throw HigherOrderPoleError(std::string("residue_simple: regular part singular at z0: ") + e.what());
    }
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
        throw HigherOrderPoleError("residue_simple: regular part not finite at z0");
    return cplx(0, 2 * kPi) * g * residue_of_singular_factor;
}

double offset_independence_check(const ZFunction& f, const ContourSpec& spec, double rho2, double tol) {
    ContourSpec s2 = spec;
    s2.rho = rho2;
    auto a = integrate_vertical(f, spec, tol);
    auto b = integrate_vertical(f, s2, tol);
    return std::abs(a.value - b.value);
}

}  // namespace qone
