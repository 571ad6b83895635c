#include "qone/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>

#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/jacobi.hpp"
#include "qone/qhyper.hpp"

namespace qone::verify {

namespace {

constexpr int kMaxAttempts = 40;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v + 0.0);
    return buf;
}

cplx jc(const json& v) {
    if (v.is_array()) return {v.at(0).get<double>(), v.at(1).get<double>()};
    return {v.get<double>(), 0};
}

std::vector<cplx> jcv(const json& v) {
    std::vector<cplx> out;
    for (auto& e : v) out.push_back(jc(e));
    return out;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

const CocycleElement kOneQ = CocycleElement::constant(Variable::q_side, 1);
const CocycleElement kOneBigQ = CocycleElement::constant(Variable::Q_side, 1);

class Ctx {
public:
    Ctx(Report& rep, const SuiteConfig& cfg, const std::string& suite)
        : rep(rep),
          cfg(cfg),
          fx(cfg.fixtures.at(suite)),
          mod(make_modulus(cfg.fixtures.at("omega").get<double>())),
          rng(cfg.seed ^ fnv1a(suite)) {}

    Report& rep;
    const SuiteConfig& cfg;
    const json& fx;
    ModulusParameters mod;
    std::mt19937_64 rng;

    double uniform(double a, double b) { return a + (b - a) * double(rng() >> 11) * 0x1p-53; }
    int draws(const char* key) const { return fx.value(key, 0) + cfg.trials; }

    void add(const std::string& id, double value, double scale, double threshold, const std::string& diag = {}) {
        Check c;
        c.id = id;
        c.value = value;
        c.scale = scale;
        c.threshold = threshold;
        c.diagnostic = diag;
        c.status = std::isfinite(value) && c.relative() <= threshold ? "pass" : "fail";
        rep.checks.push_back(c);
    }

    void unavailable(const std::string& id, double threshold, const std::string& status, const std::string& diag) {
        Check c;
        c.id = id;
        c.value = std::numeric_limits<double>::quiet_NaN();
        c.threshold = threshold;
        c.status = status;
        c.diagnostic = diag;
        rep.checks.push_back(c);
    }

    // Runs f; a window, gap or domain failure marks the check skipped(infeasible).
    void guard(const std::string& id, double threshold, const std::function<void()>& f) {
        try {
            f();
        } catch (const DivergenceError& e) {
            unavailable(id, threshold, "skipped(infeasible)", e.what());
        } catch (const NoSeparatingLineError& e) {
            unavailable(id, threshold, "skipped(infeasible)", e.what());
        } catch (const DomainError& e) {
            unavailable(id, threshold, "skipped(infeasible)", e.what());
        } catch (const Error& e) {
            unavailable(id, threshold, "error", e.what());
        }
    }

    // Random feasible draw: retries sample() until eval() succeeds.
    template <class P>
    void draw_loop(const std::string& prefix, int n, const std::function<P()>& sample,
                   const std::function<std::string(const P&)>& describe,
                   const std::function<void(const std::string&, const P&)>& eval) {
        for (int i = 0; i < n; ++i) {
            const std::string id = prefix + "[" + std::to_string(i) + "]";
            std::string last;
            bool done = false;
            for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
                P p = sample();
                const std::size_t mark = rep.checks.size(), qmark = rep.quadrature.size();
                try {
                    eval(id, p);
                    for (std::size_t k = mark; k < rep.checks.size(); ++k) rep.checks[k].diagnostic = describe(p);
                    done = true;
                } catch (const Error& e) {
                    rep.checks.resize(mark);
                    rep.quadrature.resize(qmark);
                    last = e.what();
                }
            }
            if (!done) unavailable(id, cfg.suite_tol, "skipped(infeasible)", "no feasible draw: " + last);
        }
    }

    void quad(const std::string& id, const QuadratureResult& q) { rep.quadrature.push_back(quad_stat(id, q)); }
};

HGParams hg(const ModulusParameters& mod, const json& r) {
    return {mod, jc(r.at("alpha")), jc(r.at("beta")), jc(r.at("gamma")), jc(r.at("x"))};
}

std::string describe_hg(const HGParams& p) {
    return "alpha=" + fmt(p.alpha.real()) + " beta=" + fmt(p.beta.real()) + " gamma=" + fmt(p.gamma.real()) +
           " x=" + fmt(p.x.real());
}

HGParams perturb(Ctx& c, const HGParams& p, double r) {
    return {p.mod, p.alpha + c.uniform(-r, r), p.beta + c.uniform(-r, r), p.gamma + c.uniform(-r, r),
            p.x + c.uniform(-r, r)};
}

// Panel doubling and height doubling against the reported error estimate.
void engine_checks(Ctx& c, const std::string& prefix, const PairingProblem& problem) {
    c.guard(prefix + ".panel_doubling", 1.0, [&] {
        auto base = pair(problem, c.cfg.tol);
        auto fine = problem;
        fine.contour.refine = 1;
        auto r = pair(fine, c.cfg.tol);
        c.add(prefix + ".panel_doubling", std::abs(r.value - base.value),
              base.abs_error_estimate + base.truncation_bound, 1.0);
        auto tall = problem;
        tall.contour.y_max = 2 * std::max(-base.y_lo, base.y_hi);
        auto t = pair(tall, c.cfg.tol);
        c.add(prefix + ".height_doubling", std::abs(t.value - base.value),
              base.abs_error_estimate + base.truncation_bound, 1.0);
    });
}

// ---------------------------------------------------------------- doublesine

void suite_doublesine(Ctx& c) {
    const auto& ev = AngleEvaluator::shared(c.mod);
    const double w = c.mod.omega, Om = c.mod.Omega();
    const int n = c.fx.value("points", 200) + c.cfg.trials;
    const double re0 = c.fx.value("re_min", 0.0), im = c.fx.value("im_max", 5.0);
    double eq = 0, eQ = 0, er = 0, ep = 0;
    for (int i = 0; i < n; ++i) {
        const cplx x(c.uniform(re0, re0 + Om), c.uniform(-im, im));
        const cplx a = ev.angle(x);
        eq = std::max(eq, std::abs(ev.angle(x + 1.0) * one_minus_expi2pi(w * x) - a) / std::abs(a));
        eQ = std::max(eQ, std::abs(ev.angle(x + 1.0 / w) * one_minus_expi2pi(x) - a) / std::abs(a));
        const cplx s = ev.sigma(x);
        er = std::max(er, std::abs(a * ev.angle(Om - x) - s) / std::abs(s));
        // shift by 1 then reflect, against shift by 1/w then reflect
        const cplx r1 = one_minus_expi2pi(w * x) * ev.sigma(x + 1.0) / ev.angle(Om - x - 1.0);
        const cplx r2 = one_minus_expi2pi(x) * ev.sigma(x + 1.0 / w) / ev.angle(Om - x - 1.0 / w);
        ep = std::max(ep, std::abs(r1 - r2) / std::abs(r1));
    }
    const std::string pts = std::to_string(n) + " points";
    c.add("doublesine.shift_q", eq, 1, 1e-10, pts);
    c.add("doublesine.shift_Q", eQ, 1, 1e-10, pts);
    c.add("doublesine.reflection", er, 1, 1e-10, pts);
    c.add("doublesine.path_independence", ep, 1, 1e-10, pts);
    c.add("doublesine.normalization", std::abs(ev.angle(1.0) - cplx(0, 1 / std::sqrt(w))), 1, 1e-12);

    const auto eps = c.fx.value("eps", std::vector<double>{1e-3, 1e-4});
    const double L = 2 * kPi * std::sqrt(w);
    const double e1 = eps.at(0), e2 = eps.at(1);
    const cplx s1 = ev.angle(e1) / e1, s2 = ev.angle(e2) / e2;
    const double d1 = std::abs(s1 - L), d2 = std::abs(s2 - L);
    const double order = std::log(d1 / d2) / std::log(e1 / e2);
    c.add("doublesine.slope.order", std::abs(order - 1), 1, 0.2, "observed order " + fmt(order));
    const cplx richardson = (e1 * s2 - e2 * s1) / (e1 - e2);
    c.add("doublesine.slope.extrapolated", std::abs(richardson - L), L, 1e-6);
}

// ---------------------------------------------------------------- qbeta

void suite_qbeta(Ctx& c) {
    const double Om = c.mod.Omega();
    const double a0 = c.fx.at("alpha").get<double>(), b0 = c.fx.at("beta").get<double>();
    c.guard("qbeta.fixture", c.cfg.suite_tol, [&] {
        auto q = pair(qbeta_weight(a0, b0, c.mod), kOneQ, kOneBigQ, c.cfg.tol);
        const cplx cf = qbeta_closed_form(a0, b0, c.mod);
        c.add("qbeta.fixture", std::abs(q.value - cf), std::abs(cf), c.cfg.suite_tol);
        c.quad("qbeta.fixture", q);
    });
    c.draw_loop<std::pair<double, double>>(
        "qbeta.draw", c.draws("draws"),
        [&] {
            const double b = c.uniform(0.1, 2.0);
            return std::pair{c.uniform(0.05, Om - b - 0.05), b};
        },
        [](const auto& p) { return "alpha=" + fmt(p.first) + " beta=" + fmt(p.second); },
        [&](const std::string& id, const auto& p) {
            auto q = pair(qbeta_weight(p.first, p.second, c.mod), kOneQ, kOneBigQ, c.cfg.tol);
            const cplx cf = qbeta_closed_form(p.first, p.second, c.mod);
            c.add(id, std::abs(q.value - cf), std::abs(cf), c.cfg.suite_tol);
        });
    const auto offs = c.fx.value("offsets", std::vector<double>{-0.7, -0.2});
    c.guard("qbeta.offset_independence", 1e-10, [&] {
        auto prob = make_pairing_problem(qbeta_weight(a0, b0, c.mod), kOneQ, kOneBigQ);
        auto p1 = prob, p2 = prob;
        p1.contour.rho = offs.at(0);
        p2.contour.rho = offs.at(1);
        auto r1 = pair(p1, c.cfg.tol), r2 = pair(p2, c.cfg.tol);
        c.add("qbeta.offset_independence", std::abs(r1.value - r2.value), std::abs(r1.value), 1e-10,
              "rho = " + fmt(offs.at(0)) + ", " + fmt(offs.at(1)));
    });
    c.guard("qbeta.engine", 1.0, [&] {
        engine_checks(c, "qbeta.engine", make_pairing_problem(qbeta_weight(a0, b0, c.mod), kOneQ, kOneBigQ));
    });
}

// ---------------------------------------------------------------- det

JordanPochhammerWeight jp_from(const ModulusParameters& mod, const json& r) {
    return {mod, jc(r.at("alpha")), jcv(r.at("gammas")), jcv(r.at("gamma_primes"))};
}

void suite_det(Ctx& c) {
    for (const char* key : {"n1", "n2"}) {
        const std::string id = std::string("det.") + key + ".closed_form";
        c.guard(id, 1e-6, [&] {
            auto d = det_pairing_matrix(jp_from(c.mod, c.fx.at(key)), c.cfg.tol);
            c.add(id, std::abs(d.numeric_det - d.closed_form), d.scale, 1e-6);
        });
    }
    // n = 1 with gamma' = 0 is the q-Beta integral at beta = gamma.
    c.guard("det.n1.qbeta_reduction", 1e-10, [&] {
        auto jp = jp_from(c.mod, c.fx.at("n1"));
        if (jp.gammas.size() != 1 || std::abs(jp.gamma_primes.at(0)) != 0)
            throw DomainError("det.n1 fixture must have n = 1 and gamma' = 0");
        auto d = det_pairing_matrix(jp, c.cfg.tol);
        auto q = pair(qbeta_weight(jp.alpha, jp.gammas[0], c.mod), kOneQ, kOneBigQ, c.cfg.tol);
        c.add("det.n1.qbeta_reduction", std::abs(d.numeric_det - q.value), std::abs(q.value), 1e-10);
        const cplx cq = qbeta_closed_form(jp.alpha, jp.gammas[0], c.mod);
        c.add("det.n1.closed_form_reduction", std::abs(d.closed_form - cq), std::abs(cq), 1e-12);
    });
    if (c.fx.contains("n2_supplementary")) {
        const std::string p = "det.n2_supplementary";
        c.guard(p + ".closed_form", 1e-6, [&] {
            auto d = det_pairing_matrix(jp_from(c.mod, c.fx.at("n2_supplementary")), c.cfg.tol);
            c.add(p + ".closed_form", std::abs(d.numeric_det - d.closed_form), d.scale, 1e-6);
            c.add(p + ".closed_form_sigma_swapped", std::abs(d.numeric_det - d.closed_form_sigma_swapped),
                  std::abs(d.closed_form_sigma_swapped), 1e-6);
        });
    }
}

// ---------------------------------------------------------------- cocycle

void suite_cocycle(Ctx& c) {
    const auto& mod = c.mod;
    const auto& qbf = c.fx.at("qbeta");
    const JordanPochhammerWeight qb = qbeta_weight(jc(qbf.at("alpha")), jc(qbf.at("beta")), mod);
    const JordanPochhammerWeight ps = psi_weight(hg(mod, c.fx.at("psi")));

    // Cocycle law b_{chi+chi'}(t) = b_chi(t) b_chi'(q^chi t), both sides.
    for (Variable side : {Variable::q_side, Variable::Q_side}) {
        const bool qs = side == Variable::q_side;
        const std::string id = std::string("cocycle.law.") + (qs ? "q" : "Q");
        c.guard(id, 1e-12, [&] {
            auto b = [&](int chi) { return (qs ? b_chi(ps, chi) : b_tilde_chi(ps, chi)).element(); };
            double worst = 0;
            for (int i = 0; i < 50; ++i) {
                const cplx t = std::polar(c.uniform(0.5, 2.0), c.uniform(0, 2 * kPi));
                for (int x1 = -2; x1 <= 2; ++x1)
                    for (int x2 = -2; x2 <= 2; ++x2) {
                        const cplx lhs = b(x1 + x2).eval_variable(mod, t);
                        const cplx rhs = b(x1).eval_variable(mod, t) * b(x2).shifted(mod, x1).eval_variable(mod, t);
                        worst = std::max(worst, rel(rhs, lhs));
                    }
            }
            c.add(id, worst, 1, 1e-12, "50 points, chi, chi' in -2..2");
        });
    }
    // b_chi against Phi(z + chi) / Phi(z).
    c.guard("cocycle.phi_consistency", 1e-10, [&] {
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const cplx z(c.uniform(-0.5, 0.5), c.uniform(-2, 2));
            for (int chi : {1, -1, 2, -2}) {
                const cplx bq = b_chi(ps, chi).element().eval(mod, z);
                worst = std::max(worst, rel(bq, phi_jp(ps, z + double(chi)) / phi_jp(ps, z)));
                const cplx bQ = b_tilde_chi(ps, chi).element().eval(mod, z);
                worst = std::max(worst, rel(bQ, phi_jp(ps, z + double(chi) / mod.omega) / phi_jp(ps, z)));
            }
        }
        c.add("cocycle.phi_consistency", worst, 1, 1e-10, "50 points");
    });
    c.guard("cocycle.partial_fraction", 1e-12, [&] {
        const int n = c.fx.value("samples", 1000);
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            auto u = [&] { return std::polar(c.uniform(0.5, 1.5), c.uniform(0, 2 * kPi)); };
            const cplx A = u(), B = u(), C = u(), T = u();
            worst = std::max(worst, std::abs(partial_fraction_residual(A, B, C, T)));
        }
        c.add("cocycle.partial_fraction", worst, 1, 1e-12, std::to_string(n) + " samples");
    });
    // psi_k = prod_{j<k} (1-c_j t)/(1-c'_j t) / (1-c'_k t) in the basis 1/(1-c'_p t).
    c.guard("cocycle.change_of_basis", 1e-10, [&] {
        const std::size_t n = ps.gammas.size();
        std::vector<cplx> cc, cp;
        for (std::size_t j = 0; j < n; ++j) {
            cc.push_back(torus_q(mod, ps.gammas[j]));
            cp.push_back(torus_q(mod, ps.gamma_primes[j]));
        }
        double worst = 0;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t s = 0; s <= n; ++s) {
                const cplx t = std::polar(c.uniform(0.5, 2.0), c.uniform(0, 2 * kPi));
                cplx lhs = 1.0 / (1.0 - cp[k] * t);
                for (std::size_t j = 0; j < k; ++j) lhs *= (1.0 - cc[j] * t) / (1.0 - cp[j] * t);
                cplx rhs = 0;
                for (std::size_t p = 0; p < k; ++p) {
                    cplx coef = (1.0 - cc[p] / cp[p]) / (1.0 - cp[k] / cp[p]);
                    for (std::size_t j = 0; j < k; ++j)
                        if (j != p) coef *= (1.0 - cc[j] / cp[p]) / (1.0 - cp[j] / cp[p]);
                    rhs += coef / (1.0 - cp[p] * t);
                }
                cplx coef = 1;
                for (std::size_t j = 0; j < k; ++j) coef *= (1.0 - cc[j] / cp[k]) / (1.0 - cp[j] / cp[k]);
                rhs += coef / (1.0 - cp[k] * t);
                worst = std::max(worst, rel(rhs, lhs));
            }
        c.add("cocycle.change_of_basis", worst, 1, 1e-10);
    });

    const auto chis = c.fx.value("chis", std::vector<int>{1, -1, 2, -2});
    const std::pair<const char*, const JordanPochhammerWeight*> kernels[] = {{"qbeta", &qb}, {"psi", &ps}};
    for (auto [kname, jp] : kernels) {
        auto basis = basis_elements(*jp);
        const std::pair<const char*, CocycleElement> qside[] = {
            {"1", kOneQ}, {"t", CocycleElement::monomial(Variable::q_side, 1)}, {"basis", basis.q_side[0]}};
        const std::pair<const char*, CocycleElement> Qside[] = {
            {"1", kOneBigQ}, {"T", CocycleElement::monomial(Variable::Q_side, 1)}, {"basis", basis.Q_side[0]}};
        for (int chi : chis)
            for (int i = 0; i < 3; ++i) {
                const std::string tail = std::string(".chi=") + std::to_string(chi) + ".psi=";
                const std::string iq = std::string("cocycle.annihilation.") + kname + ".q" + tail + qside[i].first;
                c.guard(iq, c.cfg.suite_tol, [&] {
                    auto r = pair_auto(*jp, coboundary_generator(qside[i].second, *jp, chi), kOneBigQ, c.cfg.tol);
                    c.add(iq, std::abs(r.value), r.scale, c.cfg.suite_tol);
                });
                const std::string iQ = std::string("cocycle.annihilation.") + kname + ".Q" + tail + Qside[i].first;
                c.guard(iQ, c.cfg.suite_tol, [&] {
                    auto r = pair_auto(*jp, kOneQ, coboundary_generator(Qside[i].second, *jp, chi), c.cfg.tol);
                    c.add(iQ, std::abs(r.value), r.scale, c.cfg.suite_tol);
                });
            }
    }
}

// ---------------------------------------------------------------- Psi identities

void add_residual(Ctx& c, const std::string& id, const ResidualResult& r) {
    c.add(id, std::abs(r.residual), r.scale, c.cfg.suite_tol);
}

void heine_rows(Ctx& c, const std::string& id, const HGParams& p, const std::optional<CocycleElement>& pt) {
    auto h = heine_residuals(p, c.cfg.tol, pt);
    add_residual(c, id + ".r1", h.r1);
    add_residual(c, id + ".r2", h.r2);
    add_residual(c, id + ".r3", h.r3);
}

void suite_heine(Ctx& c) {
    const auto& fixtures = c.fx.at("fixtures");
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const std::string id = "heine.fixture[" + std::to_string(i) + "]";
        const HGParams p = hg(c.mod, fixtures[i]);
        c.guard(id, c.cfg.suite_tol, [&] { heine_rows(c, id, p, std::nullopt); });
        c.guard(id + ".engine", 1.0, [&] {
            engine_checks(c, id + ".engine", make_pairing_problem(psi_weight(p), kOneQ, kOneBigQ));
        });
        c.draw_loop<HGParams>(
            id + ".draw", c.draws("draws"), [&] { return perturb(c, p, 0.1); }, describe_hg,
            [&](const std::string& did, const HGParams& d) { heine_rows(c, did, d, std::nullopt); });
    }
    // phi~ = 1/(1 - C' T) with C' = e^{2 pi i gamma}.
    const auto& pf = c.fx.at("phi_tilde_fixtures");
    for (std::size_t i = 0; i < pf.size(); ++i) {
        const std::string id = "heine.phi_tilde[" + std::to_string(i) + "]";
        const HGParams p = hg(c.mod, pf[i]);
        c.guard(id, c.cfg.suite_tol,
                [&] { heine_rows(c, id, p, CocycleElement::basis(Variable::Q_side, p.gamma)); });
        if (i == 0)
            c.draw_loop<HGParams>(
                id + ".draw", c.draws("draws"), [&] { return perturb(c, p, 0.1); }, describe_hg,
                [&](const std::string& did, const HGParams& d) {
                    heine_rows(c, did, d, CocycleElement::basis(Variable::Q_side, d.gamma));
                });
    }
}

void suite_connection(Ctx& c) {
    const auto& fixtures = c.fx.at("fixtures");
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const std::string id = "connection.fixture[" + std::to_string(i) + "]";
        const HGParams p = hg(c.mod, fixtures[i]);
        c.guard(id, c.cfg.suite_tol, [&] { add_residual(c, id, connection_residual(p, c.cfg.tol)); });
        const std::string sid = "connection.split[" + std::to_string(i) + "]";
        c.guard(sid, c.cfg.suite_tol, [&] {
            auto [e1, e2] = connection_split(p);
            auto v = psi(p, c.cfg.tol);
            auto v1 = psi_auto(p, e1, c.cfg.tol), v2 = psi_auto(p, e2, c.cfg.tol);
            c.add(sid, std::abs(v1.value + v2.value - v.value), std::abs(v.value), c.cfg.suite_tol);
            c.quad(sid + ".psi", v.quad);
        });
        c.draw_loop<HGParams>(
            id + ".draw", c.draws("draws"), [&] { return perturb(c, p, 0.1); }, describe_hg,
            [&](const std::string& did, const HGParams& d) { add_residual(c, did, connection_residual(d, c.cfg.tol)); });
    }
}

void suite_diffeq(Ctx& c) {
    const auto& fixtures = c.fx.at("fixtures");
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const std::string id = "diffeq.fixture[" + std::to_string(i) + "]";
        const HGParams p = hg(c.mod, fixtures[i]);
        c.guard(id, c.cfg.suite_tol, [&] { add_residual(c, id, difference_equation_residual(p, c.cfg.tol)); });
        c.draw_loop<HGParams>(
            id + ".draw", c.draws("draws"), [&] { return perturb(c, p, 0.1); }, describe_hg,
            [&](const std::string& did, const HGParams& d) {
                add_residual(c, did, difference_equation_residual(d, c.cfg.tol));
            });
    }
}

void suite_mellin_sato(Ctx& c) {
    const auto chis = c.fx.value("chis", std::vector<int>{1, -1});
    auto run = [&](const std::string& prefix, const json& r) {
        const auto jp = qbeta_weight(jc(r.at("alpha")), jc(r.at("beta")), c.mod);
        for (int chi : chis) {
            const std::string id = prefix + ".chi=" + std::to_string(chi);
            c.guard(id, c.cfg.suite_tol, [&] { add_residual(c, id, mellin_sato_residual(jp, kOneBigQ, chi, c.cfg.tol)); });
        }
    };
    run("mellin-sato.fixture", c.fx.at("fixture"));
    if (c.fx.contains("supplementary")) {
        const auto& s = c.fx.at("supplementary");
        for (std::size_t i = 0; i < s.size(); ++i) run("mellin-sato.supplementary[" + std::to_string(i) + "]", s[i]);
    }
}

void suite_limit(Ctx& c) {
    const cplx b = jc(c.fx.at("beta")), g = jc(c.fx.at("gamma")), x = jc(c.fx.at("x"));
    const auto eps = c.fx.value("eps", std::vector<double>{1e-3, 1e-4});
    for (int n : c.fx.at("ns").get<std::vector<int>>()) {
        const std::string id = "limit.n=" + std::to_string(n);
        const HGParams p{c.mod, -double(n), b, g, x};
        c.guard(id, c.cfg.suite_tol, [&] {
            const cplx f = phi_terminating(n, b, g, x, c.mod);
            auto v = psi_residue_corrected(n, p, c.cfg.tol);
            c.add(id, std::abs(v.value - f), std::abs(f), c.cfg.suite_tol);
            double d[2];
            for (int k = 0; k < 2; ++k) {
                HGParams pe = p;
                pe.alpha += eps.at(k);
                d[k] = std::abs(psi_auto(pe, kOneBigQ, c.cfg.tol).value - f);
            }
            const double order = std::log(d[0] / d[1]) / std::log(eps.at(0) / eps.at(1));
            c.add(id + ".eps_order", std::abs(order - 1), 1, 0.2, "observed order " + fmt(order));
        });
    }
    if (c.fx.contains("jacobi")) {
        const auto& r = c.fx.at("jacobi");
        const int n = r.at("n").get<int>();
        const cplx a = jc(r.at("a")), bb = jc(r.at("b")), xx = jc(r.at("x"));
        c.guard("limit.jacobi", c.cfg.suite_tol, [&] {
            const cplx pn = little_jacobi(n, a, bb, c.mod)(expi2pi(c.mod.omega * xx));
            HGParams p{c.mod, -double(n), a + bb + double(n + 1), a + 1.0, xx + 1.0};
            auto v = psi_residue_corrected(n, p, c.cfg.tol);
            c.add("limit.jacobi", std::abs(v.value - pn), std::abs(pn), c.cfg.suite_tol);
        });
    }
}

// ---------------------------------------------------------------- ortho

void gram_rows(Ctx& c, const std::string& id, const ModulusParameters& mod, cplx a, cplx b, int d) {
    const int N = d + 1;
    std::vector<OrthogonalityResult> g(N * N);
    try {
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) g[m * N + n] = orthogonality_pair(m, n, a, b, mod, c.cfg.tol);
    } catch (const DivergenceError& e) {
        for (const char* s : {".offdiagonal", ".diagonal"})
            c.unavailable(id + s, c.cfg.suite_tol, "skipped(infeasible)", e.what());
        return;
    }
    double cmax = 0, off = 0, diag = 0, direct = 0, alg = 0;
    for (int n = 0; n < N; ++n) cmax = std::max(cmax, std::abs(g[n * N + n].expected));
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            const auto& r = g[m * N + n];
            if (m == n)
                diag = std::max(diag, rel(r.termwise, r.expected));
            else
                off = std::max(off, std::abs(r.termwise));
            direct = std::max(direct, std::abs(r.direct - r.termwise));
            alg = std::max(alg, std::abs(r.algebraic - r.termwise));
        }
    c.add(id + ".offdiagonal", off, cmax, c.cfg.suite_tol);
    c.add(id + ".diagonal", diag, 1, c.cfg.suite_tol);
    c.add(id + ".direct_vs_termwise", direct, cmax, c.cfg.suite_tol);
    c.add(id + ".algebraic_route", alg, cmax, c.cfg.suite_tol);
}

// Scaled by |RHS| when m = n, by max(1, largest term) otherwise.
double moment_identity_worst(const ModulusParameters& mod, cplx a, cplx b, int d) {
    double worst = 0;
    for (int m = 0; m <= d; ++m)
        for (int n = 0; n <= d; ++n) {
            double big = 1;
            const cplx lhs = jacobi_moment_sum(m, n, a, b, mod, &big);
            const cplx rhs = jacobi_norm_factor(m, n, a, b, mod);
            const double scale = m == n ? std::abs(rhs) : std::max(1.0, big);
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    return worst;
}

void suite_ortho(Ctx& c) {
    const auto& f = c.fx.at("fixture");
    const cplx a = jc(f.at("alpha")), b = jc(f.at("beta"));
    gram_rows(c, "ortho.gram", c.mod, a, b, f.value("max_degree", 2));
    if (c.fx.contains("supplementary")) {
        const auto& s = c.fx.at("supplementary");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto mod = make_modulus(s[i].value("omega", c.mod.omega));
            gram_rows(c, "ortho.supplementary[" + std::to_string(i) + "]", mod, jc(s[i].at("alpha")),
                      jc(s[i].at("beta")), s[i].value("max_degree", 2));
        }
    }
    const auto& mid = c.fx.at("moment_identity");
    const int d = mid.value("max_degree", 3);
    c.guard("ortho.moment_identity.fixture", 1e-12,
            [&] { c.add("ortho.moment_identity.fixture", moment_identity_worst(c.mod, a, b, d), 1, 1e-12); });
    const int draws = mid.value("draws", 5) + c.cfg.trials;
    c.draw_loop<std::pair<double, double>>(
        "ortho.moment_identity.draw", draws, [&] { return std::pair{c.uniform(0.1, 3.0), c.uniform(0.1, 6.0)}; },
        [](const auto& p) { return "alpha=" + fmt(p.first) + " beta=" + fmt(p.second); },
        [&](const std::string& id, const auto& p) {
            c.add(id, moment_identity_worst(c.mod, p.first, p.second, d), 1, 1e-12);
        });
}

using SuiteFn = void (*)(Ctx&);
const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"doublesine", suite_doublesine}, {"qbeta", suite_qbeta},   {"det", suite_det},
        {"cocycle", suite_cocycle},       {"heine", suite_heine},   {"connection", suite_connection},
        {"diffeq", suite_diffeq},         {"mellin-sato", suite_mellin_sato},
        {"limit", suite_limit},           {"ortho", suite_ortho}};
    return r;
}

Report base_report(const std::string& name, const SuiteConfig& cfg) {
    Report r;
    r.suite = name;
    r.omega = cfg.fixtures.at("omega").get<double>();
    r.tol = cfg.tol;
    r.suite_tol = cfg.suite_tol;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (auto& [k, f] : registry()) n.push_back(k);
        return n;
    }();
    return names;
}

// Installs the fixture quadrature settings for the lifetime of the object.
class QuadratureScope {
public:
    explicit QuadratureScope(const json& fx) : saved_(default_contour_spec()) {
        if (!fx.contains("quadrature")) return;
        const auto& q = fx.at("quadrature");
        ContourSpec s = saved_;
        s.panel_tol = q.value("panel_tol", s.panel_tol);
        s.max_panels = q.value("max_panels", s.max_panels);
        s.y_max_cap = q.value("y_max_cap", s.y_max_cap);
        set_default_contour_spec(s);
    }
    ~QuadratureScope() { set_default_contour_spec(saved_); }
    QuadratureScope(const QuadratureScope&) = delete;
    QuadratureScope& operator=(const QuadratureScope&) = delete;

private:
    ContourSpec saved_;
};

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (!(cfg.tol > 0) || !(cfg.suite_tol > 0)) throw DomainError("tolerances must be positive");
    if (cfg.trials < 0) throw DomainError("trials must be non-negative");
    QuadratureScope scope(cfg.fixtures);
    if (name == "all") {
        Report all = base_report("all", cfg);
        all.fixtures = cfg.fixtures;
        for (auto& [k, f] : registry()) all.append(run_suite(k, cfg));
        return all;
    }
    for (auto& [k, f] : registry()) {
        if (k != name) continue;
        if (!cfg.fixtures.contains(k)) throw DomainError("fixtures have no record for suite " + k);
        Report r = base_report(k, cfg);
        r.fixtures = {{"omega", cfg.fixtures.at("omega")}, {k, cfg.fixtures.at(k)}};
        if (cfg.fixtures.contains("quadrature")) r.fixtures["quadrature"] = cfg.fixtures.at("quadrature");
        Ctx ctx(r, cfg, k);
        f(ctx);
        return r;
    }
    throw DomainError("unknown suite '" + name + "'");
}

}  // namespace qone::verify
