// qone: point evaluation, verification suites and parameter sweeps.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qone/doublesine.hpp"
#include "qone/errors.hpp"
#include "qone/jacobi.hpp"
#include "qone/parallel.hpp"
#include "qone/qhyper.hpp"
#include "qone/verify/suites.hpp"

namespace {

using qone::cplx;
using nlohmann::json;

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& s, const char* flag) {
    std::string t = s;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    std::istringstream in(t);
    in.imbue(std::locale::classic());
    double re = 0, im = 0;
    if (!(in >> re)) throw UsageError(std::string(flag) + ": cannot parse '" + s + "'");
    if (!(in >> im)) im = 0;
    std::string rest;
    if (in >> rest) throw UsageError(std::string(flag) + ": trailing text in '" + s + "'");
    return {re, im};
}

// Components below 1e-15 of the modulus print as 0.
std::string num(double v, double mag) {
    if (std::abs(v) < 1e-15 * mag) v = 0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

struct Value {
    cplx z;
    std::optional<double> abs_err;  // set for quadrature results
};

std::string format_value(const Value& v, const std::string& format) {
    const double mag = std::abs(v.z);
    if (format == "json") {
        json j;
        j["re"] = std::stod(num(v.z.real(), mag));
        j["im"] = std::stod(num(v.z.imag(), mag));
        j["abs_err"] = v.abs_err.value_or(0.0);
        return j.dump();
    }
    std::string out = num(v.z.real(), mag) + "," + num(v.z.imag(), mag);
    if (v.abs_err) out += "," + num(*v.abs_err, 1);
    return out;
}

struct Params {
    double omega = 1 / std::sqrt(2.0);
    std::string alpha, beta, gamma, x;
    std::vector<std::string> gammas, gamma_primes;
    int n = 0, m = 0;
    double tol = 1e-10;

    cplx need(const std::string& v, const char* flag) const {
        if (v.empty()) throw UsageError(std::string("missing ") + flag);
        return parse_complex(v, flag);
    }
};

const std::vector<std::string> kEvalFunctions = {"angle", "sigma", "psi", "qbeta", "qbeta-closed",
                                                 "det", "jacobi", "ortho"};

Value evaluate(const std::string& fn, const Params& p) {
    const auto mod = qone::make_modulus(p.omega);
    if (fn == "angle") return {qone::angle(mod, p.need(p.x, "--x")), std::nullopt};
    if (fn == "sigma") return {qone::sigma(mod, p.need(p.x, "--x")), std::nullopt};
    if (fn == "psi") {
        qone::HGParams h{mod, p.need(p.alpha, "--alpha"), p.need(p.beta, "--beta"), p.need(p.gamma, "--gamma"),
                         p.need(p.x, "--x")};
        auto v = qone::psi_auto(h, qone::CocycleElement::constant(qone::Variable::Q_side, 1), p.tol);
        return {v.value, std::abs(qone::psi_prefactor(h)) * (v.quad.abs_error_estimate + v.quad.truncation_bound)};
    }
    if (fn == "qbeta") {
        auto r = qone::pair(qone::qbeta_weight(p.need(p.alpha, "--alpha"), p.need(p.beta, "--beta"), mod),
                            qone::CocycleElement::constant(qone::Variable::q_side, 1),
                            qone::CocycleElement::constant(qone::Variable::Q_side, 1), p.tol);
        return {r.value, r.abs_error_estimate + r.truncation_bound};
    }
    if (fn == "qbeta-closed")
        return {qone::qbeta_closed_form(p.need(p.alpha, "--alpha"), p.need(p.beta, "--beta"), mod), std::nullopt};
    if (fn == "det") {
        qone::JordanPochhammerWeight jp{mod, p.need(p.alpha, "--alpha"), {}, {}};
        for (auto& g : p.gammas) jp.gammas.push_back(parse_complex(g, "--gamma"));
        for (auto& g : p.gamma_primes) jp.gamma_primes.push_back(parse_complex(g, "--gamma-prime"));
        if (jp.gammas.empty() || jp.gammas.size() != jp.gamma_primes.size())
            throw UsageError("det needs equally many --gamma and --gamma-prime values");
        auto d = qone::det_pairing_matrix(jp, p.tol);
        return {d.numeric_det, d.abs_error_estimate};
    }
    if (fn == "jacobi") {
        auto poly = qone::little_jacobi(p.n, p.need(p.alpha, "--alpha"), p.need(p.beta, "--beta"), mod);
        return {poly(qone::expi2pi(mod.omega * p.need(p.x, "--x"))), std::nullopt};
    }
    if (fn == "ortho") {
        auto r = qone::orthogonality_pair(p.m, p.n, p.need(p.alpha, "--alpha"), p.need(p.beta, "--beta"), mod, p.tol);
        return {r.termwise, r.error_estimate};
    }
    throw UsageError("unknown function '" + fn + "'");
}

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

// "v" or "start:stop:step".
std::vector<double> parse_axis(const std::string& s, const char* flag) {
    if (s.find(':') == std::string::npos) return {parse_complex(s, flag).real()};
    double a = 0, b = 0, h = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0) || b < a)
        throw UsageError(std::string(flag) + ": expected start:stop:step with step > 0, got '" + s + "'");
    const long count = std::lround(std::floor((b - a) / h + 1e-9)) + 1;
    if (count > 1000000) throw UsageError(std::string(flag) + ": axis too long");
    std::vector<double> v;
    for (long i = 0; i < count; ++i) v.push_back(a + double(i) * h);
    return v;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qone: double sine functions, q-hypergeometric contour integrals at |q| = 1"};
    app.set_version_flag("--version", std::string(QONE_VERSION));
    app.require_subcommand(1);

    Params p;
    std::string format = "csv", out_path, fixtures_path, function, suite;
    int threads = 0, trials = 0;
    double suite_tol = 1e-8;
    std::uint64_t seed = 0;
    bool timing = false;
    std::optional<double> omega_flag;
    std::size_t max_points = 10000;
    std::string check;

    auto add_params = [&](CLI::App* sc) {
        sc->add_option("--omega", omega_flag, "omega > 0");
        sc->add_option("--alpha", p.alpha, "complex as re[,im]");
        sc->add_option("--beta", p.beta, "complex as re[,im]");
        sc->add_option("--x", p.x, "complex as re[,im]");
        sc->add_option("--tol", p.tol, "quadrature tolerance");
        sc->add_option("--threads", threads, "worker threads (0 = hardware)");
        sc->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sc->add_option("--out", out_path, "output file");
    };

    auto* ev = app.add_subcommand("eval", "evaluate one function at one point");
    ev->add_option("function", function, "angle|sigma|psi|qbeta|qbeta-closed|det|jacobi|ortho")->required();
    add_params(ev);
    ev->add_option("--gamma", p.gammas, "complex re[,im]; repeat for det");
    ev->add_option("--gamma-prime", p.gamma_primes, "det only; repeatable");
    ev->add_option("--n", p.n, "degree / index");
    ev->add_option("--m", p.m, "second index (ortho)");

    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("suite", suite, "doublesine|qbeta|det|cocycle|heine|connection|diffeq|mellin-sato|limit|ortho|all")
        ->required();
    vf->add_option("--omega", omega_flag, "override the fixture omega");
    vf->add_option("--tol", p.tol, "quadrature tolerance");
    vf->add_option("--suite-tol", suite_tol, "residual threshold");
    vf->add_option("--trials", trials, "extra seeded random draws");
    vf->add_option("--seed", seed, "random seed");
    vf->add_option("--fixtures", fixtures_path, "JSON fixture overrides");
    vf->add_option("--threads", threads, "worker threads (0 = hardware)");
    vf->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    vf->add_option("--out", out_path, "output file");
    vf->add_flag("--timing", timing, "add wall_time to the report");

    auto* sw = app.add_subcommand("sweep", "evaluate over a parameter grid");
    sw->add_option("function", function, "angle|sigma|psi|qbeta")->required();
    add_params(sw);
    sw->add_option("--gamma", p.gamma, "value or start:stop:step");
    sw->add_option("--check", check, "residual column (psi only)")
        ->check(CLI::IsMember({"diffeq", "heine", "connection"}));
    sw->add_option("--max-points", max_points, "grid size cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }
    if (threads < 0) {
        std::cerr << "error: --threads must be non-negative\n";
        return kExitUsage;
    }
    qone::set_thread_count(threads);
    if (omega_flag) p.omega = *omega_flag;

    try {
        if (ev->parsed()) {
            if (!p.gammas.empty()) p.gamma = p.gammas.front();
            if (!(p.omega > 0)) throw UsageError("--omega must be positive");
            Value v = evaluate(function, p);
            write_out(format_value(v, format) + "\n", out_path);
            return kExitPass;
        }

        if (vf->parsed()) {
            qone::verify::SuiteConfig cfg;
            cfg.fixtures = fixtures_path.empty() ? qone::verify::default_fixtures()
                                                 : qone::verify::load_fixtures(fixtures_path);
            if (omega_flag) cfg.fixtures["omega"] = *omega_flag;
            cfg.tol = p.tol;
            cfg.suite_tol = suite_tol;
            cfg.trials = trials;
            cfg.seed = seed;
            const auto t0 = std::chrono::steady_clock::now();
            auto report = qone::verify::run_suite(suite, cfg);
            if (timing) report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_out(format == "json" ? qone::verify::to_json(report).dump(2) + "\n" : qone::verify::to_csv(report),
                      out_path);
            return report.pass() ? kExitPass : kExitFail;
        }

        // sweep
        if (function != "angle" && function != "sigma" && function != "psi" && function != "qbeta")
            throw UsageError("sweep supports angle, sigma, psi, qbeta");
        if (!check.empty() && function != "psi") throw UsageError("--check needs function psi");
        auto axis = [&](const std::string& s, const char* flag) {
            return s.empty() ? std::vector<double>{std::nan("")} : parse_axis(s, flag);
        };
        const std::vector<double> ws = omega_flag ? std::vector<double>{*omega_flag} : std::vector<double>{p.omega};
        std::vector<double> as = axis(p.alpha, "--alpha"), bs = axis(p.beta, "--beta"), gs = axis(p.gamma, "--gamma"),
                            xs = axis(p.x, "--x");
        const std::size_t total = ws.size() * as.size() * bs.size() * gs.size() * xs.size();
        if (total > max_points)
            throw UsageError("grid has " + std::to_string(total) + " points, cap is " + std::to_string(max_points));
        struct Row {
            double w, a, b, g, x;
            Value v;
            bool feasible = false;
            double residual = std::nan("");
            std::string diag;
        };
        std::vector<Row> rows;
        for (double w : ws)
            for (double a : as)
                for (double b : bs)
                    for (double g : gs)
                        for (double x : xs) rows.push_back({w, a, b, g, x, {}, false, std::nan(""), {}});
        auto done = qone::parallel_map(rows.size(), [&](std::size_t i) {
            Row r = rows[i];
            Params q = p;
            q.omega = r.w;
            auto str = [](double v) { return std::isnan(v) ? std::string() : fmt_real(v); };
            q.alpha = str(r.a);
            q.beta = str(r.b);
            q.gamma = str(r.g);
            q.x = str(r.x);
            try {
                r.v = evaluate(function, q);
                r.feasible = true;
                if (!check.empty()) {
                    qone::HGParams h{qone::make_modulus(r.w), r.a, r.b, r.g, r.x};
                    if (check == "diffeq") {
                        auto res = qone::difference_equation_residual(h, q.tol);
                        r.residual = std::abs(res.residual) / res.scale;
                    } else if (check == "connection") {
                        auto res = qone::connection_residual(h, q.tol);
                        r.residual = std::abs(res.residual) / res.scale;
                    } else {
                        auto res = qone::heine_residuals(h, q.tol);
                        r.residual = 0;
                        for (auto* x : {&res.r1, &res.r2, &res.r3})
                            r.residual = std::max(r.residual, std::abs(x->residual) / x->scale);
                    }
                }
            } catch (const qone::Error& e) {
                r.diag = e.what();
            } catch (const UsageError& e) {
                r.diag = e.what();
            }
            return r;
        });
        std::string text;
        if (format == "json") {
            json arr = json::array();
            for (auto& r : done) {
                json j = {{"omega", r.w}, {"feasible", r.feasible}};
                for (auto [k, v] : {std::pair{"alpha", r.a}, {"beta", r.b}, {"gamma", r.g}, {"x", r.x}})
                    if (!std::isnan(v)) j[k] = v;
                if (r.feasible) {
                    j["re"] = r.v.z.real();
                    j["im"] = r.v.z.imag();
                    j["abs_err"] = r.v.abs_err.value_or(0.0);
                }
                if (!check.empty() && r.feasible) j["residual"] = r.residual;
                if (!r.diag.empty()) j["diagnostic"] = r.diag;
                arr.push_back(j);
            }
            text = json{{"schema", 1}, {"function", function}, {"rows", arr}}.dump(2) + "\n";
        } else {
            text = "omega,alpha,beta,gamma,x,re,im,abs_err,feasible";
            if (!check.empty()) text += ",residual";
            text += ",diagnostic\n";
            auto opt = [](double v) { return std::isnan(v) ? std::string() : fmt_real(v); };
            for (auto& r : done) {
                const double mag = std::abs(r.v.z);
                text += fmt_real(r.w) + "," + opt(r.a) + "," + opt(r.b) + "," + opt(r.g) + "," + opt(r.x) + ",";
                text += r.feasible ? num(r.v.z.real(), mag) + "," + num(r.v.z.imag(), mag) + "," +
                                         fmt_real(r.v.abs_err.value_or(0.0))
                                   : std::string(",,");
                text += std::string(",") + (r.feasible ? "1" : "0");
                if (!check.empty()) text += "," + (r.feasible ? fmt_real(r.residual) : std::string());
                std::string d = r.diag;
                if (d.find_first_of(",\"") != std::string::npos) {
                    std::string q = "\"";
                    for (char ch : d) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                    d = q + "\"";
                }
                text += "," + d + "\n";
            }
        }
        write_out(text, out_path);
        return kExitPass;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qone::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
