// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <cstdio>
#include <string>
#include <vector>

#include "qone/parallel.hpp"
#include "qone/verify/suites.hpp"

using namespace qone::verify;

namespace {

struct Criterion {
    int number;
    const char* title;
    std::vector<std::string> primary;        // id prefixes that decide the criterion
    std::vector<std::string> supplementary;  // reported as notes only
};

bool starts(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

bool any_prefix(const std::string& id, const std::vector<std::string>& ps) {
    for (const auto& p : ps)
        if (starts(id, p)) return true;
    return false;
}

void summarize(const std::vector<const Check*>& cs, int& passed, const Check*& first_bad) {
    passed = 0;
    first_bad = nullptr;
    for (auto* c : cs) {
        if (c->pass())
            ++passed;
        else if (!first_bad)
            first_bad = c;
    }
}

std::string describe(const Check& c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s [%s, rel %.3g vs %.3g]", c.id.c_str(), c.status.c_str(), c.relative(),
                  c.threshold);
    std::string s = buf;
    if (!c.diagnostic.empty()) s += ": " + c.diagnostic;
    return s;
}

}  // namespace

int main() {
    SuiteConfig cfg;
    cfg.seed = 7;

    qone::set_thread_count(1);
    const Report all = run_suite("all", cfg);
    const std::string dump1 = to_json(all).dump();
    const std::string dump1b = to_json(run_suite("all", cfg)).dump();
    qone::set_thread_count(4);
    const std::string dump4 = to_json(run_suite("all", cfg)).dump();
    qone::set_thread_count(1);

    const std::vector<Criterion> crit = {
        {1, "double sine identities", {"doublesine."}, {}},
        {2, "q-Beta integral", {"qbeta.fixture", "qbeta.draw", "qbeta.offset_independence"}, {}},
        {3, "determinant", {"det.n1.", "det.n2.closed_form"}, {"det.n2_supplementary."}},
        {4, "coboundary annihilation", {"cocycle.annihilation."}, {}},
        {5, "Heine relations", {"heine.fixture", "heine.phi_tilde"}, {}},
        {6, "connection formula", {"connection."}, {}},
        {7, "difference equation and Mellin-Sato", {"diffeq.", "mellin-sato.fixture"}, {"mellin-sato.supplementary"}},
        {8, "terminating limit", {"limit."}, {}},
        {9, "orthogonality", {"ortho.gram.", "ortho.moment_identity."}, {"ortho.supplementary"}},
        {10, "engine self-consistency", {"qbeta.engine.", "heine.fixture[0].engine."}, {}},
    };

    int failures = 0;
    for (const auto& cr : crit) {
        std::vector<const Check*> prim, supp;
        for (const auto& c : all.checks) {
            if (c.id.find(".engine.") != std::string::npos && cr.number != 10) continue;
            if (any_prefix(c.id, cr.supplementary))
                supp.push_back(&c);
            else if (any_prefix(c.id, cr.primary))
                prim.push_back(&c);
        }
        int passed;
        const Check* bad;
        summarize(prim, passed, bad);
        bool ok = !prim.empty() && !bad;
        std::string extra;
        if (cr.number == 10) {
            const bool same_run = dump1 == dump1b, same_threads = dump1 == dump4;
            ok = ok && same_run && same_threads;
            extra = std::string("; verify all --seed 7 reproducible across runs: ") + (same_run ? "yes" : "no") +
                    ", across thread counts 1 and 4: " + (same_threads ? "yes" : "no");
        }
        std::printf("criterion %d: %s  %s (%d/%zu checks pass%s)\n", cr.number, ok ? "PASS" : "FAIL", cr.title,
                    passed, prim.size(), extra.c_str());
        if (bad) std::printf("    first failure: %s\n", describe(*bad).c_str());
        if (!supp.empty()) {
            int sp;
            const Check* sb;
            summarize(supp, sp, sb);
            std::printf("    note: supplementary checks %d/%zu pass\n", sp, supp.size());
            if (sb) std::printf("    note: %s\n", describe(*sb).c_str());
        }
        failures += !ok;
    }
    std::printf("%d of %zu criteria pass\n", int(crit.size()) - failures, crit.size());
    return failures ? 1 : 0;
}
