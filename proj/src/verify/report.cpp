#include "qone/verify/report.hpp"

#include <cstdio>

namespace qone::verify {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

bool Report::pass() const {
    if (checks.empty()) return false;
    for (auto& c : checks)
        if (!c.pass()) return false;
    return true;
}

void Report::append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    quadrature.insert(quadrature.end(), other.quadrature.begin(), other.quadrature.end());
}

QuadStat quad_stat(const std::string& id, const QuadratureResult& q) {
    return {id, q.panels_used, q.abs_error_estimate, q.truncation_bound, q.scale, q.converged};
}

json to_json(const Report& r) {
    json j;
    j["schema"] = 1;
    j["version"] = QONE_VERSION;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["omega"] = r.omega;
    j["tolerances"] = {{"tol", r.tol}, {"suite_tol", r.suite_tol}};
    j["trials"] = r.trials;
    j["fixtures"] = r.fixtures;
    json rows = json::array();
    for (auto& c : r.checks) {
        json row = {{"id", c.id},         {"value", c.value},   {"scale", c.scale}, {"relative", c.relative()},
                    {"threshold", c.threshold}, {"status", c.status}, {"pass", c.pass()}};
        if (!c.diagnostic.empty()) row["diagnostic"] = c.diagnostic;
        rows.push_back(row);
    }
    j["residuals"] = rows;
    json qs = json::array();
    for (auto& q : r.quadrature)
        qs.push_back({{"id", q.id},
                      {"panels", q.panels},
                      {"abs_error", q.abs_error},
                      {"truncation", q.truncation},
                      {"scale", q.scale},
                      {"converged", q.converged}});
    j["quadrature_stats"] = qs;
    j["pass"] = r.pass();
    if (r.wall_time) j["wall_time"] = *r.wall_time;
    return j;
}

std::string to_csv(const Report& r) {
    std::string out = "suite,id,value,scale,relative,threshold,status,diagnostic\n";
    for (auto& c : r.checks) {
        out += csv_field(r.suite) + "," + csv_field(c.id) + "," + num(c.value) + "," + num(c.scale) + "," +
               num(c.relative()) + "," + num(c.threshold) + "," + c.status + "," + csv_field(c.diagnostic) + "\n";
    }
    return out;
}

}  // namespace qone::verify
