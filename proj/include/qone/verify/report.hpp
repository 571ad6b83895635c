#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qone/contour.hpp"

namespace qone::verify {

using nlohmann::json;

// One residual row. relative = value / scale; pass iff relative <= threshold.
struct Check {
    std::string id;
    double value = 0;
    double scale = 1;
    double threshold = 0;
    std::string status;  // pass | fail | skipped(infeasible) | error
    std::string diagnostic;
    bool pass() const { return status == "pass"; }
    double relative() const { return scale > 0 ? value / scale : (value == 0 ? 0.0 : std::numeric_limits<double>::infinity()); }
};

struct QuadStat {
    std::string id;
    int panels = 0;
    double abs_error = 0, truncation = 0, scale = 0;
    bool converged = false;
};

struct Report {
    std::string suite;
    json fixtures;
    double omega = 0, tol = 0, suite_tol = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<QuadStat> quadrature;
    std::optional<double> wall_time;

    bool pass() const;
    void append(const Report& other);
};

json to_json(const Report& r);
std::string to_csv(const Report& r);

QuadStat quad_stat(const std::string& id, const QuadratureResult& q);

}  // namespace qone::verify
