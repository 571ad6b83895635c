#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qone/verify/fixtures.hpp"
#include "qone/verify/report.hpp"

namespace qone::verify {

struct SuiteConfig {
    json fixtures = default_fixtures();
    double tol = 1e-10;        // quadrature tolerance
    double suite_tol = 1e-8;   // threshold for the residual checks without a fixed one
    int trials = 0;            // extra seeded random draws per suite
    std::uint64_t seed = 0;
};

// Suite names accepted by run_suite, "all" excluded.
const std::vector<std::string>& suite_names();

// Runs one suite or "all". Throws DomainError for an unknown name.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace qone::verify
