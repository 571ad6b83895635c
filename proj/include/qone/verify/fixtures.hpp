#pragma once

#include <string>

#include "json.hpp"

namespace qone::verify {

using nlohmann::json;

// Compiled-in fixtures: top-level "omega" plus one record per suite.
json default_fixtures();

// Defaults with the file applied as a JSON merge patch.
json load_fixtures(const std::string& path);

}  // namespace qone::verify
