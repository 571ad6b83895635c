#include "qone/verify/fixtures.hpp"

#include <cmath>
#include <fstream>

#include "qone/errors.hpp"

namespace qone::verify {

json default_fixtures() {
    const double w = 1 / std::sqrt(2.0);
    json f;
    f["omega"] = w;
    f["quadrature"] = {{"panel_tol", 0.0}, {"max_panels", 6000}, {"y_max_cap", 600.0}};
    f["doublesine"] = {{"points", 200}, {"re_min", 0.0}, {"im_max", 5.0}, {"eps", {1e-3, 1e-4}}};
    f["qbeta"] = {{"alpha", 0.4}, {"beta", 0.9}, {"draws", 10}, {"offsets", {-0.7, -0.2}}};
    f["det"] = {
        {"n1", {{"alpha", 0.4}, {"gammas", {0.9}}, {"gamma_primes", {0.0}}}},
        {"n2", {{"alpha", 0.5}, {"gammas", {1.1, 1.6}}, {"gamma_primes", {0.0, 0.3}}}},
        {"n2_supplementary", {{"alpha", 0.5}, {"gammas", {0.5, 0.9}}, {"gamma_primes", {0.0, 0.3}}}},
    };
    f["cocycle"] = {{"qbeta", {{"alpha", 0.4}, {"beta", 0.3}}},
                    {"psi", {{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 1.3}, {"x", 0.3}}},
                    {"chis", {1, -1, 2, -2}},
                    {"samples", 1000}};
    f["heine"] = {{"fixtures", {{{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 1.3}, {"x", 0.3}}}},
                  {"phi_tilde_fixtures",
                   {{{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 1.3}, {"x", 0.3}},
                    {{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 1.1}, {"x", 0.3}}}},
                  {"draws", 5}};
    f["connection"] = {{"fixtures",
                        {{{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 1.3}, {"x", 0.3}},
                         {{"alpha", 0.3}, {"beta", 0.8}, {"gamma", 1.1}, {"x", 0.5}}}},
                       {"draws", 5}};
    f["diffeq"] = {{"fixtures", {{{"alpha", 0.4}, {"beta", 1.2}, {"gamma", 2.0}, {"x", 0.3}}}}, {"draws", 5}};
    f["mellin-sato"] = {{"fixture", {{"alpha", 0.4}, {"beta", 3.0}}},
                        {"supplementary", {{{"alpha", 0.4}, {"beta", 0.9}}, {{"alpha", 0.4}, {"beta", -1.6}}}},
                        {"chis", {1, -1}}};
    f["limit"] = {{"beta", 0.6}, {"gamma", 1.4}, {"x", 0.3}, {"ns", {0, 1, 2}}, {"eps", {1e-3, 1e-4}},
                  {"jacobi", {{"n", 1}, {"a", 0.3}, {"b", 0.2}, {"x", 0.3}}}};
    f["ortho"] = {{"fixture", {{"alpha", 0.3}, {"beta", 6.0}, {"max_degree", 2}}},
                  {"supplementary",
                   {{{"omega", w}, {"alpha", 0.2}, {"beta", 0.15}, {"max_degree", 1}},
                    {{"omega", 2 - std::sqrt(3.0)}, {"alpha", 0.3}, {"beta", 0.2}, {"max_degree", 2}}}},
                  {"moment_identity", {{"max_degree", 3}, {"draws", 5}}}};
    return f;
}

json load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open fixtures file " + path);
    json patch;
    try {
        in >> patch;
    } catch (const json::exception& e) {
        throw DomainError("fixtures file " + path + ": " + e.what());
    }
    if (!patch.is_object()) throw DomainError("fixtures file " + path + ": top level must be an object");
    json f = default_fixtures();
    f.merge_patch(patch);
    return f;
}

}  // namespace qone::verify
