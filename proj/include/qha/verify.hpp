#pragma once

#include <string>

#include "qha/qha.hpp"

namespace qha {

// One named verification check. For upper-bound checks `residual <= tolerance`
// iff `pass`; threshold (lower-bound) checks encode the shortfall as the
// residual against tolerance 0.
struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    unsigned seed = 0;
};

// Run the verification checks of one suite ("specfun", "spherical",
// "transform", "plancherel", "operators", "algebra", or "all") over the
// default model pairs (n, nu) = (1, 2.5) and (2, 3.5).
std::vector<CheckResult> run_checks(const std::string& suite,
                                    const VerifyOptions& options = {});

}  // namespace qha
