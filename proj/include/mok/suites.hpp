#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mok/curvature.hpp"

namespace mok {

struct Config {
    double tol_rank = 1e-8;
    double tol_jac = 1e-6;
    std::uint64_t seed = 20259;
    int samples = 200;
    SigmaConvention convention = SigmaConvention::DType;
    OffDiagMode offdiag = OffDiagMode::Zero;
    int max_dim = 30;
};

struct SuiteResult {
    std::string name;
    bool ok = false;
    nlohmann::ordered_json details;
};

/// Verification suites: table, injectivity, recovery, decomposition, schur,
/// membership, join, filtration. run_suite throws ParseError on an unknown
/// name.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const Config& cfg);

/// The family list behind the dimension-table checks.
const std::vector<std::string>& table_families();

} // namespace mok
