#pragma once

#include <string>
#include <vector>

namespace vaxfront {

struct CriterionResult {
    int id = 0;
    std::string tag;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    /// Wall-clock limit, part of the pass condition.
    double budget_seconds = 0.0;
};

struct AcceptanceOptions {
    /// Tags to run; empty runs everything.
    std::vector<std::string> only;
    /// Perturb the bundled counterexample and cycle fixtures so that the
    /// checks relying on them must fail.
    bool inject_fault = false;
    /// Worker threads for frontier sweeps (0 = automatic).
    int threads = 0;
};

/// Tags in criterion order: eigen, saddle, cycle, cordon, convexity,
/// sylvester, invariance, reducible, configuration, mwis, discretization, ray.
std::vector<std::string> acceptance_tags();

/// Throws ValidationError on an unknown tag.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 cycle  ..." style report line.
std::string format_result(const CriterionResult& r);

} // namespace vaxfront
