#pragma once

#include <string>
#include <vector>

namespace geosteer {

/// Testing-only fault injection: perturbs one computation path inside the
/// suite so a correct harness must report a violation.
enum class CheckFault { None, Controls, Hamiltonian, Curvature };

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Runs the built-in identity suite: control-norm identity, flow
/// conservation, closed-form first integrals, reduced-flow reproduction,
/// curvature regressions, the geodesic-curvature spot value, the observed
/// RK4 order and a planner recovery case. Deterministic (fixed RNG seed).
std::vector<CheckResult> run_check_suite(CheckFault fault = CheckFault::None);

CheckFault parse_check_fault(const std::string& s);

}  // namespace geosteer
