#pragma once

#include <string>
#include <vector>

namespace srrw {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the built-in validation suite (checks A1..A10): detailed balance of
// the interaction kernel, its stationary law against a power-iteration
// oracle, mean-field convergence, the fixed-point Jacobian, CLT covariance
// against both closed and integral forms, the Loewner ordering in alpha, the
// variance-reduction bound, scale invariance, ensemble error orderings, and
// truncation plus reweighting behavior.
//
// quick shrinks the expensive ensembles and horizons so the suite finishes
// in well under two minutes (tolerances widen where the statistical noise
// floor requires it; each detail string reports the numbers actually
// achieved). inject_dbe_break adds a deliberately non-reversible kernel to
// the detailed-balance cases as a negative control; A1 must then fail.
std::vector<CheckResult> run_acceptance(bool quick, bool inject_dbe_break);

// Same, restricted to the listed check ids (empty list means all).
std::vector<CheckResult> run_acceptance(bool quick, bool inject_dbe_break,
                                        const std::vector<std::string>& only);

} // namespace srrw
