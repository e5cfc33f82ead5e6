#pragma once

#include <string>
#include <vector>

namespace qcrb::cli {

/// One self-check: a measured deviation against its allowed tolerance.
struct ValidationCheck {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
    std::string note;
};

/// Runs the oracle suite: spectral quadrature vs closed forms, analytic vs
/// finite-difference Jacobian, Fock vs Gaussian Fisher factor, closed-form
/// vs matrix-inverse variances, modal-overlap oracle, the path-coefficient
/// regression (with the documented k5 deviation), and the end-to-end σ_L
/// snapshot.
std::vector<ValidationCheck> run_validation_suite();

/// Fixed-width pass/fail table with tolerances and measured margins.
std::string validation_report(const std::vector<ValidationCheck>& checks);

bool all_passed(const std::vector<ValidationCheck>& checks);

}  // namespace qcrb::cli
