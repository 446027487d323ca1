#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace toricount {

enum class VerifyBudget { small, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
  double seconds = 0;
  double time_limit_seconds = 0;
};

/// Suite names: classical-p1, p2-identity, campana-p1, convergence-p2,
/// euler-two-path, moebius-laws, factorisation, curve-shadows, structural.
std::vector<std::string> suite_names();

/// Runs one named suite, or every suite for "all". The full budget uses the
/// acceptance parameters; the small budget trims the largest cases.
std::vector<CriterionResult> run_suite(std::string_view name, VerifyBudget budget = VerifyBudget::full);

CriterionResult verify_classical_p1(VerifyBudget budget);
CriterionResult verify_p2_identity(VerifyBudget budget);
CriterionResult verify_campana_p1(VerifyBudget budget);
CriterionResult verify_convergence_p2(VerifyBudget budget);
CriterionResult verify_euler_two_path(VerifyBudget budget);
CriterionResult verify_moebius_laws(VerifyBudget budget);
CriterionResult verify_factorisation(VerifyBudget budget);
CriterionResult verify_curve_shadows(VerifyBudget budget);
CriterionResult verify_structural(VerifyBudget budget);

}  // namespace toricount
