#pragma once
#include <string>
#include <vector>

namespace dipsim {

/// One verified claim of the regression suite: observed vs expected at a
/// fixed tolerance, plus a human-readable detail line.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Tolerances and switches of the regression suite. Defaults are the
/// shipped gate; tests tamper with them to check that failures surface.
struct AcceptanceOptions {
  bool fast = false;           // skip the minute-scale oracle criteria
  double xi2_tol = 1e-10;
  double xi3_tol = 0.01;
  double equal_coupling_value = 0.911;
  double equal_coupling_value_tol = 0.01;   // relative
  double equal_coupling_pairwise_tol = 0.005;
  double sign_change_omega = 1.35;
  double sign_change_tol = 0.02;            // relative
  double region_bounds_tol = 0.02;          // relative
  double graph_fidelity_expected = 0.965;
  double graph_fidelity_tol = 0.01;
  double oracle_vs_closed_tol = 1e-3;
  double purity_r2_min = 0.99;
  double afms_overlap_min = 0.95;
  double afma_overlap_min = 0.95;
  double ghz_overlap_min = 0.9;
  double w_overlap_min = 0.9;
  double debye_tol = 0.002;                 // relative, vs 6.94
  double gamma_independence_tol = 1e-12;
  double far_detuned_tol = 0.05;            // relative, vs 1/(2 d^3)
  double sqrtn_scaling_tol = 0.30;          // relative
  double sweet_spot_field = 3.05;
  double sweet_spot_field_tol = 0.02;       // relative
  double sweet_spot_dipole = -0.16;
  double sweet_spot_dipole_tol = 0.01;      // absolute
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// Formats one line per criterion; exit status convention: 0 iff all pass.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace dipsim
