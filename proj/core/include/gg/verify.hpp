#pragma once

#include <string>
#include <vector>

namespace gg {

/// One self-contained verification of a pinned library property.  The
/// twelve checks below re-derive their expected values independently of
/// the code under test (hand-built fixtures, brute-force recomputation,
/// deterministic random corpora) and never bend a tolerance to pass:
/// a failing check reports the measured values in `details`.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string details;
};

constexpr int criteria_count = 12;

/// Runs one criterion (1-based id as listed in run_all_criteria); throws
/// Error for an unknown id.
CriterionResult run_criterion(int id);

/// Runs all twelve:
///   1  the 2-form operator of a 4-form: definition vs index contraction
///   2  volume form on R^4 acts as the Hodge star on 2-forms
///   3  quaternionic 4-form spectra and eigenvalue ratios
///   4  octonionic forms: spectra, duality, restriction identities
///   5  alternated trace forms of so(4), so(5), u(2)
///   6  symmetric-power pairing contractions and the spin-m eigenvalue
///   7  harmonic operator algebra on monomials through degree 6
///   8  rank-2 nilpotent worked example, exact values end to end
///   9  random nilpotent prepotential property suite
///   10 spin-3 factor table and both partial-flatness pipelines
///   11 expression parser round trip and diagnostics
///   12 negative controls reject bad inputs by name
std::vector<CriterionResult> run_all_criteria();

}  // namespace gg
