#pragma once

#include <string>
#include <vector>

#include "dq/weights.hpp"

namespace dq {

// One input to a Taylor coefficient: u^upow * gamma.
struct UInput {
  int upow = 0;
  PolyVector gamma;
};

// Sign of the permutation `order` (0-based original indices in their new
// arrangement) restricted to the entries of odd parity; parities[i] is the
// degree of the i-th object.
int shuffle_sign(const std::vector<int>& parities, const std::vector<int>& order);

struct ReportRow {
  std::string label;
  double value = 0.0;
  double sigma = 0.0;
  bool pass = true;
};

struct Report {
  std::string title;
  double tol_sigmas = 3.0;
  double sigma_ceiling = 0.02;
  std::vector<ReportRow> rows;
  bool passed = true;
  double max_sigma = 0.0;

  void add(std::string label, const Meas& residual);
  void finish();  // applies the sigma ceiling and folds row verdicts

  std::string text() const;
  std::string json() const;
};

// The rep (arity n+1, n = sum(k_i + 2 j_i) - 2m + 2) of the m-th Taylor
// coefficient applied to the inputs: sum over extended graphs of
// w_Gamma(j_1..j_m) D_Gamma(gamma_1..gamma_m). Zero operator if the
// bookkeeping admits no output arity. Zero-operator graphs are skipped
// before any weight is integrated.
OpM taylor_coefficient(const std::vector<UInput>& xs, WeightEngine& eng);

// The same pushed down to a plain n-ary operator (IBP normal form, slot 0
// stripped).
OpM taylor_as_op(const std::vector<UInput>& xs, WeightEngine& eng);

// Verifies the morphism relation
//   sum_i +- F_n(..., u dv x_i, ...) - sum_{i!=j} eps F_{n-1}(x_i . x_j, ...)
//   = sum_{I u J = [n]} eps(I,J) (-1)^{|k_I|} F_I { F_J },   F_0 = m,
// coefficient by coefficient with propagated errors.
Report check_linfty(const std::vector<UInput>& xs, WeightEngine& eng, double tol_sigmas = 3.0,
                    double sigma_ceiling = 0.02);

// Verifies the Stokes relation for one graph and u-power assignment:
// tadpole-removal terms against edge contractions and boundary collapses.
Report check_weight_relation(const ExtGraph& g, const std::vector<int>& upows, WeightEngine& eng,
                             double tol_sigmas = 3.0, double sigma_ceiling = 0.02);

// Verifies sigma-invariance of the assembled Taylor coefficient.
Report check_cyclic_invariance(const std::vector<UInput>& xs, WeightEngine& eng,
                               double tol_sigmas = 3.0, double sigma_ceiling = 0.02);

// label helper for report rows
std::string opkey_label(const OpKey& k);

}  // namespace dq
