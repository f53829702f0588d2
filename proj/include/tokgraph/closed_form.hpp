#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tokgraph/toy_model.hpp"

namespace tokgraph {

// Weight on the labeling error inside the published folded bound.
inline constexpr double kFoldedAlphaWeight = 2.5;

// Published closed forms for the three reference partitions.
struct ClosedForm {
  double intra = 0.0;
  double inter = 0.0;
  double bound = 0.0;         // exact expression when available, else series
  bool bound_exact = false;
  int series_order = -1;      // order of the truncated series when !bound_exact
  std::optional<double> series_bound;  // two-class leading-order series, for comparison
  std::string source;
};

// Two-class (s = 2) spaces use the exact two-class expressions; s >= 3 uses
// the multi-class first-order series. Throws ValidationError for s < 2 or an
// explicit partition kind.
ClosedForm closed_form_bounds(const ToySpaceSpec& spec, const PartitionKind& kind);

// Exact published bound polynomials in t = m/n for two classes (scale c = 1,
// alpha weight 5/2).
double mae_bound_polynomial(double t);
double class_bound_polynomial(double t);
double cross_bound_expression(double t);

// Published composition-count formulas for a two-class space, evaluated
// literally from n_{i,1}, n_{i,2}, n_{i,3}.
struct CompositionForms {
  double sum_lambda_sq = 0.0;
  double alpha = 0.0;             // cross term (n_i1+n_i3)(n_i2+n_i3)
  double alpha_shared_only = 0.0;  // alternative cross term n_i3^2
  double bound_folded = 0.0;      // completed-square form, minus C
  double fold_constant = 0.0;     // C = c3^2 (n-m)^2 / (8 n^2)
};

CompositionForms composition_forms(const ToySpaceSpec& spec, const TokenPartition& partition,
                                   double alpha_weight = kFoldedAlphaWeight);

}  // namespace tokgraph
