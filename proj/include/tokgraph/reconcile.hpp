#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tokgraph/closed_form.hpp"
#include "tokgraph/toy_model.hpp"

namespace tokgraph {

// One brute-force value set against one closed-form candidate.
struct Reconciliation {
  std::string quantity;
  std::string candidate;
  double brute = 0.0;
  double closed = 0.0;
  double abs_diff = 0.0;
  std::optional<double> ratio;            // brute / closed; 1 when both are zero
  bool agrees = false;                    // relative error <= 1e-9
  std::optional<std::string> constant_factor;  // "p/q" when ratio is a small fraction
};

Reconciliation reconcile_value(std::string quantity, std::string candidate, double brute,
                               double closed);

struct BoundReport {
  ToySpaceSpec spec;
  std::string partition;
  std::size_t block_count = 0;
  double c1 = 1.0;
  double c2 = 2.5;

  double sum_lambda_sq = 0.0;
  std::optional<double> sum_lambda_sq_eigen;
  double alpha = 0.0;
  double bound_raw = 0.0;
  std::optional<double> bound_appendix;  // folded composition form (two classes)
  std::optional<double> intra_weight;
  std::optional<double> inter_weight;

  std::optional<ClosedForm> closed;
  std::optional<CompositionForms> composition;
  std::vector<Reconciliation> reconciliation;
  // Which labeling-error cross term reproduces the brute-force alpha.
  std::optional<std::string> alpha_cross_term_match;
};

// Builds the space, joint, partition and augmentation graph, evaluates
// sum lambda^2, alpha and the bound, then sets every available closed form
// against the brute-force values. Eigen cross-check runs when requested and
// the space has at most 500 views.
BoundReport reconcile(const ToySpaceSpec& spec, const PartitionKind& kind, double c1 = 1.0,
                      double c2 = 2.5, bool eigen_cross_check = true);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ToySpaceSpec& spec);

}  // namespace tokgraph
