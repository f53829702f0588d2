#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tokgraph/toy_model.hpp"

namespace tokgraph {

struct OptimalTokenizerSearch {
  double c1 = 1.0;
  double c2 = 1.0;
  // Caps the number of blocks in enumerated partitions; 0 means no cap.
  std::size_t max_block_count = 0;
  // Number of largest eigenvalues left out of sum lambda^2. 0 is the full
  // spectrum; a positive value needs an eigendecomposition per partition.
  std::size_t spectrum_skip = 0;
  // Minimizers listed in the result; the count is always exact.
  std::size_t max_listed = 64;
};

struct PartitionScore {
  std::vector<int> code;  // restricted-growth string over masked views
  double sum_lambda_sq = 0.0;
  double alpha = 0.0;
  double objective = 0.0;
};

struct OptimalTokenizerResult {
  std::uint64_t partitions_enumerated = 0;
  double min_objective = 0.0;
  PartitionScore first_minimizer;
  std::vector<PartitionScore> minimizers;  // in enumeration order, truncated
  std::uint64_t minimizer_count = 0;
  PartitionScore label_partition;
  bool label_attains_minimum = false;
};

// Exhaustive search over every set partition of the masked views for the
// minimum of c1 * sum lambda^2 + c2 * alpha. Requires m = 0 (views only pair
// within a class) and at most 10 views. Ties are judged at 1e-12 relative.
OptimalTokenizerResult verify_optimal_tokenizer(const PointSpace& space, const MaskJoint& joint,
                                                const OptimalTokenizerSearch& search);

nlohmann::json to_json(const OptimalTokenizerResult& result, const OptimalTokenizerSearch& search);

}  // namespace tokgraph
