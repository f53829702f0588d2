#include "tokgraph/theorem1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tokgraph/error.hpp"
#include "tokgraph/jacobi.hpp"
#include "tokgraph/set_partitions.hpp"

namespace tokgraph {

namespace {

constexpr std::size_t kMaxViews = 10;

PartitionScore score(const PointSpace& space, const MaskJoint& joint, const std::vector<int>& code,
                     const OptimalTokenizerSearch& search) {
  const TokenPartition partition = make_partition(space, PartitionKind::from_blocks(blocks_from_code(code)));
  const AugmentationMatrix aug = build_augmentation_matrix(joint, partition);
  PartitionScore s;
  s.code = code;
  if (search.spectrum_skip == 0) {
    s.sum_lambda_sq = aug.normalized.frobenius_squared();
  } else {
    const auto eig = symmetric_eigenvalues(aug.normalized).eigenvalues;
    for (std::size_t i = std::min(search.spectrum_skip, eig.size()); i < eig.size(); ++i)
      s.sum_lambda_sq += eig[i] * eig[i];
  }
  s.alpha = labeling_error(space, aug);
  s.objective = search.c1 * s.sum_lambda_sq + search.c2 * s.alpha;
  return s;
}

bool ties(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::string code_string(const std::vector<int>& code) {
  std::string s;
  for (int c : code) s += std::to_string(c) + (c > 9 ? "," : "");
  return s;
}

nlohmann::json score_json(const PartitionScore& s) {
  return {{"code", s.code},
          {"blocks", blocks_from_code(s.code)},
          {"sum_lambda_sq", s.sum_lambda_sq},
          {"alpha", s.alpha},
          {"objective", s.objective}};
}

}  // namespace

OptimalTokenizerResult verify_optimal_tokenizer(const PointSpace& space, const MaskJoint& joint,
                                                const OptimalTokenizerSearch& search) {
  if (space.spec.pairwise_overlap != 0)
    throw ValidationError("optimal-tokenizer search assumes M(x1|x2) > 0 only within a class; "
                          "needs m = 0, got m=" + std::to_string(space.spec.pairwise_overlap));
  if (space.size() > kMaxViews)
    throw ValidationError("optimal-tokenizer search enumerates all set partitions; " +
                          std::to_string(space.size()) + " views exceeds the limit of " +
                          std::to_string(kMaxViews));
  if (!(search.c1 > 0.0) || !(search.c2 > 0.0))
    throw ValidationError("constants c1, c2 must be positive");

  OptimalTokenizerResult result;
  auto admitted = [&](const RestrictedGrowthStrings& rgs) {
    return search.max_block_count == 0 || rgs.block_count() <= search.max_block_count;
  };

  std::vector<PartitionScore> scores;
  RestrictedGrowthStrings rgs(space.size());
  do {
    if (admitted(rgs)) scores.push_back(score(space, joint, rgs.current(), search));
  } while (rgs.next());
  if (scores.empty()) throw ValidationError("no partition satisfies the block-count cap");

  result.partitions_enumerated = scores.size();
  result.min_objective = std::ranges::min(scores, {}, &PartitionScore::objective).objective;
  for (PartitionScore& s : scores) {
    if (!ties(s.objective, result.min_objective)) continue;
    if (result.minimizer_count++ == 0) result.first_minimizer = s;
    if (result.minimizers.size() < search.max_listed) result.minimizers.push_back(std::move(s));
  }

  std::vector<int> label_code(space.size());
  for (std::size_t v = 0; v < space.size(); ++v) label_code[v] = space.labels[v].first;
  result.label_partition = score(space, joint, label_code, search);
  result.label_attains_minimum =
      result.label_partition.objective <= result.min_objective ||
      ties(result.label_partition.objective, result.min_objective);
  return result;
}

nlohmann::json to_json(const OptimalTokenizerResult& r, const OptimalTokenizerSearch& search) {
  nlohmann::json j;
  j["constants"] = {{"c1", search.c1}, {"c2", search.c2}};
  j["max_block_count"] = search.max_block_count;
  j["spectrum_skip"] = search.spectrum_skip;
  j["partitions_enumerated"] = r.partitions_enumerated;
  j["min_objective"] = r.min_objective;
  j["minimizer_count"] = r.minimizer_count;
  j["first_minimizer"] = score_json(r.first_minimizer);
  auto& list = j["minimizers"] = nlohmann::json::array();
  for (const auto& s : r.minimizers) list.push_back(code_string(s.code));
  j["label_partition"] = score_json(r.label_partition);
  j["label_attains_minimum"] = r.label_attains_minimum;
  return j;
}

}  // namespace tokgraph
