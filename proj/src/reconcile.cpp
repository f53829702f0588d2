#include "tokgraph/reconcile.hpp"

#include <cmath>

#include "tokgraph/error.hpp"

namespace tokgraph {

namespace {

std::optional<std::string> small_fraction(double x) {
  if (!std::isfinite(x) || x <= 0.0) return std::nullopt;
  for (int q = 1; q <= 6; ++q)
    for (int p = 1; p <= 12 * q; ++p)
      if (std::abs(x - static_cast<double>(p) / q) <= 1e-9 * std::max(1.0, x))
        return std::to_string(p) + "/" + std::to_string(q);
  return std::nullopt;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Reconciliation reconcile_value(std::string quantity, std::string candidate, double brute,
                               double closed) {
  Reconciliation r;
  r.quantity = std::move(quantity);
  r.candidate = std::move(candidate);
  r.brute = brute;
  r.closed = closed;
  r.abs_diff = std::abs(brute - closed);
  if (brute == 0.0 && closed == 0.0) {
    r.ratio = 1.0;
  } else if (closed != 0.0) {
    r.ratio = brute / closed;
  }
  r.agrees = r.abs_diff <= 1e-9 * std::max(std::abs(brute), std::abs(closed)) ||
             (brute == 0.0 && closed == 0.0);
  if (r.ratio) r.constant_factor = small_fraction(*r.ratio);
  return r;
}

BoundReport reconcile(const ToySpaceSpec& spec, const PartitionKind& kind, double c1, double c2,
                      bool eigen_cross_check) {
  const PointSpace space = build_point_space(spec);
  const MaskJoint joint = build_mask_joint(space);
  const TokenPartition partition = make_partition(space, kind);
  const AugmentationMatrix aug = build_augmentation_matrix(joint, partition);

  BoundReport r;
  r.spec = spec;
  r.partition = kind.name();
  r.block_count = partition.block_count();
  r.c1 = c1;
  r.c2 = c2;

  const SpectrumSums spectrum =
      spectrum_sum_squares(aug.normalized, eigen_cross_check && space.size() <= 500);
  r.sum_lambda_sq = spectrum.frobenius;
  r.sum_lambda_sq_eigen = spectrum.eigen;
  r.alpha = labeling_error(space, aug);
  r.bound_raw = downstream_bound(r.sum_lambda_sq, r.alpha, c1, c2);
  const EdgeWeights weights = edge_weights(space, aug);
  r.intra_weight = weights.intra;
  r.inter_weight = weights.inter;

  if (spec.num_classes >= 2 && kind.type != PartitionKind::Type::Explicit) {
    r.closed = closed_form_bounds(spec, kind);
    if (r.intra_weight)
      r.reconciliation.push_back(reconcile_value("w_intra", r.closed->source, *r.intra_weight, r.closed->intra));
    if (r.inter_weight)
      r.reconciliation.push_back(reconcile_value("w_inter", r.closed->source, *r.inter_weight, r.closed->inter));
    r.reconciliation.push_back(reconcile_value(
        "bound", r.closed->bound_exact ? "exact expression" : "series order " + std::to_string(r.closed->series_order),
        r.bound_raw, r.closed->bound));
    if (r.closed->series_bound)
      r.reconciliation.push_back(reconcile_value("bound", "leading series", r.bound_raw, *r.closed->series_bound));
  }

  if (spec.num_classes == 2) {
    r.composition = composition_forms(spec, partition);
    r.bound_appendix = r.composition->bound_folded;
    r.reconciliation.push_back(
        reconcile_value("sum_lambda_sq", "composition formula", r.sum_lambda_sq, r.composition->sum_lambda_sq));
    const Reconciliation cross_full =
        reconcile_value("alpha", "cross term (n_i1+n_i3)(n_i2+n_i3)", r.alpha, r.composition->alpha);
    const Reconciliation cross_shared =
        reconcile_value("alpha", "cross term n_i3^2", r.alpha, r.composition->alpha_shared_only);
    r.reconciliation.push_back(cross_full);
    r.reconciliation.push_back(cross_shared);
    if (cross_full.agrees && cross_shared.agrees)
      r.alpha_cross_term_match = "both";
    else if (cross_full.agrees)
      r.alpha_cross_term_match = "(n_i1+n_i3)(n_i2+n_i3)";
    else if (cross_shared.agrees)
      r.alpha_cross_term_match = "n_i3^2";
    else
      r.alpha_cross_term_match = "neither";
    r.reconciliation.push_back(reconcile_value("bound", "folded composition form", r.bound_raw, *r.bound_appendix));
    if (r.closed)
      r.reconciliation.push_back(
          reconcile_value("bound_appendix", "exact expression", *r.bound_appendix, r.closed->bound));
  }
  return r;
}

nlohmann::json to_json(const ToySpaceSpec& spec) {
  return {{"num_classes", spec.num_classes},
          {"points_per_class", spec.points_per_class},
          {"pairwise_overlap", spec.pairwise_overlap},
          {"overlap_ratio", spec.overlap_ratio()},
          {"total_points", spec.total_points()}};
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["spec"] = to_json(r.spec);
  j["partition"] = r.partition;
  j["block_count"] = r.block_count;
  j["constants"] = {{"c1", r.c1}, {"c2", r.c2}, {"c3", kFoldedAlphaWeight}, {"c", 1.0}};
  j["brute_force"] = {{"sum_lambda_sq", r.sum_lambda_sq},
                      {"sum_lambda_sq_eigen", optional_json(r.sum_lambda_sq_eigen)},
                      {"alpha", r.alpha},
                      {"bound_raw", r.bound_raw},
                      {"intra_weight", optional_json(r.intra_weight)},
                      {"inter_weight", optional_json(r.inter_weight)}};
  if (r.sum_lambda_sq_eigen)
    j["brute_force"]["spectrum_gap"] = std::abs(*r.sum_lambda_sq_eigen - r.sum_lambda_sq);
  j["bound_appendix"] = optional_json(r.bound_appendix);
  if (r.closed) {
    j["closed_form"] = {{"intra_weight", r.closed->intra},
                        {"inter_weight", r.closed->inter},
                        {"bound", r.closed->bound},
                        {"bound_exact", r.closed->bound_exact},
                        {"series_order", r.closed->bound_exact ? nlohmann::json(nullptr)
                                                               : nlohmann::json(r.closed->series_order)},
                        {"series_bound", optional_json(r.closed->series_bound)},
                        {"source", r.closed->source}};
  } else {
    j["closed_form"] = nullptr;
  }
  if (r.composition) {
    j["composition_forms"] = {{"sum_lambda_sq", r.composition->sum_lambda_sq},
                              {"alpha", r.composition->alpha},
                              {"alpha_shared_only", r.composition->alpha_shared_only},
                              {"bound_folded", r.composition->bound_folded},
                              {"fold_constant", r.composition->fold_constant}};
  }
  j["alpha_cross_term_match"] = optional_json(r.alpha_cross_term_match);
  auto& rec = j["reconciliation"] = nlohmann::json::array();
  for (const Reconciliation& e : r.reconciliation) {
    rec.push_back({{"quantity", e.quantity},
                   {"candidate", e.candidate},
                   {"brute", e.brute},
                   {"closed", e.closed},
                   {"abs_diff", e.abs_diff},
                   {"ratio", optional_json(e.ratio)},
                   {"agrees", e.agrees},
                   {"constant_factor", optional_json(e.constant_factor)}});
  }
  return j;
}

}  // namespace tokgraph
