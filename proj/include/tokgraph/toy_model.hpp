#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tokgraph/matrix.hpp"

namespace tokgraph {

// s classes of n points each; every unordered class pair shares m points and
// no point belongs to three classes.
struct ToySpaceSpec {
  int num_classes = 2;
  int points_per_class = 0;
  int pairwise_overlap = 0;

  // Throws ValidationError naming the violated constraint.
  void validate() const;

  double overlap_ratio() const {
    return static_cast<double>(pairwise_overlap) / points_per_class;
  }
  // Points that carry exactly one label, per class: n - (s-1)m.
  int exclusive_per_class() const { return points_per_class - (num_classes - 1) * pairwise_overlap; }
  // s*n - m*s*(s-1)/2.
  std::size_t total_points() const;
};

// Label set of a point: one class, or the two classes it is shared by.
struct LabelSet {
  int first = 0;
  int second = -1;

  bool shared() const noexcept { return second >= 0; }
  bool contains(int c) const noexcept { return first == c || second == c; }
  bool intersects(const LabelSet& o) const noexcept {
    return contains(o.first) || (o.shared() && contains(o.second));
  }
  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

// Points are laid out as the exclusive points of class 0, 1, ..., s-1,
// followed by the shared points of each class pair (a, b), a < b, in
// lexicographic pair order. Points with the same label set form a "group".
struct PointSpace {
  ToySpaceSpec spec;
  std::vector<LabelSet> labels;               // per point
  std::vector<int> group_of;                  // per point
  std::vector<LabelSet> group_labels;         // per group
  std::vector<std::vector<int>> group_members;
  std::vector<std::vector<int>> class_members;  // class -> n point ids, ascending

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t group_count() const noexcept { return group_labels.size(); }
  int num_classes() const noexcept { return spec.num_classes; }
  // Global id of the index-th member of a class.
  int point_id(int cls, int index) const { return class_members.at(cls).at(index); }
};

PointSpace build_point_space(const ToySpaceSpec& spec);

// Joint masking distribution over ordered (unmasked, masked) point pairs.
struct MaskJoint {
  DenseMatrix joint;
  std::vector<double> unmasked_marginal;  // row sums, M(x1)
  std::vector<double> masked_marginal;    // column sums, M(x2)
};

// Pick a class with probability 1/s, then an ordered pair from P_c x P_c with
// probability 1/n^2. Pairs inside several classes accumulate.
MaskJoint build_mask_joint(const PointSpace& space);

// Block counts for the two-class case: n_{i,1}, n_{i,2}, n_{i,3}.
struct TwoClassComposition {
  int only_first = 0;
  int only_second = 0;
  int shared = 0;
};

// An equivalence-class assignment over the masked views.
struct TokenPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;                 // per masked view
  std::vector<std::vector<int>> composition;  // [block][group] counts

  std::size_t block_count() const noexcept { return blocks.size(); }
  // Requires a two-class space.
  std::vector<TwoClassComposition> two_class_composition() const;
};

struct PartitionKind {
  enum class Type { MaeLike, ClassWise, CrossClass, Explicit };

  Type type = Type::MaeLike;
  int cross_blocks = 0;                       // l, for CrossClass
  std::vector<std::vector<int>> explicit_blocks;

  static PartitionKind mae_like() { return {}; }
  static PartitionKind class_wise() { return {Type::ClassWise, 0, {}}; }
  static PartitionKind cross_class(int l) { return {Type::CrossClass, l, {}}; }
  static PartitionKind from_blocks(std::vector<std::vector<int>> blocks) {
    return {Type::Explicit, 0, std::move(blocks)};
  }
  // Accepts "mae", "class", "cross:<l>".
  static PartitionKind parse(const std::string& text);
  std::string name() const;
};

TokenPartition make_partition(const PointSpace& space, const PartitionKind& kind);

// weight(x1, S_i) = sum_{x2 in S_i} M(x1, x2); rows are unmasked views,
// columns are blocks.
DenseMatrix aggregate_mask_graph(const MaskJoint& joint, const TokenPartition& partition);

// Augmentation graph over unmasked views. pair_mass(x1, x1') is the
// probability that a positive pair is (x1, x1'), i.e.
// sum_i M(x1,S_i) M(x1',S_i) / p(S_i); it sums to one and its row sums are
// M(x1). normalized is pair_mass / sqrt(M(x1) M(x1')).
struct AugmentationMatrix {
  DenseMatrix normalized;
  DenseMatrix pair_mass;
};

// p(S_i) is the masked-marginal mass of the block. Throws ValidationError for
// a block with zero mass or a view with zero marginal.
AugmentationMatrix build_augmentation_matrix(const MaskJoint& joint, const TokenPartition& partition);

struct SpectrumSums {
  double frobenius = 0.0;
  std::optional<double> eigen;  // sum of squared Jacobi eigenvalues
};

// Sum of squared eigenvalues of a symmetric matrix via the Frobenius norm;
// cross_check adds the eigensolver route. Throws on asymmetry above 1e-9.
SpectrumSums spectrum_sum_squares(const DenseMatrix& a, bool cross_check = false);

// Probability that a positive pair has disjoint label sets. Shared points
// count as same-class with either of their classes.
double labeling_error(const PointSpace& space, const AugmentationMatrix& a);

// c1 * sum_lambda_sq + c2 * alpha.
double downstream_bound(double sum_lambda_sq, double alpha, double c1, double c2);

// Mean pair_mass over distinct exclusive view pairs of the same class
// (intra) and of different classes (inter); nullopt when no such pair exists.
struct EdgeWeights {
  std::optional<double> intra;
  std::optional<double> inter;
};
EdgeWeights edge_weights(const PointSpace& space, const AugmentationMatrix& a);

}  // namespace tokgraph
