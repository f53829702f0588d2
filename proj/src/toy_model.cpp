#include "tokgraph/toy_model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tokgraph/error.hpp"
#include "tokgraph/jacobi.hpp"

namespace tokgraph {

void ToySpaceSpec::validate() const {
  if (num_classes < 1)
    throw ValidationError("num_classes must be >= 1, got " + std::to_string(num_classes));
  if (points_per_class < 1)
    throw ValidationError("points_per_class must be >= 1, got " + std::to_string(points_per_class));
  if (pairwise_overlap < 0)
    throw ValidationError("pairwise_overlap must be >= 0, got " + std::to_string(pairwise_overlap));
  if (pairwise_overlap > points_per_class)
    throw ValidationError("pairwise_overlap m=" + std::to_string(pairwise_overlap) +
                          " exceeds points_per_class n=" + std::to_string(points_per_class));
  if (num_classes == 1 && pairwise_overlap != 0)
    throw ValidationError("pairwise_overlap must be 0 with a single class");
  if (exclusive_per_class() < 0)
    throw ValidationError("(s-1)*m = " + std::to_string((num_classes - 1) * pairwise_overlap) +
                          " exceeds points_per_class n=" + std::to_string(points_per_class));
}

std::size_t ToySpaceSpec::total_points() const {
  const auto s = static_cast<std::size_t>(num_classes);
  return s * static_cast<std::size_t>(points_per_class) -
         static_cast<std::size_t>(pairwise_overlap) * s * (s - 1) / 2;
}

PointSpace build_point_space(const ToySpaceSpec& spec) {
  spec.validate();
  PointSpace space;
  space.spec = spec;
  const int s = spec.num_classes;
  space.class_members.resize(static_cast<std::size_t>(s));

  auto add_group = [&](LabelSet labels, int count) {
    const int group = static_cast<int>(space.group_labels.size());
    space.group_labels.push_back(labels);
    auto& members = space.group_members.emplace_back();
    for (int i = 0; i < count; ++i) {
      const int id = static_cast<int>(space.labels.size());
      space.labels.push_back(labels);
      space.group_of.push_back(group);
      members.push_back(id);
      space.class_members[labels.first].push_back(id);
      if (labels.shared()) space.class_members[labels.second].push_back(id);
    }
  };

  for (int c = 0; c < s; ++c) add_group({c, -1}, spec.exclusive_per_class());
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) add_group({a, b}, spec.pairwise_overlap);
  return space;
}

MaskJoint build_mask_joint(const PointSpace& space) {
  const std::size_t n_points = space.size();
  const double n = space.spec.points_per_class;
  const double pair_prob = 1.0 / (space.num_classes() * n * n);
  MaskJoint out;
  out.joint = DenseMatrix(n_points, n_points);
  for (const auto& members : space.class_members)
    for (int x1 : members)
      for (int x2 : members) out.joint(x1, x2) += pair_prob;
  out.unmasked_marginal = out.joint.row_sums();
  out.masked_marginal = out.joint.col_sums();
  return out;
}

std::vector<TwoClassComposition> TokenPartition::two_class_composition() const {
  std::vector<TwoClassComposition> out;
  out.reserve(composition.size());
  for (const auto& counts : composition) {
    if (counts.size() != 3)
      throw ValidationError("two-class composition needs a two-class space (3 groups), got " +
                            std::to_string(counts.size()) + " groups");
    out.push_back({counts[0], counts[1], counts[2]});
  }
  return out;
}

PartitionKind PartitionKind::parse(const std::string& text) {
  if (text == "mae") return mae_like();
  if (text == "class") return class_wise();
  if (text.starts_with("cross:")) {
    const std::string digits = text.substr(6);
    std::size_t used = 0;
    int l = 0;
    try {
      l = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size() || l < 1)
      throw ValidationError("cross partition needs a positive block count, got '" + text + "'");
    return cross_class(l);
  }
  throw ValidationError("unknown partition '" + text + "' (expected mae, class, or cross:<l>)");
}

std::string PartitionKind::name() const {
  switch (type) {
    case Type::MaeLike: return "mae";
    case Type::ClassWise: return "class";
    case Type::CrossClass: return "cross:" + std::to_string(cross_blocks);
    case Type::Explicit: return "explicit";
  }
  return "unknown";
}

namespace {

TokenPartition finish_partition(const PointSpace& space, std::vector<std::vector<int>> blocks) {
  const std::size_t n_points = space.size();
  TokenPartition p;
  p.block_of.assign(n_points, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ValidationError("block " + std::to_string(b) + " is empty");
    for (int v : blocks[b]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n_points)
        throw ValidationError("view id " + std::to_string(v) + " out of range [0, " +
                              std::to_string(n_points) + ")");
      if (p.block_of[v] != -1)
        throw ValidationError("view " + std::to_string(v) + " appears in two blocks");
      p.block_of[v] = static_cast<int>(b);
    }
  }
  for (std::size_t v = 0; v < n_points; ++v)
    if (p.block_of[v] == -1)
      throw ValidationError("view " + std::to_string(v) + " is not covered by any block");

  p.composition.assign(blocks.size(), std::vector<int>(space.group_count(), 0));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b]) ++p.composition[b][space.group_of[v]];
  p.blocks = std::move(blocks);
  return p;
}

}  // namespace

TokenPartition make_partition(const PointSpace& space, const PartitionKind& kind) {
  const int s = space.num_classes();
  const int m = space.spec.pairwise_overlap;
  const int exclusive = space.spec.exclusive_per_class();
  std::vector<std::vector<int>> blocks;

  switch (kind.type) {
    case PartitionKind::Type::MaeLike:
      for (std::size_t v = 0; v < space.size(); ++v) blocks.push_back({static_cast<int>(v)});
      break;

    case PartitionKind::Type::ClassWise: {
      if (m % 2 != 0)
        throw ValidationError("class partition splits each shared set in half; m=" +
                              std::to_string(m) + " must be even");
      blocks.resize(static_cast<std::size_t>(s));
      for (std::size_t g = 0; g < space.group_count(); ++g) {
        const LabelSet labels = space.group_labels[g];
        const auto& members = space.group_members[g];
        if (!labels.shared()) {
          blocks[labels.first].insert(blocks[labels.first].end(), members.begin(), members.end());
          continue;
        }
        const std::size_t half = members.size() / 2;
        blocks[labels.first].insert(blocks[labels.first].end(), members.begin(), members.begin() + half);
        blocks[labels.second].insert(blocks[labels.second].end(), members.begin() + half, members.end());
      }
      break;
    }

    case PartitionKind::Type::CrossClass: {
      const int l = kind.cross_blocks;
      if (l < 1) throw ValidationError("cross partition needs l >= 1, got " + std::to_string(l));
      if (exclusive % l != 0 || m % l != 0)
        throw ValidationError("cross:" + std::to_string(l) + " needs l to divide n-(s-1)m=" +
                              std::to_string(exclusive) + " and m=" + std::to_string(m));
      blocks.resize(static_cast<std::size_t>(l));
      for (const auto& members : space.group_members) {
        const std::size_t chunk = members.size() / static_cast<std::size_t>(l);
        for (std::size_t i = 0; i < members.size(); ++i) blocks[i / chunk].push_back(members[i]);
      }
      break;
    }

    case PartitionKind::Type::Explicit:
      blocks = kind.explicit_blocks;
      break;
  }
  return finish_partition(space, std::move(blocks));
}

DenseMatrix aggregate_mask_graph(const MaskJoint& joint, const TokenPartition& partition) {
  const std::size_t n_views = joint.joint.rows();
  if (partition.block_of.size() != joint.joint.cols())
    throw ValidationError("partition covers " + std::to_string(partition.block_of.size()) +
                          " masked views, joint has " + std::to_string(joint.joint.cols()));
  DenseMatrix table(n_views, partition.block_count());
  for (std::size_t x1 = 0; x1 < n_views; ++x1)
    for (std::size_t b = 0; b < partition.block_count(); ++b)
      for (int x2 : partition.blocks[b]) table(x1, b) += joint.joint(x1, x2);
  return table;
}

AugmentationMatrix build_augmentation_matrix(const MaskJoint& joint, const TokenPartition& partition) {
  const DenseMatrix table = aggregate_mask_graph(joint, partition);
  const std::size_t n_views = table.rows();
  const std::size_t n_blocks = table.cols();

  std::vector<double> block_mass(n_blocks, 0.0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    for (int x2 : partition.blocks[b]) block_mass[b] += joint.masked_marginal[x2];
    if (!(block_mass[b] > 0.0))
      throw ValidationError("block " + std::to_string(b) + " has zero masked-marginal mass");
  }
  for (std::size_t x = 0; x < n_views; ++x)
    if (!(joint.unmasked_marginal[x] > 0.0))
      throw ValidationError("unmasked view " + std::to_string(x) + " has zero marginal");

  AugmentationMatrix out;
  out.pair_mass = DenseMatrix(n_views, n_views);
  for (std::size_t i = 0; i < n_views; ++i) {
    for (std::size_t j = i; j < n_views; ++j) {
      double v = 0.0;
      for (std::size_t b = 0; b < n_blocks; ++b) v += table(i, b) * table(j, b) / block_mass[b];
      out.pair_mass(i, j) = v;
      out.pair_mass(j, i) = v;
    }
  }
  out.normalized = DenseMatrix(n_views, n_views);
  for (std::size_t i = 0; i < n_views; ++i)
    for (std::size_t j = 0; j < n_views; ++j)
      out.normalized(i, j) =
          out.pair_mass(i, j) / std::sqrt(joint.unmasked_marginal[i] * joint.unmasked_marginal[j]);
  return out;
}

SpectrumSums spectrum_sum_squares(const DenseMatrix& a, bool cross_check) {
  if (!a.square()) throw ValidationError("spectrum needs a square matrix");
  if (const double asym = a.max_asymmetry(); asym > 1e-9)
    throw ValidationError("spectrum needs a symmetric matrix (asymmetry " + std::to_string(asym) + ")");
  SpectrumSums out;
  out.frobenius = a.frobenius_squared();
  if (cross_check) {
    double s = 0.0;
    for (double lambda : symmetric_eigenvalues(a).eigenvalues) s += lambda * lambda;
    out.eigen = s;
  }
  return out;
}

double labeling_error(const PointSpace& space, const AugmentationMatrix& a) {
  double alpha = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = 0; j < space.size(); ++j)
      if (!space.labels[i].intersects(space.labels[j])) alpha += a.pair_mass(i, j);
  return alpha;
}

double downstream_bound(double sum_lambda_sq, double alpha, double c1, double c2) {
  if (!std::isfinite(sum_lambda_sq) || !std::isfinite(alpha))
    throw ValidationError("bound inputs must be finite");
  if (!(c1 > 0.0) || !(c2 > 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
    throw ValidationError("bound constants c1, c2 must be positive and finite");
  return c1 * sum_lambda_sq + c2 * alpha;
}

EdgeWeights edge_weights(const PointSpace& space, const AugmentationMatrix& a) {
  double intra = 0.0, inter = 0.0;
  std::size_t n_intra = 0, n_inter = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.labels[i].shared()) continue;
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (i == j || space.labels[j].shared()) continue;
      if (space.labels[i].first == space.labels[j].first) {
        intra += a.pair_mass(i, j);
        ++n_intra;
      } else {
        inter += a.pair_mass(i, j);
        ++n_inter;
      }
    }
  }
  EdgeWeights out;
  if (n_intra > 0) out.intra = intra / static_cast<double>(n_intra);
  if (n_inter > 0) out.inter = inter / static_cast<double>(n_inter);
  return out;
}

}  // namespace tokgraph
