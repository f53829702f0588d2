#include "tokgraph/closed_form.hpp"

#include <cmath>

#include "tokgraph/error.hpp"

namespace tokgraph {

double mae_bound_polynomial(double t) {
  return 2.0 - 15.0 * t / 4.0 + 9.0 * t * t / 2.0 - 11.0 * std::pow(t, 3) / 4.0 + std::pow(t, 4);
}

double class_bound_polynomial(double t) {
  const double poly = 2.0 - 7.0 * t + 16.0 * t * t - 39.0 / 2.0 * std::pow(t, 3) +
                      29.0 / 2.0 * std::pow(t, 4) - 95.0 / 16.0 * std::pow(t, 5) +
                      15.0 / 16.0 * std::pow(t, 6);
  return poly + kFoldedAlphaWeight * (1.0 - t) * (1.0 - t) * (t - t * t / 2.0);
}

double cross_bound_expression(double t) {
  const double u = 1.0 - t;
  return u * u + 0.25 * u * t * (t + 1.0) * (t + 1.0) + t * t + kFoldedAlphaWeight / 2.0 * u * u;
}

ClosedForm closed_form_bounds(const ToySpaceSpec& spec, const PartitionKind& kind) {
  spec.validate();
  if (spec.num_classes < 2) throw ValidationError("closed forms need at least two classes");
  const double s = spec.num_classes;
  const double n = spec.points_per_class;
  const double m = spec.pairwise_overlap;
  const double t = m / n;

  ClosedForm out;
  if (spec.num_classes == 2) {
    switch (kind.type) {
      case PartitionKind::Type::MaeLike:
        out.intra = (2 * n - m) / (4 * n * n * n);
        out.inter = m / (4 * n * n * n);
        out.bound = mae_bound_polynomial(t);
        out.series_bound = 2.0 - 15.0 * t / 4.0;
        break;
      case PartitionKind::Type::ClassWise:
        out.intra = ((n - m / 2) * (n - m / 2) + (m / 2) * (m / 2)) / (2 * std::pow(n, 4));
        out.inter = m * (n - m / 2) / (4 * std::pow(n, 4));
        out.bound = class_bound_polynomial(t);
        out.series_bound = 2.0 - 9.0 * t / 2.0;
        break;
      case PartitionKind::Type::CrossClass:
        out.intra = 1.0 / (4 * n * n);
        out.inter = 1.0 / (4 * n * n);
        out.bound = cross_bound_expression(t);
        out.series_bound = 7.0 / 2.0 - 27.0 * t / 4.0;
        break;
      case PartitionKind::Type::Explicit:
        throw ValidationError("no closed form for an explicit partition");
    }
    out.bound_exact = true;
    out.source = "two-class exact";
    return out;
  }

  switch (kind.type) {
    case PartitionKind::Type::MaeLike:
      out.intra = (2 * n - (s - 1) * m) / (2 * s * n * n * n);
      out.inter = m / (2 * s * n * n * n);
      out.bound = s - 15.0 * (s - 1) * t / 4.0;
      out.series_order = 1;
      break;
    case PartitionKind::Type::ClassWise: {
      const double core = n - (s - 1) * m / 2;
      out.intra = (core * core + (s - 1) * (m / 2) * (m / 2)) / (2 * s * std::pow(n, 4));
      out.inter = m * core / (2 * s * std::pow(n, 4));
      out.bound = s - 9.0 * (s - 1) * t / 2.0;
      out.series_order = 1;
      break;
    }
    case PartitionKind::Type::CrossClass:
      out.intra = 1.0 / (2 * s * n * n);
      out.inter = 1.0 / (2 * s * n * n);
      out.bound = 0.5 + 1.5 * s;
      out.series_order = 0;
      break;
    case PartitionKind::Type::Explicit:
      throw ValidationError("no closed form for an explicit partition");
  }
  out.bound_exact = false;
  out.source = "multi-class series";
  return out;
}

CompositionForms composition_forms(const ToySpaceSpec& spec, const TokenPartition& partition,
                                   double alpha_weight) {
  if (spec.num_classes != 2) throw ValidationError("composition formulas need exactly two classes");
  const double n = spec.points_per_class;
  const double m = spec.pairwise_overlap;

  double s11 = 0, s22 = 0, s12 = 0, s13 = 0, s23 = 0, s33_shared = 0;
  for (const TwoClassComposition& c : partition.two_class_composition()) {
    const double n1 = c.only_first, n2 = c.only_second, n3 = c.shared;
    const double size = n1 + n2 + 2 * n3;
    s11 += (n1 + n3) * (n1 + n3) / size;
    s22 += (n2 + n3) * (n2 + n3) / size;
    s12 += (n1 + n3) * (n2 + n3) / size;
    s13 += (n1 + n3) * (n1 + 2 * n3) / size;
    s23 += (n2 + n3) * (n2 + 2 * n3) / size;
    s33_shared += n3 * n3 / size;
  }

  const double n2sq = n * n;
  const double n4 = n2sq * n2sq;
  const double excl = n - m;
  const double overlap_part = excl * m / (2 * n4) * (s13 * s13 + s23 * s23) + m * m / n2sq;

  CompositionForms out;
  out.sum_lambda_sq = excl * excl / n4 * (s11 * s11 + s22 * s22 + 2 * s12 * s12) + overlap_part;
  out.alpha = excl * excl / (n2sq * n) * s12;
  out.alpha_shared_only = excl * excl / (n2sq * n) * s33_shared;
  out.fold_constant = alpha_weight * alpha_weight * excl * excl / (8 * n2sq);
  const double shifted = s12 + alpha_weight * n / 4;
  out.bound_folded = excl * excl / n4 * (s11 * s11 + s22 * s22 + 2 * shifted * shifted) +
                     overlap_part - out.fold_constant;
  return out;
}

}  // namespace tokgraph
