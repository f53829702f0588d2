#include "tokgraph/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "tokgraph/error.hpp"
#include "tokgraph/parallel.hpp"

namespace tokgraph {

namespace {

constexpr std::size_t kChunk = 2048;

// 53-bit uniform double in [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_dims(const PatchMatrix& patches, const Codebook& codebook) {
  if (patches.dim != codebook.dim)
    throw ValidationError("patch dim " + std::to_string(patches.dim) + " does not match codebook dim " +
                          std::to_string(codebook.dim));
  if (codebook.k == 0) throw ValidationError("codebook is empty");
}

double sum_in_order(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

void Codebook::validate() const {
  if (k == 0) throw ValidationError("codebook k must be >= 1");
  if (dim == 0) throw ValidationError("codebook dim must be >= 1");
  if (centers.size() != k * dim) throw ValidationError("codebook center storage does not match k x dim");
  for (float v : centers)
    if (!std::isfinite(v)) throw ValidationError("codebook contains a non-finite center value");
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    s += d * d;
  }
  return s;
}

// Inertia if `row` joined the current centers.
static double potential(const PatchMatrix& patches, const std::vector<double>& nearest, std::size_t row) {
  double sum = 0.0;
  for (std::size_t i = 0; i < patches.count; ++i)
    sum += std::min(nearest[i], squared_distance(patches.row(i), patches.row(row)));
  return sum;
}

Codebook kmeanspp_init(const PatchMatrix& patches, std::size_t k, std::uint64_t seed) {
  patches.validate();
  if (k == 0) throw ValidationError("k must be >= 1");
  if (k > patches.count)
    throw ValidationError("k=" + std::to_string(k) + " exceeds patch count " + std::to_string(patches.count));

  std::mt19937_64 rng(seed);
  Codebook cb;
  cb.k = k;
  cb.dim = patches.dim;
  cb.seed = seed;
  cb.centers.resize(k * patches.dim);

  std::vector<char> chosen(patches.count, 0);
  std::vector<double> nearest(patches.count, std::numeric_limits<double>::infinity());
  auto take = [&](std::size_t c, std::size_t row) {
    chosen[row] = 1;
    std::ranges::copy(patches.row(row), cb.center(c).begin());
    for (std::size_t i = 0; i < patches.count; ++i)
      nearest[i] = std::min(nearest[i], squared_distance(patches.row(i), patches.row(row)));
  };

  // D^2 draw over unchosen rows; uniform among them once all mass is spent.
  auto draw = [&](double total) {
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double acc = 0.0;
      std::size_t pick = patches.count;
      for (std::size_t i = 0; i < patches.count; ++i) {
        if (chosen[i] || nearest[i] == 0.0) continue;
        acc += nearest[i];
        pick = i;
        if (acc > target) break;
      }
      return pick;
    }
    std::size_t remaining = 0;
    for (char c : chosen) remaining += !c;
    std::size_t skip = std::min(remaining - 1, static_cast<std::size_t>(uniform01(rng) * remaining));
    for (std::size_t i = 0; i < patches.count; ++i)
      if (!chosen[i] && skip-- == 0) return i;
    return patches.count;
  };

  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  take(0, std::min(patches.count - 1, static_cast<std::size_t>(uniform01(rng) * patches.count)));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < patches.count; ++i)
      if (!chosen[i]) total += nearest[i];

    std::size_t pick = draw(total);
    if (total > 0.0) {
      double best = potential(patches, nearest, pick);
      for (std::size_t t = 1; t < trials; ++t) {
        const std::size_t cand = draw(total);
        const double pot = potential(patches, nearest, cand);
        if (pot < best) {
          best = pot;
          pick = cand;
        }
      }
    }
    take(c, pick);
  }
  return cb;
}

TokenAssignment assign_tokens(const PatchMatrix& patches, const Codebook& codebook) {
  check_dims(patches, codebook);
  TokenAssignment out;
  out.tokens.resize(patches.count);
  out.distances.resize(patches.count);
  for_each_chunk(patches.count, kChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t best = 0;
      double best_d = squared_distance(patches.row(i), codebook.center(0));
      for (std::size_t c = 1; c < codebook.k; ++c) {
        const double d = squared_distance(patches.row(i), codebook.center(c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::uint32_t>(c);
        }
      }
      out.tokens[i] = best;
      out.distances[i] = best_d;
    }
  });
  return out;
}

EpochResult lloyd_epoch(const PatchMatrix& patches, const Codebook& codebook) {
  check_dims(patches, codebook);
  const std::size_t k = codebook.k;
  const std::size_t dim = codebook.dim;
  const TokenAssignment before = assign_tokens(patches, codebook);

  // Per-chunk partial sums, merged in chunk order for reproducibility.
  const std::size_t chunks = chunk_count(patches.count, kChunk);
  std::vector<std::vector<double>> partial_sums(chunks);
  std::vector<std::vector<std::size_t>> partial_counts(chunks);
  for_each_chunk(patches.count, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& sums = partial_sums[chunk];
    auto& counts = partial_counts[chunk];
    sums.assign(k * dim, 0.0);
    counts.assign(k, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t c = before.tokens[i];
      ++counts[c];
      const auto row = patches.row(i);
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += row[d];
    }
  });
  std::vector<double> sums(k * dim, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
    for (std::size_t j = 0; j < k * dim; ++j) sums[j] += partial_sums[chunk][j];
    for (std::size_t c = 0; c < k; ++c) counts[c] += partial_counts[chunk][c];
  }

  EpochResult result;
  result.codebook = codebook;
  result.inertia_before = sum_in_order(before.distances);
  Codebook& next = result.codebook;
  std::vector<std::size_t> empty;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      empty.push_back(c);
      continue;
    }
    auto center = next.center(c);
    for (std::size_t d = 0; d < dim; ++d)
      center[d] = static_cast<float>(sums[c * dim + d] / static_cast<double>(counts[c]));
  }

  if (!empty.empty()) {
    std::vector<double> spread(patches.count);
    for (std::size_t i = 0; i < patches.count; ++i)
      spread[i] = squared_distance(patches.row(i), next.center(before.tokens[i]));
    std::vector<std::size_t> order(patches.count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return spread[a] > spread[b]; });
    for (std::size_t e = 0; e < empty.size() && e < order.size(); ++e)
      std::ranges::copy(patches.row(order[e]), next.center(empty[e]).begin());
    result.reseeded = empty.size();
  }

  result.inertia = sum_in_order(assign_tokens(patches, next).distances);
  return result;
}

Codebook train_kmeans(const PatchMatrix& patches, std::size_t k, std::uint64_t seed, std::uint32_t epochs,
                      std::vector<double>* inertia_trace) {
  Codebook cb = kmeanspp_init(patches, k, seed);
  for (std::uint32_t e = 0; e < epochs; ++e) {
    EpochResult step = lloyd_epoch(patches, cb);
    if (inertia_trace) inertia_trace->push_back(step.inertia);
    cb = std::move(step.codebook);
  }
  cb.epochs = epochs;
  return cb;
}

FeatureStats standardize(PatchMatrix& patches) {
  FeatureStats stats;
  stats.mean.assign(patches.dim, 0.0);
  stats.stddev.assign(patches.dim, 0.0);
  if (patches.count == 0) return stats;
  for (std::size_t i = 0; i < patches.count; ++i)
    for (std::size_t d = 0; d < patches.dim; ++d) stats.mean[d] += patches.row(i)[d];
  for (double& m : stats.mean) m /= static_cast<double>(patches.count);
  for (std::size_t i = 0; i < patches.count; ++i)
    for (std::size_t d = 0; d < patches.dim; ++d) {
      const double diff = patches.row(i)[d] - stats.mean[d];
      stats.stddev[d] += diff * diff;
    }
  for (double& s : stats.stddev) s = std::sqrt(s / static_cast<double>(patches.count));
  for (std::size_t i = 0; i < patches.count; ++i) {
    auto row = patches.row(i);
    for (std::size_t d = 0; d < patches.dim; ++d) {
      const double centered = row[d] - stats.mean[d];
      row[d] = static_cast<float>(stats.stddev[d] > 0.0 ? centered / stats.stddev[d] : centered);
    }
  }
  return stats;
}

}  // namespace tokgraph
