#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tokgraph/patches.hpp"

namespace tokgraph {

enum class FeatureSource : std::uint8_t { Pixel = 0, Feature = 1 };

// K cluster centers plus the settings that produced them.
struct Codebook {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<float> centers;  // k x dim row-major
  std::uint64_t seed = 0;
  std::uint32_t epochs = 0;
  FeatureSource source = FeatureSource::Pixel;

  std::span<const float> center(std::size_t i) const { return {centers.data() + i * dim, dim}; }
  std::span<float> center(std::size_t i) { return {centers.data() + i * dim, dim}; }
  void validate() const;
};

struct TokenAssignment {
  std::vector<std::uint32_t> tokens;
  std::vector<double> distances;  // squared Euclidean to the assigned center
};

double squared_distance(std::span<const float> a, std::span<const float> b);

// Greedy K-means++ seeding with a mt19937_64 stream seeded by `seed`. The
// first center is uniform over rows. Each later center is the best of
// 2 + floor(ln k) candidates drawn proportional to the squared distance to
// the nearest chosen center, best meaning lowest resulting inertia. Every
// center is a copy of an input row.
Codebook kmeanspp_init(const PatchMatrix& patches, std::size_t k, std::uint64_t seed);

struct EpochResult {
  Codebook codebook;
  double inertia_before = 0.0;  // sum of min squared distances to the old centers
  double inertia = 0.0;         // same, to the updated centers
  std::size_t reseeded = 0;     // empty clusters moved this epoch
};

// One full Lloyd pass: assign, move each center to its cluster mean, and move
// empty clusters to the points farthest from their assigned centers.
EpochResult lloyd_epoch(const PatchMatrix& patches, const Codebook& codebook);

// K-means++ followed by `epochs` Lloyd passes. When inertia_trace is given it
// receives the inertia after each epoch.
Codebook train_kmeans(const PatchMatrix& patches, std::size_t k, std::uint64_t seed,
                      std::uint32_t epochs, std::vector<double>* inertia_trace = nullptr);

// Nearest center per patch; ties go to the lowest center index.
TokenAssignment assign_tokens(const PatchMatrix& patches, const Codebook& codebook);

// Per-feature standardization to zero mean, unit variance (constant features
// are only centered).
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};
FeatureStats standardize(PatchMatrix& patches);

}  // namespace tokgraph
