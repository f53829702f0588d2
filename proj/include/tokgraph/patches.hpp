#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tokgraph {

// Dense H x W x C image, channel-last, row-major.
struct Image {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<float> data;

  float at(std::size_t y, std::size_t x, std::size_t c) const {
    return data[(y * width + x) * channels + c];
  }
};

// count x dim row-major feature matrix; rows are patches (pixels or
// externally computed embeddings).
struct PatchMatrix {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<float> data;

  PatchMatrix() = default;
  PatchMatrix(std::size_t count_, std::size_t dim_)
      : count(count_), dim(dim_), data(count_ * dim_, 0.0f) {}

  std::span<const float> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
  std::span<float> row(std::size_t i) { return {data.data() + i * dim, dim}; }

  // Throws ValidationError on a shape mismatch or non-finite value.
  void validate() const;
};

// Non-overlapping p x p patches in raster order; each row is the row-major
// flattening of a p x p x C block.
PatchMatrix extract_patches(const Image& image, std::size_t patch_size);

}  // namespace tokgraph
