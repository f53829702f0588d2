#include "tokgraph/patches.hpp"

#include <cmath>
#include <string>

#include "tokgraph/error.hpp"

namespace tokgraph {

void PatchMatrix::validate() const {
  if (dim == 0 && count > 0) throw ValidationError("patch dim must be positive");
  if (data.size() != count * dim)
    throw ValidationError("patch data holds " + std::to_string(data.size()) + " values, expected " +
                          std::to_string(count) + "x" + std::to_string(dim));
  for (std::size_t i = 0; i < data.size(); ++i)
    if (!std::isfinite(data[i]))
      throw ValidationError("non-finite patch value at row " + std::to_string(i / dim) + ", column " +
                            std::to_string(i % dim));
}

PatchMatrix extract_patches(const Image& image, std::size_t patch_size) {
  if (patch_size == 0) throw ValidationError("patch size must be positive");
  if (image.height % patch_size != 0 || image.width % patch_size != 0)
    throw ValidationError("image " + std::to_string(image.height) + "x" + std::to_string(image.width) +
                          " (H x W) is not divisible by patch size p=" + std::to_string(patch_size));
  if (image.data.size() != image.height * image.width * image.channels)
    throw ValidationError("image data size does not match H x W x C");

  const std::size_t rows = image.height / patch_size;
  const std::size_t cols = image.width / patch_size;
  PatchMatrix out(rows * cols, patch_size * patch_size * image.channels);
  std::size_t r = 0;
  for (std::size_t py = 0; py < rows; ++py) {
    for (std::size_t px = 0; px < cols; ++px, ++r) {
      auto dst = out.row(r).begin();
      for (std::size_t y = 0; y < patch_size; ++y)
        for (std::size_t x = 0; x < patch_size; ++x)
          for (std::size_t c = 0; c < image.channels; ++c)
            *dst++ = image.at(py * patch_size + y, px * patch_size + x, c);
    }
  }
  return out;
}

}  // namespace tokgraph
