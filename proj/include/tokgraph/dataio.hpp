#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tokgraph/kmeans.hpp"
#include "tokgraph/patches.hpp"

namespace tokgraph {

// Binary layouts, all integers and floats little-endian:
//   PMIM  "PMIM" version:u32 count:u32 dim:u32 then count*dim f32
//   LBLS  "LBLS" count:u32 then count u32 class ids
//   CBOK  "CBOK" version:u32 k:u32 dim:u32 seed:u64 epochs:u32 source:u8
//         then k*dim f32
//   TOKS  "TOKS" count:u32 k:u32 then count u32 code indices
inline constexpr std::uint32_t kFormatVersion = 1;

struct TokenFile {
  std::uint32_t k = 0;
  std::vector<std::uint32_t> tokens;
};

std::string encode_patches(const PatchMatrix& patches);
PatchMatrix decode_patches(std::string_view bytes);
std::string encode_labels(const std::vector<std::uint32_t>& labels);
std::vector<std::uint32_t> decode_labels(std::string_view bytes);
std::string encode_codebook(const Codebook& codebook);
Codebook decode_codebook(std::string_view bytes);
std::string encode_tokens(const TokenFile& tokens);
TokenFile decode_tokens(std::string_view bytes);

// Whole-file helpers; IoError when the file cannot be opened or written,
// FormatError when the contents are malformed.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

inline PatchMatrix read_patches(const std::filesystem::path& p) { return decode_patches(read_file(p)); }
inline void write_patches(const std::filesystem::path& p, const PatchMatrix& m) { write_file(p, encode_patches(m)); }
inline std::vector<std::uint32_t> read_labels(const std::filesystem::path& p) { return decode_labels(read_file(p)); }
inline void write_labels(const std::filesystem::path& p, const std::vector<std::uint32_t>& l) {
  write_file(p, encode_labels(l));
}
inline Codebook read_codebook(const std::filesystem::path& p) { return decode_codebook(read_file(p)); }
inline void write_codebook(const std::filesystem::path& p, const Codebook& c) { write_file(p, encode_codebook(c)); }
inline TokenFile read_tokens(const std::filesystem::path& p) { return decode_tokens(read_file(p)); }
inline void write_tokens(const std::filesystem::path& p, const TokenFile& t) { write_file(p, encode_tokens(t)); }

// Binary PGM (P5) or PPM (P6) with maxval 255. Values land in [0, 255].
Image decode_pnm(std::string_view bytes);
std::string encode_pnm(const Image& image);
inline Image read_pnm(const std::filesystem::path& p) { return decode_pnm(read_file(p)); }

struct SyntheticSpec {
  std::uint32_t num_classes = 4;
  std::uint32_t patches_per_class = 500;
  std::uint32_t dim = 16;
  double center_spread = 10.0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LabeledPatches {
  PatchMatrix patches;
  std::vector<std::uint32_t> labels;
};

// Class centers uniform on the sphere of radius center_spread; each patch is
// its class center plus isotropic Gaussian noise of scale noise_sigma.
// Patches are grouped by class in ascending order.
LabeledPatches generate_synthetic(const SyntheticSpec& spec);

}  // namespace tokgraph
