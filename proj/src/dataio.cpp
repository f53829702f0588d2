#include "tokgraph/dataio.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

#include "tokgraph/error.hpp"

namespace tokgraph {

namespace {

class ByteWriter {
 public:
  void magic(std::string_view tag) { out_.append(tag); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  ByteReader(std::string_view bytes, std::string_view format) : bytes_(bytes), format_(format) {}

  void magic(std::string_view tag) {
    if (bytes_.size() < tag.size() || bytes_.substr(0, tag.size()) != tag)
      throw FormatError("magic", std::string(format_) + ": bad magic, expected '" + std::string(tag) + "'");
    pos_ = tag.size();
  }
  std::uint8_t u8(std::string_view field) {
    need(1, field);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32(std::string_view field) {
    need(4, field);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64(std::string_view field) {
    need(8, field);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32("payload")); }

  // Payload must be exactly `bytes` long.
  void expect_payload(std::uint64_t bytes) {
    const std::uint64_t remaining = bytes_.size() - pos_;
    if (remaining != bytes)
      throw FormatError("payload", std::string(format_) + ": payload is " + std::to_string(remaining) +
                                       " bytes, header declares " + std::to_string(bytes));
  }

 private:
  void need(std::size_t n, std::string_view field) {
    if (bytes_.size() - pos_ < n)
      throw FormatError(std::string(field), std::string(format_) + ": truncated at field '" + std::string(field) + "'");
  }

  std::string_view bytes_;
  std::string_view format_;
  std::size_t pos_ = 0;
};

void check_version(std::uint32_t version, std::string_view format) {
  if (version != kFormatVersion)
    throw FormatError("version", std::string(format) + ": unsupported version " + std::to_string(version));
}

std::uint32_t narrow_u32(std::size_t v, std::string_view what) {
  if (v > 0xFFFFFFFFull) throw ValidationError(std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string encode_patches(const PatchMatrix& patches) {
  patches.validate();
  ByteWriter w;
  w.magic("PMIM");
  w.u32(kFormatVersion);
  w.u32(narrow_u32(patches.count, "patch count"));
  w.u32(narrow_u32(patches.dim, "patch dim"));
  for (float v : patches.data) w.f32(v);
  return w.take();
}

PatchMatrix decode_patches(std::string_view bytes) {
  ByteReader r(bytes, "PMIM");
  r.magic("PMIM");
  check_version(r.u32("version"), "PMIM");
  const std::uint32_t count = r.u32("count");
  const std::uint32_t dim = r.u32("dim");
  if (dim == 0) throw FormatError("dim", "PMIM: dim must be positive");
  r.expect_payload(std::uint64_t{count} * dim * 4);
  PatchMatrix m(count, dim);
  for (float& v : m.data) v = r.f32();
  return m;
}

std::string encode_labels(const std::vector<std::uint32_t>& labels) {
  ByteWriter w;
  w.magic("LBLS");
  w.u32(narrow_u32(labels.size(), "label count"));
  for (auto l : labels) w.u32(l);
  return w.take();
}

std::vector<std::uint32_t> decode_labels(std::string_view bytes) {
  ByteReader r(bytes, "LBLS");
  r.magic("LBLS");
  const std::uint32_t count = r.u32("count");
  r.expect_payload(std::uint64_t{count} * 4);
  std::vector<std::uint32_t> out(count);
  for (auto& l : out) l = r.u32("payload");
  return out;
}

std::string encode_codebook(const Codebook& cb) {
  cb.validate();
  ByteWriter w;
  w.magic("CBOK");
  w.u32(kFormatVersion);
  w.u32(narrow_u32(cb.k, "codebook k"));
  w.u32(narrow_u32(cb.dim, "codebook dim"));
  w.u64(cb.seed);
  w.u32(cb.epochs);
  w.u8(static_cast<std::uint8_t>(cb.source));
  for (float v : cb.centers) w.f32(v);
  return w.take();
}

Codebook decode_codebook(std::string_view bytes) {
  ByteReader r(bytes, "CBOK");
  r.magic("CBOK");
  check_version(r.u32("version"), "CBOK");
  Codebook cb;
  cb.k = r.u32("k");
  if (cb.k == 0) throw FormatError("k", "CBOK: k must be positive");
  cb.dim = r.u32("dim");
  if (cb.dim == 0) throw FormatError("dim", "CBOK: dim must be positive");
  cb.seed = r.u64("seed");
  cb.epochs = r.u32("epochs");
  const std::uint8_t source = r.u8("source");
  if (source > 1) throw FormatError("source", "CBOK: unknown source tag " + std::to_string(source));
  cb.source = static_cast<FeatureSource>(source);
  r.expect_payload(std::uint64_t{cb.k} * cb.dim * 4);
  cb.centers.resize(cb.k * cb.dim);
  for (float& v : cb.centers) v = r.f32();
  for (float v : cb.centers)
    if (!std::isfinite(v)) throw FormatError("payload", "CBOK: non-finite center value");
  return cb;
}

std::string encode_tokens(const TokenFile& t) {
  ByteWriter w;
  w.magic("TOKS");
  w.u32(narrow_u32(t.tokens.size(), "token count"));
  w.u32(t.k);
  for (auto v : t.tokens) w.u32(v);
  return w.take();
}

TokenFile decode_tokens(std::string_view bytes) {
  ByteReader r(bytes, "TOKS");
  r.magic("TOKS");
  const std::uint32_t count = r.u32("count");
  TokenFile t;
  t.k = r.u32("k");
  if (t.k == 0) throw FormatError("k", "TOKS: k must be positive");
  r.expect_payload(std::uint64_t{count} * 4);
  t.tokens.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    t.tokens[i] = r.u32("payload");
    if (t.tokens[i] >= t.k)
      throw FormatError("payload", "TOKS: token " + std::to_string(t.tokens[i]) + " at position " +
                                       std::to_string(i) + " is outside [0, " + std::to_string(t.k) + ")");
  }
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#') ++pos;
  return std::string(bytes.substr(start, pos - start));
}

std::size_t pnm_number(std::string_view bytes, std::size_t& pos, const char* field) {
  const std::string tok = pnm_token(bytes, pos);
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError(field, std::string("PNM: bad ") + field + " '" + tok + "'");
  return std::stoul(tok);
}

}  // namespace

Image decode_pnm(std::string_view bytes) {
  std::size_t pos = 0;
  const std::string magic = pnm_token(bytes, pos);
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else if (magic == "P1" || magic == "P2" || magic == "P3" || magic == "P4") {
    throw FormatError("magic", "PNM: variant " + magic + " is not supported (binary P5/P6 only)");
  } else {
    throw FormatError("magic", "PNM: bad magic '" + magic + "'");
  }
  Image img;
  img.width = pnm_number(bytes, pos, "width");
  img.height = pnm_number(bytes, pos, "height");
  const std::size_t maxval = pnm_number(bytes, pos, "maxval");
  if (maxval != 255) throw FormatError("maxval", "PNM: maxval " + std::to_string(maxval) + " is not supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw FormatError("maxval", "PNM: missing whitespace after maxval");
  ++pos;
  img.channels = channels;
  const std::size_t expected = img.width * img.height * channels;
  if (bytes.size() - pos != expected)
    throw FormatError("payload", "PNM: raster is " + std::to_string(bytes.size() - pos) + " bytes, expected " +
                                     std::to_string(expected));
  img.data.resize(expected);
  for (std::size_t i = 0; i < expected; ++i) img.data[i] = static_cast<unsigned char>(bytes[pos + i]);
  return img;
}

std::string encode_pnm(const Image& image) {
  if (image.channels != 1 && image.channels != 3) throw ValidationError("PNM needs 1 or 3 channels");
  std::ostringstream out;
  out << (image.channels == 1 ? "P5" : "P6") << '\n' << image.width << ' ' << image.height << "\n255\n";
  std::string bytes = out.str();
  for (float v : image.data) {
    const long q = std::lround(std::clamp(v, 0.0f, 255.0f));
    bytes.push_back(static_cast<char>(static_cast<unsigned char>(q)));
  }
  return bytes;
}

void SyntheticSpec::validate() const {
  if (num_classes == 0) throw ValidationError("synthetic num_classes must be positive");
  if (patches_per_class == 0) throw ValidationError("synthetic patches_per_class must be positive");
  if (dim == 0) throw ValidationError("synthetic dim must be positive");
  if (!(center_spread >= 0.0) || !std::isfinite(center_spread))
    throw ValidationError("synthetic center_spread must be finite and >= 0");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
    throw ValidationError("synthetic noise_sigma must be finite and >= 0");
}

namespace {

// Box-Muller on 53-bit uniforms; avoids the implementation-defined
// std::normal_distribution so the stream depends only on mt19937_64.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}
  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

LabeledPatches generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Gaussian gauss(spec.seed);
  std::vector<double> centers(std::size_t{spec.num_classes} * spec.dim);
  for (std::uint32_t c = 0; c < spec.num_classes; ++c) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (std::uint32_t d = 0; d < spec.dim; ++d) {
        const double g = gauss();
        centers[c * spec.dim + d] = g;
        norm += g * g;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (std::uint32_t d = 0; d < spec.dim; ++d) centers[c * spec.dim + d] *= spec.center_spread / norm;
  }

  LabeledPatches out;
  out.patches = PatchMatrix(std::size_t{spec.num_classes} * spec.patches_per_class, spec.dim);
  out.labels.reserve(out.patches.count);
  std::size_t row = 0;
  for (std::uint32_t c = 0; c < spec.num_classes; ++c) {
    for (std::uint32_t p = 0; p < spec.patches_per_class; ++p, ++row) {
      auto dst = out.patches.row(row);
      for (std::uint32_t d = 0; d < spec.dim; ++d)
        dst[d] = static_cast<float>(centers[c * spec.dim + d] + spec.noise_sigma * gauss());
      out.labels.push_back(c);
    }
  }
  return out;
}

}  // namespace tokgraph
