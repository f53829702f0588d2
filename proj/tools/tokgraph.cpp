// tokgraph: command-line front end for the toy-model analysis, the K-means
// patch tokenizer, and token-class alignment scoring.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tokgraph/dataio.hpp"
#include "tokgraph/error.hpp"
#include "tokgraph/kmeans.hpp"
#include "tokgraph/reconcile.hpp"
#include "tokgraph/tcas.hpp"
#include "tokgraph/theorem1.hpp"
#include "tokgraph/toy_model.hpp"

namespace {

using nlohmann::json;
using namespace tokgraph;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void write_json(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.precision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

struct AnalyzeArgs {
  int classes = 2;
  int n = 0;
  int m = 0;
  std::string partition;
  double c1 = 1.0;
  double c2 = 2.5;
  std::string out;
  std::string matrix_csv;
};

int run_analyze(const AnalyzeArgs& a) {
  const ToySpaceSpec spec{a.classes, a.n, a.m};
  const PartitionKind kind = PartitionKind::parse(a.partition);
  spec.validate();
  const BoundReport report = reconcile(spec, kind, a.c1, a.c2);
  json j = to_json(report);
  j["command"] = "toymodel-analyze";
  write_json(a.out, j);
  if (!a.matrix_csv.empty()) {
    const PointSpace space = build_point_space(spec);
    const MaskJoint joint = build_mask_joint(space);
    write_matrix_csv(a.matrix_csv,
                     build_augmentation_matrix(joint, make_partition(space, kind)).normalized);
  }
  std::printf("toymodel-analyze s=%d n=%d m=%d partition=%s sum_lambda_sq=%.12g alpha=%.12g bound=%.12g\n",
              a.classes, a.n, a.m, kind.name().c_str(), report.sum_lambda_sq, report.alpha, report.bound_raw);
  return 0;
}

struct TheoremArgs {
  int classes = 2;
  int n = 0;
  double c1 = 1.0;
  double c2 = 1.0;
  std::size_t spectrum_skip = 0;
  std::size_t max_blocks = 0;
  std::string out;
};

int run_theorem(const TheoremArgs& a) {
  const ToySpaceSpec spec{a.classes, a.n, 0};
  spec.validate();
  if (spec.total_points() > 10)
    throw ValidationError("s*n = " + std::to_string(spec.total_points()) + " views exceeds the limit of 10");
  const PointSpace space = build_point_space(spec);
  const MaskJoint joint = build_mask_joint(space);
  OptimalTokenizerSearch search;
  search.c1 = a.c1;
  search.c2 = a.c2;
  search.spectrum_skip = a.spectrum_skip;
  search.max_block_count = a.max_blocks;
  const OptimalTokenizerResult result = verify_optimal_tokenizer(space, joint, search);
  json j = to_json(result, search);
  j["command"] = "toymodel-theorem1";
  j["spec"] = to_json(spec);
  write_json(a.out, j);
  std::printf("toymodel-theorem1 s=%d n=%d partitions=%llu min=%.12g label=%.12g label_attains_minimum=%s\n",
              a.classes, a.n, static_cast<unsigned long long>(result.partitions_enumerated), result.min_objective,
              result.label_partition.objective, result.label_attains_minimum ? "true" : "false");
  return 0;
}

struct TrainArgs {
  std::string patches;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::uint32_t epochs = 100;
  std::string source = "pixel";
  bool standardize = false;
  std::string out;
};

int run_train(const TrainArgs& a) {
  PatchMatrix patches = read_patches(a.patches);
  if (a.standardize) standardize(patches);
  std::vector<double> trace;
  Codebook cb = train_kmeans(patches, a.k, a.seed, a.epochs, &trace);
  cb.source = a.source == "feature" ? FeatureSource::Feature : FeatureSource::Pixel;
  write_codebook(a.out, cb);
  std::printf("tokenizer-train k=%zu dim=%zu seed=%llu epochs=%u inertia=%.12g\n", cb.k, cb.dim,
              static_cast<unsigned long long>(cb.seed), cb.epochs, trace.empty() ? 0.0 : trace.back());
  return 0;
}

struct ApplyArgs {
  std::string patches;
  std::string codebook;
  bool standardize = false;
  std::string out;
};

int run_apply(const ApplyArgs& a) {
  PatchMatrix patches = read_patches(a.patches);
  const Codebook cb = read_codebook(a.codebook);
  if (patches.dim != cb.dim)
    throw ValidationError("patch dim " + std::to_string(patches.dim) + " does not match codebook dim " +
                          std::to_string(cb.dim));
  if (a.standardize) standardize(patches);
  const TokenAssignment assignment = assign_tokens(patches, cb);
  write_tokens(a.out, {static_cast<std::uint32_t>(cb.k), assignment.tokens});
  std::printf("tokenizer-apply patches=%zu k=%zu\n", patches.count, cb.k);
  return 0;
}

struct TcasArgs {
  std::string tokens;
  std::string labels;
  std::size_t classes = 0;
  std::string out;
  std::string cooc_out;
};

int run_tcas(const TcasArgs& a) {
  const TokenFile tokens = read_tokens(a.tokens);
  const std::vector<std::uint32_t> labels = read_labels(a.labels);
  const CoOccurrence r = tokgraph::accumulate(tokens.tokens, labels, tokens.k, a.classes);
  const TcasScore score = tcas(normalize_rows(r));
  json j = to_json(score);
  j["command"] = "tcas-compute";
  j["inputs"] = {{"tokens", a.tokens}, {"labels", a.labels}, {"classes", a.classes}};
  j["patches"] = r.total();
  j["normalization_note"] =
      "rows of the co-occurrence matrix are L1-normalized; the softmax-over-normalized-counts reading is not applied";
  write_json(a.out, j);
  if (!a.cooc_out.empty()) {
    std::ofstream out(a.cooc_out);
    if (!out) throw IoError("cannot open '" + a.cooc_out + "' for writing");
    write_cooccurrence_csv(out, r);
  }
  std::printf("tcas-compute l1=%zu l2=%zu value=%.12g term1=%.12g term2=%.12g dead=%zu\n", score.l1, score.l2,
              score.value, score.term1, score.term2, score.dead_rows);
  return 0;
}

struct SynthArgs {
  SyntheticSpec spec;
  std::string out;
  std::string labels_out;
};

int run_synth(const SynthArgs& a) {
  const LabeledPatches data = generate_synthetic(a.spec);
  write_patches(a.out, data.patches);
  write_labels(a.labels_out, data.labels);
  std::printf("synth-generate classes=%u per_class=%u dim=%u seed=%llu patches=%zu\n", a.spec.num_classes,
              a.spec.patches_per_class, a.spec.dim, static_cast<unsigned long long>(a.spec.seed),
              data.patches.count);
  return 0;
}

struct ImageArgs {
  std::string image;
  std::size_t patch_size = 16;
  std::string out;
};

int run_image(const ImageArgs& a) {
  const PatchMatrix patches = extract_patches(read_pnm(a.image), a.patch_size);
  write_patches(a.out, patches);
  std::printf("image-patches patches=%zu dim=%zu\n", patches.count, patches.dim);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tokgraph: discrete-tokenizer analysis toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("toymodel-analyze", "brute-force bound analysis with closed-form reconciliation");
  cmd_analyze->add_option("--classes", analyze.classes, "number of classes s")->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--n", analyze.n, "points per class")->required()->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--m", analyze.m, "pairwise overlap")->check(CLI::NonNegativeNumber);
  cmd_analyze->add_option("--partition", analyze.partition, "mae | class | cross:<l>")->required();
  cmd_analyze->add_option("--c1", analyze.c1, "spectral weight")->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--c2", analyze.c2, "labeling-error weight")->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--out", analyze.out, "report JSON path")->required();
  cmd_analyze->add_option("--matrix-csv", analyze.matrix_csv, "dump the normalized augmentation matrix as CSV");

  TheoremArgs theorem;
  auto* cmd_theorem = app.add_subcommand("toymodel-theorem1", "exhaustive search for the optimal tokenizer partition");
  cmd_theorem->add_option("--classes", theorem.classes, "number of classes s")->check(CLI::PositiveNumber);
  cmd_theorem->add_option("--n", theorem.n, "points per class")->required()->check(CLI::PositiveNumber);
  cmd_theorem->add_option("--c1", theorem.c1, "spectral weight")->check(CLI::PositiveNumber);
  cmd_theorem->add_option("--c2", theorem.c2, "labeling-error weight")->check(CLI::PositiveNumber);
  cmd_theorem->add_option("--spectrum-skip", theorem.spectrum_skip, "largest eigenvalues left out of the sum");
  cmd_theorem->add_option("--max-blocks", theorem.max_blocks, "cap on blocks per partition (0 = none)");
  cmd_theorem->add_option("--out", theorem.out, "report JSON path")->required();

  TrainArgs train;
  auto* cmd_train = app.add_subcommand("tokenizer-train", "train a K-means codebook");
  cmd_train->add_option("--patches", train.patches, "input PMIM file")->required();
  cmd_train->add_option("--k", train.k, "codebook size")->required()->check(CLI::PositiveNumber);
  cmd_train->add_option("--seed", train.seed, "64-bit seed");
  cmd_train->add_option("--epochs", train.epochs, "Lloyd passes");
  cmd_train->add_option("--source", train.source, "pixel | feature")->check(CLI::IsMember({"pixel", "feature"}));
  cmd_train->add_flag("--standardize", train.standardize, "standardize each feature before clustering");
  cmd_train->add_option("--out", train.out, "output CBOK file")->required();

  ApplyArgs apply;
  auto* cmd_apply = app.add_subcommand("tokenizer-apply", "assign nearest-center tokens");
  cmd_apply->add_option("--patches", apply.patches, "input PMIM file")->required();
  cmd_apply->add_option("--codebook", apply.codebook, "input CBOK file")->required();
  cmd_apply->add_flag("--standardize", apply.standardize, "standardize each feature before assignment");
  cmd_apply->add_option("--out", apply.out, "output TOKS file")->required();

  TcasArgs tcas_args;
  auto* cmd_tcas = app.add_subcommand("tcas-compute", "token-class alignment score");
  cmd_tcas->add_option("--tokens", tcas_args.tokens, "input TOKS file")->required();
  cmd_tcas->add_option("--labels", tcas_args.labels, "input LBLS file")->required();
  cmd_tcas->add_option("--classes", tcas_args.classes, "number of true classes l2")->required()->check(CLI::PositiveNumber);
  cmd_tcas->add_option("--out", tcas_args.out, "report JSON path")->required();
  cmd_tcas->add_option("--cooc-out", tcas_args.cooc_out, "co-occurrence CSV path");

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth-generate", "labeled Gaussian-blob patches");
  cmd_synth->add_option("--classes", synth.spec.num_classes)->check(CLI::PositiveNumber);
  cmd_synth->add_option("--per-class", synth.spec.patches_per_class)->check(CLI::PositiveNumber);
  cmd_synth->add_option("--dim", synth.spec.dim)->check(CLI::PositiveNumber);
  cmd_synth->add_option("--spread", synth.spec.center_spread)->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--sigma", synth.spec.noise_sigma)->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--seed", synth.spec.seed);
  cmd_synth->add_option("--out", synth.out, "output PMIM file")->required();
  cmd_synth->add_option("--labels-out", synth.labels_out, "output LBLS file")->required();

  ImageArgs image;
  auto* cmd_image = app.add_subcommand("image-patches", "cut a binary PGM/PPM into patches");
  cmd_image->add_option("--image", image.image, "input P5/P6 file")->required();
  cmd_image->add_option("--patch-size", image.patch_size, "patch side p")->check(CLI::PositiveNumber);
  cmd_image->add_option("--out", image.out, "output PMIM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*cmd_analyze) return run_analyze(analyze);
    if (*cmd_theorem) return run_theorem(theorem);
    if (*cmd_train) return run_train(train);
    if (*cmd_apply) return run_apply(apply);
    if (*cmd_tcas) return run_tcas(tcas_args);
    if (*cmd_synth) return run_synth(synth);
    if (*cmd_image) return run_image(image);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FormatError& e) {
    std::cerr << "format error [" << e.field() << "]: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}
