// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "tokgraph/closed_form.hpp"
#include "tokgraph/dataio.hpp"
#include "tokgraph/kmeans.hpp"
#include "tokgraph/reconcile.hpp"
#include "tokgraph/tcas.hpp"
#include "tokgraph/theorem1.hpp"
#include "tokgraph/toy_model.hpp"

using namespace tokgraph;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body, double budget_s = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    v.pass = false;
    v.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double mae_poly(double t) { return 2 - 15 * t / 4 + 9 * t * t / 2 - 11 * t * t * t / 4 + t * t * t * t; }

PartitionKind random_kind(const ToySpaceSpec& spec, std::mt19937_64& rng) {
  const int e = spec.exclusive_per_class(), m = spec.pairwise_overlap;
  for (;;) {
    switch (rng() % 4) {
      case 0:
        return PartitionKind::mae_like();
      case 1:
        if (m % 2 == 0 && (e > 0 || m > 0)) return PartitionKind::class_wise();
        break;
      case 2: {
        std::vector<int> ls;
        for (int l = 1; l <= spec.points_per_class; ++l)
          if (e % l == 0 && m % l == 0) ls.push_back(l);
        return PartitionKind::cross_class(ls[rng() % ls.size()]);
      }
      default: {
        const auto total = static_cast<int>(spec.total_points());
        const int blocks = 1 + static_cast<int>(rng() % total);
        std::vector<std::vector<int>> b(blocks);
        for (int v = 0; v < total; ++v) b[v < blocks ? v : rng() % blocks].push_back(v);
        return PartitionKind::from_blocks(b);
      }
    }
  }
}

Verdict frobenius_identity() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  int cases = 0;
  while (cases < 50) {
    const int s = 2 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 29);
    const int m = static_cast<int>(rng() % (n / (s - 1) + 1));
    const ToySpaceSpec spec{s, n, m};
    const PointSpace space = build_point_space(spec);
    const auto a = build_augmentation_matrix(build_mask_joint(space), make_partition(space, random_kind(spec, rng)));
    const SpectrumSums sums = spectrum_sum_squares(a.normalized, true);
    worst = std::max(worst, std::abs(*sums.eigen - sums.frobenius));
    ++cases;
  }
  return {worst <= 1e-8, fmt("%d cases, max |sum eig^2 - ||A||_F^2| = %.3g", cases, worst)};
}

Verdict edge_weight_reconciliation() {
  Verdict v;
  double worst_intra = 0.0;
  int checked = 0;
  std::string ratios;
  for (int n : {5, 10, 20})
    for (int m : {0, 2, 4}) {
      const BoundReport r = reconcile({2, n, m}, PartitionKind::mae_like(), 1.0, 2.5, false);
      const double intra = (2.0 * n - m) / (4.0 * n * n * n);
      // n - m < 2 leaves no pair of distinct exclusive points in a class.
      if (r.intra_weight) {
        worst_intra = std::max(worst_intra, std::abs(*r.intra_weight - intra) / intra);
        ++checked;
      } else if (n - m >= 2) {
        v.pass = false;
      }
      const double inter = m / (4.0 * n * n * n);
      const Reconciliation* rec = nullptr;
      for (const auto& x : r.reconciliation)
        if (x.quantity == "w_inter") rec = &x;
      if (!rec || !rec->constant_factor || std::abs(*r.inter_weight - inter) > 1e-15) v.pass = false;
      if (rec && rec->constant_factor && ratios.find(*rec->constant_factor) == std::string::npos)
        ratios += (ratios.empty() ? "" : ",") + *rec->constant_factor;
    }
  v.pass = v.pass && worst_intra <= 1e-9;
  v.detail = fmt("%d/9 grid points have an intra pair, max rel err %.3g; inter brute/closed ratio %s", checked,
                 worst_intra, ratios.c_str());
  return v;
}

Verdict bound_ordering() {
  Verdict v;
  // Smallest n >= 20 with m = t n an even integer; bounds depend on t only.
  const std::tuple<double, int, int> grid[] = {{0.02, 100, 2}, {0.05, 40, 2}, {0.1, 20, 2}};
  for (int s : {2, 3})
    for (auto [t, n, m] : grid) {
      const ToySpaceSpec spec{s, n, m};
      const double bc = reconcile(spec, PartitionKind::class_wise(), 1, 2.5, false).bound_raw;
      const double bm = reconcile(spec, PartitionKind::mae_like(), 1, 2.5, false).bound_raw;
      const double bx = reconcile(spec, PartitionKind::cross_class(2), 1, 2.5, false).bound_raw;
      const bool ok = bc < bm && bm < bx;
      v.pass = v.pass && ok;
      v.detail += fmt("%ss=%d t=%.2f class %.4f mae %.4f cross %.4f %s", v.detail.empty() ? "" : "; ", s, t, bc, bm,
                      bx, ok ? "ok" : "VIOLATED");
    }
  return v;
}

Verdict mae_polynomial() {
  double eval_gap = 0.0, brute_gap = 0.0;
  for (int m = 1; m <= 20; ++m) {
    const ToySpaceSpec spec{2, 40, m};
    const double t = spec.overlap_ratio();
    eval_gap = std::max(eval_gap, std::abs(closed_form_bounds(spec, PartitionKind::mae_like()).bound - mae_poly(t)));
    const double brute = reconcile(spec, PartitionKind::mae_like(), 1, 2.5, false).bound_raw;
    brute_gap = std::max(brute_gap, std::abs(brute - (mae_poly(t) + t * (1 - t))));
  }
  return {eval_gap <= 1e-12 && brute_gap <= 1e-12,
          fmt("20 t values: |closed - poly| <= %.3g, |brute - (poly + t(1-t))| <= %.3g", eval_gap, brute_gap)};
}

Verdict theorem1() {
  Verdict v;
  const std::pair<int, int> instances[] = {{2, 3}, {2, 4}, {3, 2}};
  const std::pair<double, double> weights[] = {{1, 1}, {1, 2.5}, {2, 1}};
  int attained = 0, total = 0;
  for (auto [s, n] : instances) {
    const PointSpace space = build_point_space({s, n, 0});
    const MaskJoint joint = build_mask_joint(space);
    for (auto [c1, c2] : weights) {
      OptimalTokenizerSearch search;
      search.c1 = c1;
      search.c2 = c2;
      const auto r = verify_optimal_tokenizer(space, joint, search);
      ++total;
      attained += r.label_attains_minimum;
      if (!r.label_attains_minimum)
        v.detail += fmt("%ss=%d n=%d c=(%g,%g): min %.4f vs label %.4f over %llu", v.detail.empty() ? "" : "; ", s,
                        n, c1, c2, r.min_objective, r.label_partition.objective,
                        static_cast<unsigned long long>(r.partitions_enumerated));
    }
  }
  v.pass = attained == total;
  v.detail = fmt("label partition optimal in %d/%d", attained, total) + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

void theorem1_tail_diagnostic() {
  int attained = 0, total = 0;
  for (auto [s, n] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 2}}) {
    const PointSpace space = build_point_space({s, n, 0});
    const MaskJoint joint = build_mask_joint(space);
    for (auto [c1, c2] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.5}, std::pair{2.0, 1.0}}) {
      OptimalTokenizerSearch search;
      search.c1 = c1;
      search.c2 = c2;
      search.spectrum_skip = static_cast<std::size_t>(s);
      ++total;
      attained += verify_optimal_tokenizer(space, joint, search).label_attains_minimum;
    }
  }
  std::printf("INFO  5 with the top-s eigenvalues left out of the spectral term, label partition optimal in %d/%d\n",
              attained, total);
}

RowNormalized rows_of(std::size_t l1, std::size_t l2, std::vector<double> v) {
  RowNormalized r;
  r.l1 = l1;
  r.l2 = l2;
  r.rows = std::move(v);
  r.dead.assign(l1, false);
  return r;
}

Verdict tcas_values() {
  const double id = tcas(rows_of(2, 2, {1, 0, 0, 1})).value;
  const double uni = tcas(rows_of(2, 2, {0.5, 0.5, 0.5, 0.5})).value;
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t l1 = 2 + rng() % 6, l2 = 2 + rng() % 5;
    CoOccurrence r(l1, l2);
    for (auto& c : r.counts) c = rng() % 10;
    std::vector<std::size_t> pi(l1), pj(l2);
    std::iota(pi.begin(), pi.end(), 0);
    std::iota(pj.begin(), pj.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    std::shuffle(pj.begin(), pj.end(), rng);
    CoOccurrence q(l1, l2);
    for (std::size_t i = 0; i < l1; ++i)
      for (std::size_t j = 0; j < l2; ++j) q(pi[i], pj[j]) = r(i, j);
    worst = std::max(worst, std::abs(tcas(normalize_rows(r)).value - tcas(normalize_rows(q)).value));
  }
  return {std::abs(id) <= 1e-12 && std::abs(uni - 0.210786) <= 1e-4 && worst <= 1e-12,
          fmt("identity %.3g, uniform %.6f, permutation gap %.3g", id, uni, worst)};
}

LabeledPatches blobs(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.seed = seed;
  return generate_synthetic(spec);
}

double tcas_of(const std::vector<std::uint32_t>& tokens, const std::vector<std::uint32_t>& labels, std::size_t k,
               std::size_t classes) {
  return tcas(normalize_rows(tokgraph::accumulate(tokens, labels, k, classes))).value;
}

Verdict corruption_monotonicity() {
  const double ps[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<std::vector<double>> scores(6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledPatches d = blobs(seed);
    const auto tokens = assign_tokens(d.patches, train_kmeans(d.patches, 4, seed, 10)).tokens;
    for (int i = 0; i < 6; ++i) {
      std::mt19937_64 rng(seed * 1000 + i);
      std::bernoulli_distribution flip(ps[i]);
      auto labels = d.labels;
      for (auto& l : labels)
        if (flip(rng)) l = (l + 1 + static_cast<std::uint32_t>(rng() % 3)) % 4;
      scores[i].push_back(tcas_of(tokens, labels, 4, 4));
    }
  }
  Verdict v;
  double prev = -1;
  for (int i = 0; i < 6; ++i) {
    const double m = mean(scores[i]);
    v.pass = v.pass && m >= prev;
    v.detail += fmt("%sp=%.1f:%.4f", i ? " " : "mean TCAS ", ps[i], m);
    prev = m;
  }
  return v;
}

Verdict kmeans_correctness() {
  std::mt19937_64 rng(8);
  std::normal_distribution<float> g(0.0f, 1.0f);
  bool monotone = true;
  for (int run = 0; run < 20; ++run) {
    PatchMatrix p(300, 6);
    for (float& v : p.data) v = g(rng) + static_cast<float>(rng() % 4) * 3.0f;
    Codebook cb = kmeanspp_init(p, 3 + run % 6, rng());
    double last = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 15; ++e) {
      const EpochResult r = lloyd_epoch(p, cb);
      monotone = monotone && r.inertia <= r.inertia_before * (1 + 1e-12) && r.inertia_before <= last * (1 + 1e-12);
      last = r.inertia;
      cb = r.codebook;
    }
  }
  double worst_ari = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledPatches d = blobs(100 + seed);
    const auto tokens = assign_tokens(d.patches, train_kmeans(d.patches, 4, seed, 10)).tokens;
    worst_ari = std::min(worst_ari, adjusted_rand_index(tokens, d.labels));
  }
  PatchMatrix q(50, 8);
  for (float& v : q.data) v = g(rng);
  const Codebook cb = kmeanspp_init(q, 9, 3);
  const auto a = assign_tokens(q, cb);
  int mismatches = 0;
  for (std::size_t i = 0; i < 50; ++i) mismatches += a.tokens[i] != oracle::nearest(q.data, 8, i, cb.centers, 9);
  return {monotone && worst_ari >= 0.99 && mismatches == 0,
          fmt("inertia monotone over 20 runs: %s; min ARI %.4f over 10 seeds; oracle mismatches %d",
              monotone ? "yes" : "no", worst_ari, mismatches)};
}

Verdict end_to_end_ordering() {
  std::vector<double> km, rnd, adv;
  const std::size_t k = 4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledPatches d = blobs(200 + seed);
    km.push_back(tcas_of(assign_tokens(d.patches, train_kmeans(d.patches, k, seed, 10)).tokens, d.labels, k, 4));

    std::mt19937_64 rng(seed ^ 0x5eedULL);
    std::vector<std::size_t> rows(d.patches.count);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    Codebook random_cb;
    random_cb.k = k;
    random_cb.dim = d.patches.dim;
    for (std::size_t c = 0; c < k; ++c) {
      const auto r = d.patches.row(rows[c]);
      random_cb.centers.insert(random_cb.centers.end(), r.begin(), r.end());
    }
    rnd.push_back(tcas_of(assign_tokens(d.patches, random_cb).tokens, d.labels, k, 4));

    std::vector<std::uint32_t> split(d.labels.size());
    std::vector<std::uint32_t> seen(4, 0);
    for (std::size_t i = 0; i < split.size(); ++i) split[i] = seen[d.labels[i]]++ % k;
    adv.push_back(tcas_of(split, d.labels, k, 4));
  }
  const double a = mean(km), b = mean(rnd), c = mean(adv);
  return {b - a >= 0.02 && c - b >= 0.02, fmt("k-means %.4f < random %.4f < adversarial %.4f", a, b, c)};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TOKGRAPH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict io_round_trips() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<float> u(-5, 5);
  PatchMatrix p(100, 16);
  for (float& v : p.data) v = u(rng);
  std::vector<std::uint32_t> labels(100);
  for (auto& l : labels) l = static_cast<std::uint32_t>(rng());
  Codebook cb;
  cb.k = 7;
  cb.dim = 16;
  cb.seed = rng();
  cb.epochs = 3;
  for (int i = 0; i < 7 * 16; ++i) cb.centers.push_back(u(rng));
  TokenFile toks{7, std::vector<std::uint32_t>(100)};
  for (auto& t : toks.tokens) t = static_cast<std::uint32_t>(rng() % 7);

  const std::string bp = encode_patches(p), bl = encode_labels(labels), bc = encode_codebook(cb),
                    bt = encode_tokens(toks);
  const bool exact = encode_patches(decode_patches(bp)) == bp && decode_patches(bp).data == p.data &&
                     encode_labels(decode_labels(bl)) == bl && encode_codebook(decode_codebook(bc)) == bc &&
                     decode_codebook(bc).centers == cb.centers && encode_tokens(decode_tokens(bt)) == bt;

  const auto dir = oracle::scratch_dir("acceptance");
  auto path = [&](const char* name) { return (dir / name).string(); };
  write_patches(path("good.pmim"), p);
  std::string bad_magic = bp;
  bad_magic[1] = 'X';
  std::ofstream(path("magic.pmim"), std::ios::binary) << bad_magic;
  std::ofstream(path("short.pmim"), std::ios::binary) << bp.substr(0, bp.size() - 3);
  std::string bad_version = bc;
  bad_version[4] = 2;
  std::ofstream(path("version.cbok"), std::ios::binary) << bad_version;
  write_labels(path("l.lbls"), std::vector<std::uint32_t>(100, 0));

  const int c_magic = run_cli("tokenizer-train --patches " + path("magic.pmim") + " --k 2 --out " + path("o.cbok"));
  const int c_short = run_cli("tokenizer-train --patches " + path("short.pmim") + " --k 2 --out " + path("o.cbok"));
  const int c_version = run_cli("tokenizer-apply --patches " + path("good.pmim") + " --codebook " +
                                path("version.cbok") + " --out " + path("o.toks"));
  const int c_tokens = run_cli("tcas-compute --tokens " + path("l.lbls") + " --labels " + path("l.lbls") +
                               " --classes 2 --out " + path("o.json"));
  const int c_flag = run_cli("tokenizer-train --patches " + path("good.pmim") + " --k 0 --out " + path("o.cbok"));
  std::filesystem::remove_all(dir);
  const bool codes = c_magic == 3 && c_short == 3 && c_version == 3 && c_tokens == 3 && c_flag == 2;
  return {exact && codes, fmt("bit-exact %s; exit codes magic=%d truncated=%d version=%d wrong-format=%d bad-flag=%d",
                              exact ? "yes" : "no", c_magic, c_short, c_version, c_tokens, c_flag)};
}

}  // namespace

int main() {
  criterion(1, "Frobenius-spectrum identity", frobenius_identity, 30);
  criterion(2, "edge-weight reconciliation", edge_weight_reconciliation);
  criterion(3, "bound ordering class < MAE < cross", bound_ordering, 10);
  criterion(4, "MAE bound polynomial", mae_polynomial);
  criterion(5, "label partition minimizes the objective", theorem1, 60);
  theorem1_tail_diagnostic();
  criterion(6, "TCAS exact values", tcas_values);
  criterion(7, "TCAS monotone in label corruption", corruption_monotonicity);
  criterion(8, "K-means correctness", kmeans_correctness);
  criterion(9, "end-to-end TCAS ordering", end_to_end_ordering);
  criterion(10, "I/O round trips and exit codes", io_round_trips);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
