#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

namespace tokgraph {

// l1 x l2 counts: rows are token classes, columns are true classes.
struct CoOccurrence {
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::vector<std::uint64_t> counts;

  CoOccurrence() = default;
  CoOccurrence(std::size_t rows, std::size_t cols) : l1(rows), l2(cols), counts(rows * cols, 0) {}

  std::uint64_t& operator()(std::size_t i, std::size_t j) { return counts[i * l2 + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return counts[i * l2 + j]; }
  std::uint64_t total() const;
};

struct RowNormalized {
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::vector<double> rows;  // l1 x l2
  std::vector<bool> dead;    // token classes with no patches

  double operator()(std::size_t i, std::size_t j) const { return rows[i * l2 + j]; }
  std::span<const double> row(std::size_t i) const { return {rows.data() + i * l2, l2}; }
  std::size_t dead_count() const;
};

struct TcasScore {
  double value = 0.0;
  double term1 = 0.0;  // lambda1 * sum_i (1 - ||row_i||_2)^2
  double term2 = 0.0;  // lambda2 * sum_{i != i'} (row_i . row_i')^2
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::size_t dead_rows = 0;
};

// counts(i, j) = number of patches with token i and label j. Throws
// ValidationError naming the first out-of-range position.
CoOccurrence accumulate(std::span<const std::uint32_t> tokens, std::span<const std::uint32_t> labels,
                        std::size_t l1, std::size_t l2);

// Plain L1 row normalization; all-zero rows are flagged dead.
RowNormalized normalize_rows(const CoOccurrence& r);

// Token-class alignment score with lambda1 = 1/l1 and lambda2 = 1/l1^2, the
// cross term summed over ordered pairs. Dead rows add 1 to the first sum.
TcasScore tcas(const RowNormalized& rbar);

nlohmann::json to_json(const TcasScore& score);

// CSV with header "token,<class ids...>" and one row per token class.
void write_cooccurrence_csv(std::ostream& out, const CoOccurrence& r);
CoOccurrence read_cooccurrence_csv(std::istream& in);

// Adjusted Rand index between two labelings of the same items.
double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace tokgraph
