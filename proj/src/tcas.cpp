#include "tokgraph/tcas.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "tokgraph/error.hpp"

namespace tokgraph {

std::uint64_t CoOccurrence::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::size_t RowNormalized::dead_count() const {
  std::size_t n = 0;
  for (bool d : dead) n += d ? 1 : 0;
  return n;
}

CoOccurrence accumulate(std::span<const std::uint32_t> tokens, std::span<const std::uint32_t> labels,
                        std::size_t l1, std::size_t l2) {
  if (tokens.size() != labels.size())
    throw ValidationError("token count " + std::to_string(tokens.size()) + " does not match label count " +
                          std::to_string(labels.size()));
  if (l1 == 0 || l2 == 0) throw ValidationError("l1 and l2 must be positive");
  CoOccurrence r(l1, l2);
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    if (tokens[p] >= l1)
      throw ValidationError("token " + std::to_string(tokens[p]) + " at position " + std::to_string(p) +
                            " is outside [0, " + std::to_string(l1) + ")");
    if (labels[p] >= l2)
      throw ValidationError("label " + std::to_string(labels[p]) + " at position " + std::to_string(p) +
                            " is outside [0, " + std::to_string(l2) + ")");
    ++r(tokens[p], labels[p]);
  }
  return r;
}

RowNormalized normalize_rows(const CoOccurrence& r) {
  RowNormalized out;
  out.l1 = r.l1;
  out.l2 = r.l2;
  out.rows.assign(r.l1 * r.l2, 0.0);
  out.dead.assign(r.l1, false);
  for (std::size_t i = 0; i < r.l1; ++i) {
    std::uint64_t row_total = 0;
    for (std::size_t j = 0; j < r.l2; ++j) row_total += r(i, j);
    if (row_total == 0) {
      out.dead[i] = true;
      continue;
    }
    for (std::size_t j = 0; j < r.l2; ++j)
      out.rows[i * r.l2 + j] = static_cast<double>(r(i, j)) / static_cast<double>(row_total);
  }
  return out;
}

TcasScore tcas(const RowNormalized& rbar) {
  TcasScore s;
  s.l1 = rbar.l1;
  s.l2 = rbar.l2;
  s.dead_rows = rbar.dead_count();
  if (rbar.l1 == 0) return s;
  s.lambda1 = 1.0 / static_cast<double>(rbar.l1);
  s.lambda2 = s.lambda1 * s.lambda1;

  double diag = 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < rbar.l1; ++i) {
    const auto ri = rbar.row(i);
    double norm_sq = 0.0;
    for (double v : ri) norm_sq += v * v;
    const double gap = 1.0 - std::sqrt(norm_sq);
    diag += gap * gap;
    for (std::size_t k = 0; k < rbar.l1; ++k) {
      if (k == i) continue;
      const auto rk = rbar.row(k);
      double dot = 0.0;
      for (std::size_t j = 0; j < rbar.l2; ++j) dot += ri[j] * rk[j];
      off += dot * dot;
    }
  }
  s.term1 = s.lambda1 * diag;
  s.term2 = s.lambda2 * off;
  s.value = s.term1 + s.term2;
  return s;
}

nlohmann::json to_json(const TcasScore& s) {
  return {{"value", s.value},   {"term1", s.term1}, {"term2", s.term2},
          {"lambda1", s.lambda1}, {"lambda2", s.lambda2}, {"l1", s.l1},
          {"l2", s.l2},         {"dead_rows", s.dead_rows},
          {"normalization", "l1-row"}};
}

void write_cooccurrence_csv(std::ostream& out, const CoOccurrence& r) {
  out << "token";
  for (std::size_t j = 0; j < r.l2; ++j) out << ',' << j;
  out << '\n';
  for (std::size_t i = 0; i < r.l1; ++i) {
    out << i;
    for (std::size_t j = 0; j < r.l2; ++j) out << ',' << r(i, j);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::uint64_t parse_count(const std::string& cell, std::size_t line_no) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size() || cell.front() == '-')
    throw FormatError("payload", "co-occurrence CSV line " + std::to_string(line_no) + ": '" + cell +
                                     "' is not a non-negative integer");
  return v;
}

}  // namespace

CoOccurrence read_cooccurrence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("header", "co-occurrence CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "token")
    throw FormatError("header", "co-occurrence CSV header must start with 'token'");
  const std::size_t l2 = header.size() - 1;
  for (std::size_t j = 0; j < l2; ++j)
    if (header[j + 1] != std::to_string(j))
      throw FormatError("header", "co-occurrence CSV header column " + std::to_string(j + 1) + " must be '" +
                                      std::to_string(j) + "'");

  std::vector<std::uint64_t> counts;
  std::size_t l1 = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != l2 + 1)
      throw FormatError("payload", "co-occurrence CSV line " + std::to_string(line_no) + " has " +
                                       std::to_string(cells.size()) + " cells, expected " +
                                       std::to_string(l2 + 1));
    if (parse_count(cells[0], line_no) != l1)
      throw FormatError("payload", "co-occurrence CSV line " + std::to_string(line_no) + " must hold token " +
                                       std::to_string(l1));
    for (std::size_t j = 0; j < l2; ++j) counts.push_back(parse_count(cells[j + 1], line_no));
    ++l1;
  }
  CoOccurrence r(l1, l2);
  r.counts = std::move(counts);
  return r;
}

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw ValidationError("labelings differ in length");
  const double n = static_cast<double>(a.size());
  if (a.size() < 2) return 1.0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  std::map<std::uint32_t, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1;
    rows[a[i]] += 1;
    cols[b[i]] += 1;
  }
  auto choose2 = [](double x) { return x * (x - 1) / 2; };
  double index = 0, sum_rows = 0, sum_cols = 0;
  for (const auto& [key, c] : joint) index += choose2(c);
  for (const auto& [key, c] : rows) sum_rows += choose2(c);
  for (const auto& [key, c] : cols) sum_cols += choose2(c);
  const double expected = sum_rows * sum_cols / choose2(n);
  const double max_index = (sum_rows + sum_cols) / 2;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace tokgraph
