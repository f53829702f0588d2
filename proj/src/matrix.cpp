#include "tokgraph/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace tokgraph {

std::vector<double> DenseMatrix::row_sums() const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (double v : row(r)) out[r] += v;
  return out;
}

std::vector<double> DenseMatrix::col_sums() const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
  return out;
}

double DenseMatrix::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double DenseMatrix::frobenius_squared() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

double DenseMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  return worst;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace tokgraph
