#include "tokgraph/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "tokgraph/error.hpp"

namespace tokgraph {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

// Applies the rotation that zeroes a(p,q) (Golub & Van Loan, Alg. 8.4.2).
void rotate(DenseMatrix& a, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

EigenResult symmetric_eigenvalues(const DenseMatrix& input, const JacobiOptions& options) {
  if (!input.square())
    throw ValidationError("eigensolver needs a square matrix, got " + std::to_string(input.rows()) +
                          "x" + std::to_string(input.cols()));
  if (input.rows() > options.max_dimension)
    throw ValidationError("eigensolver dimension " + std::to_string(input.rows()) +
                          " exceeds cap " + std::to_string(options.max_dimension));
  if (const double asym = input.max_asymmetry(); asym > 1e-9)
    throw ValidationError("eigensolver needs a symmetric matrix (asymmetry " +
                          std::to_string(asym) + ")");

  DenseMatrix a = input;
  const std::size_t n = a.rows();
  EigenResult result;
  result.off_diagonal_norm = off_diagonal_norm(a);
  while (result.off_diagonal_norm > options.off_diagonal_tolerance &&
         result.sweeps < options.max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
    ++result.sweeps;
    result.off_diagonal_norm = off_diagonal_norm(a);
  }

  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  std::ranges::sort(result.eigenvalues, std::greater<>{});
  return result;
}

}  // namespace tokgraph
