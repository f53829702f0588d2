#pragma once

#include <cstddef>
#include <vector>

#include "tokgraph/matrix.hpp"

namespace tokgraph {

struct JacobiOptions {
  // Sweeps stop once the off-diagonal Frobenius norm falls to this value.
  double off_diagonal_tolerance = 1e-12;
  int max_sweeps = 100;
  std::size_t max_dimension = 500;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // sorted descending
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

// Cyclic Jacobi rotations for a dense symmetric matrix. Throws ValidationError
// for non-square input, asymmetry above 1e-9, or dimension over max_dimension.
EigenResult symmetric_eigenvalues(const DenseMatrix& a, const JacobiOptions& options = {});

}  // namespace tokgraph
