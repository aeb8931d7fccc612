#pragma once

#include <Eigen/Dense>

namespace discrepal {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns; empty unless requested
};

// Divide-and-conquer eigendecomposition (LAPACK dsyevd) of a symmetric
// matrix; only the lower triangle is read. Throws NumericalError when LAPACK
// reports a failure.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, bool vectors);

}  // namespace discrepal
