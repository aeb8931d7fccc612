#include "discrepal/symmetric_eigen.hpp"

#include <lapacke.h>

#include <string>

#include "discrepal/errors.hpp"

namespace discrepal {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, bool vectors) {
  if (a.rows() != a.cols()) throw DimensionError("symmetric_eigen: matrix is not square");
  SymmetricEigen out;
  const auto n = static_cast<lapack_int>(a.rows());
  out.values.resize(a.rows());
  if (n == 0) return out;
  Eigen::MatrixXd work = a;  // overwritten with the eigenvectors
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n, work.data(), n, out.values.data());
  if (info != 0) throw NumericalError("symmetric_eigen: dsyevd failed with info " + std::to_string(info));
  if (vectors) out.vectors = std::move(work);
  return out;
}

}  // namespace discrepal
