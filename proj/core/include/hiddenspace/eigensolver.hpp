#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <functional>

namespace hs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Eigenpairs in descending eigenvalue order; columns of `vectors` are orthonormal.
struct SymmetricEigenpairs {
  Vector values;
  Matrix vectors;
  double max_residual = 0.0;
  std::size_t matvecs = 0;
};

struct LanczosOptions {
  /// Largest eigenpairs wanted.
  std::size_t count = 1;
  /// Converged when ||A x - theta x|| <= tolerance for every wanted pair.
  double tolerance = 1e-10;
  /// Budget of matrix-vector products; 0 means 10 * n.
  std::size_t max_matvecs = 0;
  /// Krylov basis size; 0 picks max(2*count + 20, 3*count) capped at n.
  std::size_t basis_size = 0;
  std::uint64_t seed = 0x5eed;
};

using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

/// Algebraically largest eigenpairs of a symmetric operator.
///
/// Restarted Lanczos with full reorthogonalisation: each cycle extends an
/// orthonormal basis V and its image AV, solves the projected problem V'AV,
/// and restarts from the leading Ritz vectors plus the current residual
/// direction (Krylov-Schur). Throws ConvergenceError if the budget runs out.
SymmetricEigenpairs lanczos_largest(const LinearOperator& op, std::size_t n,
                                    const LanczosOptions& options);
SymmetricEigenpairs lanczos_largest(const SparseMatrix& a, const LanczosOptions& options);

/// Full dense decomposition, descending.
SymmetricEigenpairs dense_symmetric_eigen(const Matrix& a);

}  // namespace hs
