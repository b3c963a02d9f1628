#include "hiddenspace/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "hiddenspace/error.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

namespace {

// Orthogonalises f against the first `cols` columns of basis, twice (DGKS).
void reorthogonalize(const Matrix& basis, Eigen::Index cols, Vector& f) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Vector h = basis.leftCols(cols).transpose() * f;
    f.noalias() -= basis.leftCols(cols) * h;
  }
}

Vector random_unit(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform() - 0.5;
  v.normalize();
  return v;
}

}  // namespace

SymmetricEigenpairs dense_symmetric_eigen(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", INFINITY);
  const auto n = a.rows();
  SymmetricEigenpairs out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    worst = std::max(worst, (a * out.vectors.col(j) - out.values[j] * out.vectors.col(j)).norm());
  out.max_residual = worst;
  return out;
}

SymmetricEigenpairs lanczos_largest(const LinearOperator& op, std::size_t n,
                                    const LanczosOptions& options) {
  const std::size_t k = options.count;
  if (k == 0 || k > n) throw InvalidArgument("lanczos_largest: requested count must be in [1, n]");
  const std::size_t m = std::min(
      n, options.basis_size ? std::max(options.basis_size, k + 1) : std::max(2 * k + 20, 3 * k));
  const std::size_t budget = options.max_matvecs ? options.max_matvecs : 10 * n;

  const auto nn = static_cast<Eigen::Index>(n);
  const auto mm = static_cast<Eigen::Index>(m);
  Matrix basis(nn, mm);
  Matrix image(nn, mm);
  Rng rng(options.seed);
  Vector next = random_unit(n, rng);
  Vector f(nn);

  std::size_t matvecs = 0;
  Eigen::Index kept = 0;
  double best = INFINITY;

  while (true) {
    for (Eigen::Index j = kept; j < mm; ++j) {
      basis.col(j) = next;
      op(basis.col(j), f);
      image.col(j) = f;
      ++matvecs;
      reorthogonalize(basis, j + 1, f);
      double beta = f.norm();
      const double scale = std::max(1.0, image.col(j).norm());
      if (beta <= 1e-12 * scale) {
        // Invariant subspace found; continue with a fresh orthogonal direction.
        f = random_unit(n, rng);
        reorthogonalize(basis, j + 1, f);
        beta = f.norm();
        if (beta <= 1e-12) {
          if (j + 1 == nn) break;
          throw ConvergenceError("lanczos_largest: cannot extend Krylov basis", best);
        }
      }
      next = f / beta;
    }

    Matrix projected = basis.transpose() * image;
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> small(projected);
    const Vector theta = small.eigenvalues().reverse();
    const Matrix s = small.eigenvectors().rowwise().reverse();

    const auto kk = static_cast<Eigen::Index>(k);
    const Matrix ritz = basis * s.leftCols(kk);
    const Matrix ritz_image = image * s.leftCols(kk);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < kk; ++i)
      worst = std::max(worst, (ritz_image.col(i) - theta[i] * ritz.col(i)).norm());
    best = std::min(best, worst);

    if (worst <= options.tolerance || m == n) {
      if (worst > options.tolerance && m == n) {
        // The full space was spanned; the Ritz pairs are exact up to rounding.
        if (worst > 1e3 * options.tolerance)
          throw ConvergenceError("lanczos_largest: residual above tolerance", worst);
      }
      SymmetricEigenpairs out;
      out.values = theta.head(kk);
      out.vectors = ritz;
      for (Eigen::Index i = 0; i < kk; ++i) out.vectors.col(i).normalize();
      out.max_residual = worst;
      out.matvecs = matvecs;
      return out;
    }
    if (matvecs >= budget)
      throw ConvergenceError("lanczos_largest: matvec budget exhausted", best);

    // Thick restart: keep the leading Ritz vectors and their images.
    kept = std::min<Eigen::Index>(mm - 1, kk + (mm - kk) / 2);
    const Matrix keep_basis = basis * s.leftCols(kept);
    const Matrix keep_image = image * s.leftCols(kept);
    basis.leftCols(kept) = keep_basis;
    image.leftCols(kept) = keep_image;
    // `next` is orthogonal to the old basis and therefore to its Ritz subspace.
    reorthogonalize(basis, kept, next);
    next.normalize();
  }
}

SymmetricEigenpairs lanczos_largest(const SparseMatrix& a, const LanczosOptions& options) {
  if (a.rows() != a.cols()) throw InvalidArgument("lanczos_largest: matrix must be square");
  return lanczos_largest([&a](const Vector& in, Vector& out) { out.noalias() = a * in; },
                         static_cast<std::size_t>(a.rows()), options);
}

}  // namespace hs
