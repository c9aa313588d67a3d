#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hsvol/mixedstates.hpp"
#include "hsvol/rng.hpp"

namespace hsvol {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Hermitian (real symmetric for Field::Real), unit trace, positive semidefinite.
struct DensityMatrix {
  ComplexMatrix matrix;
  Field field = Field::Complex;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Eigenvalues sorted nonincreasing.
struct Spectrum {
  std::vector<double> values;
};

struct EigenDecomposition {
  Spectrum spectrum;
  ComplexMatrix vectors;  // column k belongs to spectrum.values[k]
  int sweeps = 0;
};

/**
 * Cyclic complex Jacobi diagonalization of a Hermitian matrix.
 *
 * Each rotation removes the phase of H(p,q) and then applies the real Jacobi
 * rotation of the resulting 2x2 block. Stops once the off-diagonal Frobenius
 * norm is below 1e-13 ||H||, or after 100 sweeps.
 * Throws std::domain_error if H is not Hermitian to tol (relative to ||H||).
 */
EigenDecomposition eigh(const ComplexMatrix& h, double tol = kHermitianTol);
Spectrum eigvals_hermitian(const ComplexMatrix& h, double tol = kHermitianTol);

/// True iff the smallest eigenvalue is >= -tol.
bool is_positive(const ComplexMatrix& h, double tol = kPositivityTol);

/// HS-distributed state: A^dagger A / tr, A complex Ginibre N x N (complex), or
/// A A^T / tr with A real Gaussian N x (N+1) (real).
DensityMatrix sample_hs_density(int n, Field field, RandomStream& rng);
/// A A^T / tr for a real Gaussian N x columns matrix A.
DensityMatrix sample_real_wishart(int n, int columns, RandomStream& rng);
/// Reduced state of a Haar-random pure state on C^N (x) C^N.
DensityMatrix sample_pure_partial_trace(int n, RandomStream& rng);

/**
 * Generalized Gell-Mann basis of traceless Hermitian N x N matrices,
 * normalized to tr(l_i l_j) = delta_ij. For each k = 2..N: the symmetric and
 * antisymmetric pairs (j, k), j < k, then the diagonal generator of level k-1.
 * For N = 2 this is (sigma_x, sigma_y, sigma_z)/sqrt(2).
 */
class BlochBasis {
 public:
  explicit BlochBasis(int n);

  int size() const { return n_; }
  int dimension() const { return static_cast<int>(generators_.size()); }
  const ComplexMatrix& generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }

  /// tau_i = tr(rho l_i).
  Eigen::VectorXd to_bloch(const ComplexMatrix& rho) const;
  /// I/N + sum tau_i l_i. Not necessarily positive.
  ComplexMatrix from_bloch(const Eigen::VectorXd& tau) const;

 private:
  int n_;
  std::vector<ComplexMatrix> generators_;
};

}  // namespace hsvol
