#include "hsvol/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hsvol {

namespace {

using Complex = std::complex<double>;

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

DensityMatrix normalized_gram(const ComplexMatrix& a, Field field) {
  ComplexMatrix rho = a * a.adjoint();
  const double trace = rho.trace().real();
  rho /= trace;
  // enforce exact Hermiticity against rounding
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return {std::move(rho), field};
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::domain_error("eigh: matrix must be square");
  const Eigen::Index n = h.rows();
  const double scale = h.norm();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, scale)) {
    throw std::domain_error("eigh: matrix is not Hermitian");
  }

  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  int sweeps = 0;
  while (sweeps < kMaxSweeps && off_diagonal_norm(a) > kOffDiagonalTol * scale) {
    ++sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double magnitude = std::abs(a(p, q));
        if (magnitude == 0.0) continue;
        // G = diag(1, e^{-i phi}) R, with R the real rotation zeroing [[app, |h|], [|h|, aqq]]
        const Complex phase = a(p, q) / magnitude;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * magnitude);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        // a <- a G
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        // a <- G^dagger a
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
  EigenDecomposition out;
  out.sweeps = sweeps;
  out.vectors.resize(n, n);
  out.spectrum.values.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.spectrum.values.push_back(a(src, src).real());
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

Spectrum eigvals_hermitian(const ComplexMatrix& h, double tol) { return eigh(h, tol).spectrum; }

bool is_positive(const ComplexMatrix& h, double tol) {
  const Spectrum s = eigvals_hermitian(h, std::max(kHermitianTol, tol));
  return s.values.empty() || s.values.back() >= -tol;
}

DensityMatrix sample_hs_density(int n, Field field, RandomStream& rng) {
  if (n < 2) throw std::domain_error("sample_hs_density: n must be >= 2");
  if (field == Field::Real) return sample_real_wishart(n, n + 1, rng);
  for (;;) {
    // Ginibre A; rho = A^dagger A / tr. Filled as A^dagger directly.
    ComplexMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double re = rng.normal();
        a(i, j) = Complex(re, rng.normal());
      }
    }
    if (a.squaredNorm() > 0.0) return normalized_gram(a, Field::Complex);
  }
}

DensityMatrix sample_real_wishart(int n, int columns, RandomStream& rng) {
  if (n < 1 || columns < 1) throw std::domain_error("sample_real_wishart: bad shape");
  for (;;) {
    ComplexMatrix a(n, columns);
    for (int j = 0; j < columns; ++j) {
      for (int i = 0; i < n; ++i) a(i, j) = rng.normal();
    }
    if (a.squaredNorm() > 0.0) return normalized_gram(a, Field::Real);
  }
}

DensityMatrix sample_pure_partial_trace(int n, RandomStream& rng) {
  if (n < 2) throw std::domain_error("sample_pure_partial_trace: n must be >= 2");
  for (;;) {
    // Haar vector on C^(N^2): normalized complex Gaussian, reshaped to C (N x N)
    Eigen::VectorXcd psi(n * n);
    for (int k = 0; k < n * n; ++k) {
      const double re = rng.normal();
      psi(k) = Complex(re, rng.normal());
    }
    const double norm = psi.norm();
    if (norm == 0.0) continue;
    psi /= norm;
    const ComplexMatrix c = Eigen::Map<const ComplexMatrix>(psi.data(), n, n).transpose();
    return normalized_gram(c, Field::Complex);
  }
}

BlochBasis::BlochBasis(int n) : n_(n) {
  if (n < 1) throw std::domain_error("BlochBasis: n must be >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      generators_.push_back(std::move(sym));
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = Complex(0.0, -inv_sqrt2);
      anti(k, j) = Complex(0.0, inv_sqrt2);
      generators_.push_back(std::move(anti));
    }
    // diag(1, ..., 1, -k, 0, ...) / sqrt(k (k+1))
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int j = 0; j < k; ++j) diag(j, j) = norm;
    diag(k, k) = -k * norm;
    generators_.push_back(std::move(diag));
  }
}

Eigen::VectorXd BlochBasis::to_bloch(const ComplexMatrix& rho) const {
  if (rho.rows() != n_ || rho.cols() != n_) throw std::domain_error("to_bloch: dimension mismatch");
  Eigen::VectorXd tau(dimension());
  for (int i = 0; i < dimension(); ++i) {
    // tr(rho l) = sum_ab rho_ab l_ba
    tau(i) = rho.cwiseProduct(generators_[static_cast<std::size_t>(i)].transpose()).sum().real();
  }
  return tau;
}

ComplexMatrix BlochBasis::from_bloch(const Eigen::VectorXd& tau) const {
  if (tau.size() != dimension()) throw std::domain_error("from_bloch: dimension mismatch");
  ComplexMatrix rho = ComplexMatrix::Identity(n_, n_) / static_cast<double>(n_);
  for (int i = 0; i < dimension(); ++i) rho += tau(i) * generators_[static_cast<std::size_t>(i)];
  return rho;
}

}  // namespace hsvol
