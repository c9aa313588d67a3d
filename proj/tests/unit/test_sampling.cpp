#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <complex>
#include <gmpxx.h>
#include <map>
#include <vector>

#include "hsvol/sampling.hpp"

using namespace hsvol;
using Complex = std::complex<double>;

namespace {

ComplexMatrix random_hermitian(int n, RandomStream& rng) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  return 0.5 * (a + a.adjoint());
}

// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal divided out.
ComplexMatrix haar_unitary(int n, RandomStream& rng) {
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Polynomial in N eigenvalues with rational coefficients, keyed by exponent vector.
using Poly = std::map<std::vector<int>, mpq_class>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  }
  return out;
}

mpz_class factorial(int k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

// Integral over the simplex sum = 1: prod a_i! / (sum a_i + N - 1)!
mpq_class simplex_integral(const Poly& p, int n) {
  mpq_class total = 0;
  for (const auto& [e, c] : p) {
    mpz_class num = 1;
    int degree = 0;
    for (int a : e) {
      num *= factorial(a);
      degree += a;
    }
    total += c * ratio(num, factorial(degree + n - 1));
  }
  return total;
}

// E[tr rho^2] under the density prod |l_i - l_j|^2 on the simplex, integrated exactly.
mpq_class complex_purity_oracle(int n) {
  Poly vandermonde{{std::vector<int>(static_cast<std::size_t>(n), 0), 1}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> ei(static_cast<std::size_t>(n), 0), ej(static_cast<std::size_t>(n), 0);
      ei[static_cast<std::size_t>(i)] = 1;
      ej[static_cast<std::size_t>(j)] = 1;
      vandermonde = multiply(vandermonde, Poly{{ei, 1}, {ej, -1}});
    }
  }
  const Poly weight = multiply(vandermonde, vandermonde);
  Poly purity;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 2;
    purity[e] = 1;
  }
  return simplex_integral(multiply(weight, purity), n) / simplex_integral(weight, n);
}

// N = 2, l = ((1+u)/2, (1-u)/2): purity (1 + u^2)/2 against |u|^beta on [-1, 1].
mpq_class two_level_purity_oracle(int beta) {
  const mpq_class moment_beta = ratio(1, beta + 1);
  const mpq_class moment_beta2 = ratio(1, beta + 3);
  return ratio(1, 2) * (1 + moment_beta2 / moment_beta);
}

double hilbert_schmidt_distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("eigensolver examples") {
  ComplexMatrix h(2, 2);
  h << 2, 1, 1, 2;
  auto s = eigvals_hermitian(h).values;
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(1.0));

  h << 0, Complex(0, -1), Complex(0, 1), 0;
  s = eigvals_hermitian(h).values;
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(-1.0));

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 0.2, 0.5, 0.3;
  const EigenDecomposition e = eigh(d);
  CHECK(e.sweeps == 0);
  CHECK(e.spectrum.values == std::vector<double>{0.5, 0.3, 0.2});

  ComplexMatrix bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(eigh(bad), std::domain_error);
  CHECK_THROWS_AS(eigh(ComplexMatrix::Zero(2, 3)), std::domain_error);
}

TEST_CASE("eigensolver agrees with a reference solver") {
  RandomStream rng(11, 0);
  for (int n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix h = random_hermitian(n, rng);
      const EigenDecomposition e = eigh(h);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h);
      const double scale = std::max(1.0, h.norm());
      for (int k = 0; k < n; ++k) {
        // reference is ascending
        CHECK(std::abs(e.spectrum.values[static_cast<std::size_t>(k)] - ref.eigenvalues()(n - 1 - k)) <=
              1e-12 * scale);
      }
      const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(e.spectrum.values.data(), n);
      CHECK((h * e.vectors - e.vectors * lambda.asDiagonal()).norm() <= 1e-12 * scale);
      CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)).norm() <= 1e-12);
      CHECK(lambda.sum() == doctest::Approx(h.trace().real()).epsilon(1e-12).scale(scale));
      CHECK(e.sweeps <= 100);
    }
  }
}

TEST_CASE("positivity") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 1.0, 0.0;
  CHECK(is_positive(d));
  d(1, 1) = -0.1;
  CHECK_FALSE(is_positive(d));
  d(1, 1) = -1e-12;
  CHECK(is_positive(d));
}

TEST_CASE("Bloch basis is an orthonormal traceless Hermitian frame") {
  for (int n = 1; n <= 5; ++n) {
    const BlochBasis basis(n);
    REQUIRE(basis.dimension() == n * n - 1);
    for (int i = 0; i < basis.dimension(); ++i) {
      const ComplexMatrix& li = basis.generator(i);
      CHECK((li - li.adjoint()).norm() == 0.0);
      CHECK(std::abs(li.trace()) < 1e-15);
      for (int j = 0; j < basis.dimension(); ++j) {
        const Complex ip = (li * basis.generator(j)).trace();
        CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
      }
    }
  }
  const BlochBasis two(2);
  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  CHECK((two.generator(2) - sz / std::sqrt(2.0)).norm() < 1e-15);
  ComplexMatrix sy(2, 2);
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  CHECK((two.generator(1) - sy / std::sqrt(2.0)).norm() < 1e-15);
}

TEST_CASE("Bloch vector examples") {
  const BlochBasis two(2);
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1;
  const Eigen::VectorXd tau = two.to_bloch(up);
  CHECK(tau.norm() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(tau(2) == doctest::Approx(1 / std::sqrt(2.0)));

  const BlochBasis three(3);
  Eigen::VectorXcd psi(3);
  psi << Complex(1, 2), Complex(-0.5, 0.3), Complex(0.1, -1);
  psi.normalize();
  CHECK(three.to_bloch(psi * psi.adjoint()).norm() == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK_THROWS_AS(three.to_bloch(up), std::domain_error);
  CHECK_THROWS_AS(three.from_bloch(Eigen::VectorXd::Zero(3)), std::domain_error);
}

TEST_CASE("Bloch map round trip and isometry") {
  RandomStream rng(5, 1);
  for (int n = 2; n <= 5; ++n) {
    const BlochBasis basis(n);
    for (int trial = 0; trial < 50; ++trial) {
      const DensityMatrix a = sample_hs_density(n, Field::Complex, rng);
      const DensityMatrix b = sample_hs_density(n, Field::Real, rng);
      const Eigen::VectorXd ta = basis.to_bloch(a.matrix);
      const Eigen::VectorXd tb = basis.to_bloch(b.matrix);
      CHECK((basis.from_bloch(ta) - a.matrix).norm() < 1e-13);
      CHECK(hilbert_schmidt_distance(a.matrix, b.matrix) == doctest::Approx((ta - tb).norm()).epsilon(1e-12));
      // |tau|^2 = tr rho^2 - 1/N
      CHECK(ta.squaredNorm() == doctest::Approx((a.matrix * a.matrix).trace().real() - 1.0 / n));
    }
  }
}

TEST_CASE("sampled states satisfy the density matrix invariants") {
  for (Field field : {Field::Complex, Field::Real}) {
    for (int n = 2; n <= 4; ++n) {
      RandomStream rng(2024, static_cast<std::uint64_t>(n));
      for (int trial = 0; trial < 10000; ++trial) {
        const DensityMatrix rho = sample_hs_density(n, field, rng);
        REQUIRE(rho.size() == n);
        REQUIRE((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol);
        REQUIRE(std::abs(rho.matrix.trace() - Complex(1.0)) <= 1e-12);
        REQUIRE(is_positive(rho.matrix));
        if (field == Field::Real) REQUIRE(rho.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("exact purity oracle") {
  CHECK(complex_purity_oracle(2) == ratio(4, 5));
  CHECK(complex_purity_oracle(3) == ratio(3, 5));
  for (int n = 2; n <= 4; ++n) CHECK(complex_purity_oracle(n) == ratio(2 * n, n * n + 1));
  CHECK(two_level_purity_oracle(2) == ratio(4, 5));
  CHECK(two_level_purity_oracle(1) == ratio(3, 4));
}

TEST_CASE("sample purity matches the oracle") {
  const int samples = 40000;
  for (Field field : {Field::Complex, Field::Real}) {
    for (int n : {2, 3}) {
      if (field == Field::Real && n == 3) continue;
      const double target = field == Field::Complex ? complex_purity_oracle(n).get_d()
                                                    : two_level_purity_oracle(1).get_d();
      RandomStream rng(77, static_cast<std::uint64_t>(n));
      double sum = 0, sum2 = 0;
      for (int k = 0; k < samples; ++k) {
        const DensityMatrix rho = sample_hs_density(n, field, rng);
        const double p = (rho.matrix * rho.matrix).trace().real();
        sum += p;
        sum2 += p * p;
      }
      const double mean = sum / samples;
      const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
      CHECK(std::abs(mean - target) <= 3 * se);
    }
  }
}

TEST_CASE("unitary invariance of the complex sampler") {
  const int n = 3;
  const int samples = 20000;
  RandomStream urng(3, 99);
  const ComplexMatrix u = haar_unitary(n, urng);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() < 1e-13);

  // basis-dependent statistics: rho_00 and |rho_01|^2
  auto moments = [&](std::uint64_t stream, bool rotate) {
    RandomStream rng(31, stream);
    std::array<double, 4> m{};
    for (int k = 0; k < samples; ++k) {
      ComplexMatrix rho = sample_hs_density(n, Field::Complex, rng).matrix;
      if (rotate) rho = u * rho * u.adjoint();
      const double a = rho(0, 0).real();
      const double b = std::norm(rho(0, 1));
      m[0] += a;
      m[1] += a * a;
      m[2] += b;
      m[3] += b * b;
    }
    for (double& x : m) x /= samples;
    return m;
  };
  const auto plain = moments(0, false);
  const auto rotated = moments(1, true);
  for (int s : {0, 2}) {
    const double var = plain[s + 1] - plain[s] * plain[s] + rotated[s + 1] - rotated[s] * rotated[s];
    CHECK(std::abs(plain[s] - rotated[s]) <= 3 * std::sqrt(var / samples));
  }
  CHECK(plain[0] == doctest::Approx(1.0 / n).epsilon(0.02));
}

TEST_CASE("partial trace of a random pure state is HS distributed") {
  const int samples = 40000;
  for (int n : {2, 3}) {
    RandomStream rng(8, static_cast<std::uint64_t>(n));
    double sum = 0, sum2 = 0;
    for (int k = 0; k < samples; ++k) {
      const DensityMatrix rho = sample_pure_partial_trace(n, rng);
      REQUIRE(is_positive(rho.matrix));
      REQUIRE(std::abs(rho.matrix.trace() - Complex(1.0)) <= 1e-12);
      const double p = (rho.matrix * rho.matrix).trace().real();
      sum += p;
      sum2 += p * p;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
    CHECK(std::abs(mean - complex_purity_oracle(n).get_d()) <= 3 * se);
  }
}

TEST_CASE("sampler argument checks") {
  RandomStream rng(1, 1);
  CHECK_THROWS_AS(sample_hs_density(1, Field::Complex, rng), std::domain_error);
  CHECK_THROWS_AS(sample_real_wishart(2, 0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_pure_partial_trace(1, rng), std::domain_error);
  CHECK_THROWS_AS(BlochBasis(0), std::domain_error);
}
