/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>

#include "cop/coherence.hpp"
#include "cop/kernels.hpp"

using namespace cop;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityOperator plus_state() {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return PureState(v).to_density();
}

DensityOperator family_state(double p) {
  Matrix m(2, 2);
  m << 0.5, p - 0.5, p - 0.5, 0.5;  // p|+><+| + (1-p)|-><-|
  return DensityOperator(m);
}

// qubit coherence of formation closed form (oracle for the optimizer route)
double cf_qubit_closed_form(const DensityOperator& rho) {
  const double off = std::abs(rho.matrix()(0, 1));
  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * off * off));
  return binary_entropy(0.5 * (1.0 + root));
}

// independent brute force: random 2- and 3-element decompositions of rho via
// isometries applied to the canonical ensemble
double cf_bruteforce(const DensityOperator& rho, int n_samples,
                     std::uint64_t seed) {
  const int d = rho.dim();
  const int r = rho.rank();
  std::vector<Vector> scaled;  // sqrt(lambda_k) |e_k>
  for (int k = d - 1; k >= 0; --k) {
    if (rho.eigenvalues()[k] < 1e-12) continue;
    scaled.push_back(std::sqrt(rho.eigenvalues()[k]) *
                     rho.eigenvectors().col(k));
  }
  Prng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    const int m = 2 + static_cast<int>(rng.next_u64() % 2);
    if (m < r) continue;
    // isometry: first r columns of a Haar unitary on m dims
    const Matrix v = random_unitary(m, rng.next_u64());
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      Vector member = Vector::Zero(d);
      for (int k = 0; k < r; ++k) member += v(j, k) * scaled[k];
      const double q = member.squaredNorm();
      if (q < 1e-14) continue;
      Eigen::VectorXd f(d);
      kernels::abs_squared(member.data(), f.data(), d);
      f /= q;
      total += q * kernels::neg_xlog2x_sum(f.data(), d);
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("relative entropy of coherence") {
  Matrix d2 = Matrix::Zero(2, 2);
  d2(0, 0) = 0.4;
  d2(1, 1) = 0.6;
  CHECK(relative_entropy_coherence(DensityOperator(d2)).value ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK(relative_entropy_coherence(plus_state()).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  // mixture of |+> and |->: dephased state is I/2, eigenvalues are (p, 1-p)
  for (double p : {0.1, 0.25, 0.4}) {
    CHECK(relative_entropy_coherence(family_state(p)).value ==
          doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-9));
  }

  SUBCASE("bounded by log2(dim)") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto rho = random_state(3, 2, 800 + s);
      const double c = relative_entropy_coherence(rho).value;
      CHECK(c >= 0.0);
      CHECK(c <= std::log2(3.0) + 1e-12);
    }
  }
}

TEST_CASE("coherence of formation") {
  OptimizerConfig cfg;
  cfg.seed = 21;

  Matrix d2 = Matrix::Zero(2, 2);
  d2(0, 0) = 0.35;
  d2(1, 1) = 0.65;
  CHECK(coherence_of_formation(DensityOperator(d2), cfg).value ==
        doctest::Approx(0.0).epsilon(1e-7));

  const DensityOperator pure = random_state(3, 1, 77);
  CHECK(coherence_of_formation(pure, cfg).value ==
        doctest::Approx(relative_entropy_coherence(pure).value)
            .epsilon(1e-9));

  SUBCASE("random qubits against the closed form and the brute force") {
    for (std::uint64_t s = 0; s < 4; ++s) {
      const DensityOperator rho = random_state(2, 2, 3100 + s);
      cfg.seed = 50 + s;
      const double cf = coherence_of_formation(rho, cfg).value;
      const double closed = cf_qubit_closed_form(rho);
      CHECK(std::abs(cf - closed) <= 1e-3);
      const double brute = cf_bruteforce(rho, 100000, 60 + s);
      CHECK(std::abs(cf - brute) <= 1e-3);
      // formation never below distillation
      CHECK(cf >= relative_entropy_coherence(rho).value - 1e-8);
    }
  }

  CHECK_THROWS_AS(
      coherence_of_formation(DensityOperator(Matrix::Identity(9, 9) / 9.0),
                             cfg),
      validation_error);
}

TEST_CASE("channel constructors") {
  SUBCASE("GIO preserves every diagonal state") {
    Matrix d2 = Matrix::Zero(2, 2);
    d2(0, 0) = 0.3;
    d2(1, 1) = 0.7;
    const DensityOperator diag(d2);
    for (std::uint64_t s = 0; s < 8; ++s) {
      const KrausChannel gio = make_gio_channel(2, 2 + s % 3, 900 + s);
      CHECK(gio.class_tag() == ChannelClass::genuinely_incoherent);
      CHECK((apply_channel(gio, diag).matrix() - diag.matrix())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }

  SUBCASE("randomizing channel maps everything to I/d") {
    Matrix d2 = Matrix::Zero(2, 2);
    d2(0, 0) = 0.25;
    d2(1, 1) = 0.75;
    const auto ch = make_randomizing_channel(2);
    CHECK((apply_channel(ch, DensityOperator(d2)).matrix() -
           Matrix::Identity(2, 2) / 2)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    const auto rho = random_state(3, 3, 44);
    CHECK((apply_channel(make_randomizing_channel(3), rho).matrix() -
           Matrix::Identity(3, 3) / 3)
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }

  SUBCASE("dephasing channel equals the dephasing map") {
    const auto rho = random_state(3, 3, 55);
    CHECK((apply_channel(make_dephasing_channel(3), rho).matrix() -
           dephase(rho).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }

  SUBCASE("incoherent channels exist and validate") {
    for (std::uint64_t s = 0; s < 8; ++s) {
      const auto ch = make_incoherent_channel(3, 2 + s % 2, 1000 + s);
      CHECK(ch.class_tag() == ChannelClass::incoherent);
    }
  }
}

TEST_CASE("coherence monotonicity and convexity of the base measure") {
  SUBCASE("monotone under sampled incoherent channels") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto rho = random_state(3, 1 + s % 3, 1200 + s);
      const auto ch = make_incoherent_channel(3, 2, 1300 + s);
      CHECK(relative_entropy_coherence(apply_channel(ch, rho)).value <=
            relative_entropy_coherence(rho).value + 1e-8);
    }
  }

  SUBCASE("dephased output of a GIO equals the dephased input") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto rho = random_state(4, 3, 1400 + s);
      const auto gio = make_gio_channel(4, 3, 1500 + s);
      CHECK((dephase(apply_channel(gio, rho)).matrix() -
             dephase(rho).matrix())
                .cwiseAbs()
                .maxCoeff() <= 1e-9);
    }
  }

  SUBCASE("convex under mixing") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      Prng rng(1600 + s);
      const double w = rng.uniform();
      const auto a = random_state(3, 2, 1700 + s);
      const auto b = random_state(3, 3, 1800 + s);
      const DensityOperator mix(w * a.matrix() + (1 - w) * b.matrix());
      CHECK(w * relative_entropy_coherence(a).value +
                (1 - w) * relative_entropy_coherence(b).value >=
            relative_entropy_coherence(mix).value - 1e-8);
    }
  }
}

TEST_CASE("generalized CNOT") {
  const Matrix u = generalized_cnot(2, 2);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-15);
  // |1>|0> -> |1>|1>
  Vector in = Vector::Zero(4);
  in[2] = 1.0;
  const Vector out = u * in;
  CHECK(std::abs(out[3] - 1.0) < 1e-15);

  // |+>|0> -> Bell
  Vector plus0 = Vector::Zero(4);
  plus0[0] = kInvSqrt2;
  plus0[2] = kInvSqrt2;
  const Vector bell = u * plus0;
  CHECK(std::abs(bell[0] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(bell[3] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(bell[1]) + std::abs(bell[2]) < 1e-15);

  SUBCASE("copies the computational index of random pure states") {
    // coherence of the input equals the cut entanglement of the output
    for (std::uint64_t s = 0; s < 10; ++s) {
      const PureState psi = random_pure(4, 2000 + s);
      const Matrix cnot = generalized_cnot(4, 4);
      Vector joint = Vector::Zero(16);  // psi (x) |0>, index = x*4 + y
      for (int x = 0; x < 4; ++x) joint[x * 4] = psi.vector()[x];
      const Vector after = cnot * joint;
      // Schmidt spectrum across the 4:4 cut
      Eigen::MatrixXcd m(4, 4);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) m(x, y) = after[x * 4 + y];
      Eigen::SelfAdjointEigenSolver<Matrix> es(m * m.adjoint());
      const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
      const double cut_entropy =
          kernels::neg_xlog2x_sum(lam.data(), static_cast<std::size_t>(4));
      CHECK(cut_entropy ==
            doctest::Approx(relative_entropy_coherence(psi)).epsilon(1e-9));
    }
  }

  SUBCASE("maps basis projectors to basis projectors") {
    const Matrix big = generalized_cnot(2, 3);
    for (int i = 0; i < 6; ++i) {
      Matrix proj = Matrix::Zero(6, 6);
      proj(i, i) = 1.0;
      const Matrix out_m = big * proj * big.adjoint();
      // exactly one diagonal 1, nothing off-diagonal
      int ones = 0;
      double off_max = 0.0;
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
          if (r == c) {
            if (std::abs(out_m(r, c) - 1.0) < 1e-14) ++ones;
          } else {
            off_max = std::max(off_max, std::abs(out_m(r, c)));
          }
        }
      CHECK(ones == 1);
      CHECK(off_max < 1e-14);
    }
  }

  CHECK_THROWS_AS(generalized_cnot(3, 2), validation_error);
}
