/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cop/kernels.hpp"
#include "cop/prng.hpp"
#include "cop/qcore.hpp"

using cop::Prng;
using cop::kernels::cplx;
namespace k = cop::kernels;

namespace {

std::vector<cplx> random_cvec(std::size_t n, std::uint64_t seed) {
  Prng rng(seed);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {rng.gaussian(), rng.gaussian()};
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match direct formulas") {
  const auto z = random_cvec(17, 1);
  std::vector<double> out(17);
  k::scalar::abs_squared(z.data(), out.data(), z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    CHECK(out[i] == doctest::Approx(std::norm(z[i])).epsilon(1e-14));

  // entropy of a dyadic distribution
  const double p[3] = {0.5, 0.25, 0.25};
  CHECK(k::scalar::neg_xlog2x_sum(p, 3) == doctest::Approx(1.5).epsilon(1e-14));
  const double with_zero[4] = {0.5, 0.5, 0.0, 0.0};
  CHECK(k::scalar::neg_xlog2x_sum(with_zero, 4) == doctest::Approx(1.0));
}

TEST_CASE("block matrix apply matches Eigen") {
  for (std::size_t db : {1, 2, 3, 4, 5, 8}) {
    const std::size_t da = 3;
    const auto psi = random_cvec(da * db, 10 + db);
    const auto u = random_cvec(db * db, 20 + db);
    std::vector<cplx> out(da * db);
    k::scalar::apply_block_matrix(u.data(), db, psi.data(), da, out.data());

    Eigen::MatrixXcd um(db, db);
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t c = 0; c < db; ++c) um(r, c) = u[r * db + c];
    for (std::size_t i = 0; i < da; ++i) {
      Eigen::VectorXcd row(db);
      for (std::size_t j = 0; j < db; ++j) row[j] = psi[i * db + j];
      const Eigen::VectorXcd want = um * row;
      for (std::size_t kk = 0; kk < db; ++kk)
        CHECK(std::abs(out[i * db + kk] - want[kk]) < 1e-12);
    }
  }
}

#if COP_KERNELS_X86
TEST_CASE("avx2 variants agree with the scalar reference") {
  if (!k::avx2_supported()) return;

  SUBCASE("abs_squared") {
    for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 64, 257}) {
      const auto z = random_cvec(n, n);
      std::vector<double> a(n), b(n);
      k::scalar::abs_squared(z.data(), a.data(), n);
      k::avx2::abs_squared(z.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
    }
  }

  SUBCASE("neg_xlog2x_sum on probability-like data") {
    Prng rng(7);
    for (std::size_t n : {1, 2, 3, 4, 6, 64, 1000, 4096}) {
      std::vector<double> x(n);
      double sum = 0.0;
      for (auto& v : x) sum += (v = -std::log(1.0 - rng.uniform()));
      for (auto& v : x) v /= sum;
      const double a = k::scalar::neg_xlog2x_sum(x.data(), n);
      const double b = k::avx2::neg_xlog2x_sum(x.data(), n);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }

  SUBCASE("neg_xlog2x_sum edge values") {
    const double x[8] = {0.0, 1.0, 0.5, 1e-300, 4.9e-324, 0.25, 2.0, 1e-17};
    const double a = k::scalar::neg_xlog2x_sum(x, 8);
    const double b = k::avx2::neg_xlog2x_sum(x, 8);
    CHECK(std::abs(a - b) <= 1e-12);
    // exact powers of two contribute exact values
    const double pow2[2] = {0.5, 0.5};
    CHECK(k::avx2::neg_xlog2x_sum(pow2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("apply_block_matrix and fused entropy") {
    Prng rng(9);
    for (std::size_t db : {1, 2, 3, 4, 7, 9, 16}) {
      const std::size_t da = 4;
      const auto psi = random_cvec(da * db, 100 + db);
      // a well-scaled matrix keeps |amp|^2 in a realistic range
      auto u = random_cvec(db * db, 200 + db);
      for (auto& z : u) z /= std::sqrt(static_cast<double>(db));

      std::vector<cplx> a(da * db), b(da * db);
      k::scalar::apply_block_matrix(u.data(), db, psi.data(), da, a.data());
      k::avx2::apply_block_matrix(u.data(), db, psi.data(), da, b.data());
      for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-12);

      // normalize psi so the fused entropy sees a distribution
      double n2 = 0.0;
      for (const auto& z : psi) n2 += std::norm(z);
      std::vector<cplx> unit = psi;
      for (auto& z : unit) z /= std::sqrt(n2);
      const double ea =
          k::scalar::rotated_dephased_entropy(u.data(), db, unit.data(), da);
      const double eb =
          k::avx2::rotated_dephased_entropy(u.data(), db, unit.data(), da);
      CHECK(std::abs(ea - eb) <= 1e-12 * std::max(1.0, std::abs(ea)));
    }
  }
}
#endif

TEST_CASE("dispatch honors the backend override") {
  const auto prev = k::active_backend();
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  const double p[2] = {0.5, 0.5};
  CHECK(k::neg_xlog2x_sum(p, 2) == doctest::Approx(1.0));
  k::set_backend(prev);
}

TEST_CASE("fused entropy equals entropy of the rotated amplitudes") {
  Prng rng(31);
  const std::size_t da = 3, db = 4;
  auto psi = random_cvec(da * db, 5);
  double n2 = 0.0;
  for (const auto& z : psi) n2 += std::norm(z);
  for (auto& z : psi) z /= std::sqrt(n2);
  const cop::Matrix u = cop::random_unitary(static_cast<int>(db), 77);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;

  std::vector<cplx> rotated(da * db);
  k::apply_block_matrix(ur.data(), db, psi.data(), da, rotated.data());
  std::vector<double> g(da * db);
  k::abs_squared(rotated.data(), g.data(), rotated.size());
  const double split = k::neg_xlog2x_sum(g.data(), g.size());
  const double fused = k::rotated_dephased_entropy(ur.data(), db, psi.data(), da);
  CHECK(fused == doctest::Approx(split).epsilon(1e-13));
}
