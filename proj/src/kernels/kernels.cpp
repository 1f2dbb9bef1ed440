/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/kernels.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace cop::kernels {

namespace scalar {

void abs_squared(const cplx* z, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
  }
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= DBL_MIN) acc -= x[i] * std::log2(x[i]);
  }
  return acc;
}

void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out) {
  for (std::size_t i = 0; i < da; ++i) {
    const cplx* row = psi + i * db;
    for (std::size_t k = 0; k < db; ++k) {
      const cplx* urow = u + k * db;
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < db; ++j) {
        const double ar = urow[j].real(), ai = urow[j].imag();
        const double br = row[j].real(), bi = row[j].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
      }
      out[i * db + k] = cplx(re, im);
    }
  }
}

double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da) {
  double acc = 0.0;
  for (std::size_t i = 0; i < da; ++i) {
    const cplx* row = psi + i * db;
    for (std::size_t k = 0; k < db; ++k) {
      const cplx* urow = u + k * db;
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < db; ++j) {
        const double ar = urow[j].real(), ai = urow[j].imag();
        const double br = row[j].real(), bi = row[j].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
      }
      const double g = re * re + im * im;
      if (g >= DBL_MIN) acc -= g * std::log2(g);
    }
  }
  return acc;
}

}  // namespace scalar

namespace {

Backend detect_backend() {
#if COP_KERNELS_X86
  if (avx2_supported()) return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

bool avx2_supported() {
#if COP_KERNELS_X86
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) b = Backend::scalar;
  g_backend.store(b, std::memory_order_relaxed);
}

void abs_squared(const cplx* z, double* out, std::size_t n) {
#if COP_KERNELS_X86
  if (active_backend() == Backend::avx2) return avx2::abs_squared(z, out, n);
#endif
  scalar::abs_squared(z, out, n);
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
#if COP_KERNELS_X86
  if (active_backend() == Backend::avx2) return avx2::neg_xlog2x_sum(x, n);
#endif
  return scalar::neg_xlog2x_sum(x, n);
}

void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out) {
#if COP_KERNELS_X86
  if (active_backend() == Backend::avx2)
    return avx2::apply_block_matrix(u, db, psi, da, out);
#endif
  scalar::apply_block_matrix(u, db, psi, da, out);
}

double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da) {
  if (da * db > kMaxFusedLen)
    throw std::invalid_argument("rotated_dephased_entropy: state too large");
#if COP_KERNELS_X86
  if (active_backend() == Backend::avx2)
    return avx2::rotated_dephased_entropy(u, db, psi, da);
#endif
  return scalar::rotated_dephased_entropy(u, db, psi, da);
}

}  // namespace cop::kernels
