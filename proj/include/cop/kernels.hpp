/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstddef>

// Arithmetic inner loops shared by the entropy/optimizer code paths.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant selected at runtime from CPUID. The two variants are
// equivalence-tested against each other; callers go through the dispatching
// front ends below.
namespace cop::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
// Force a backend (tests, benchmarks). Requesting avx2 on a machine without
// it falls back to scalar.
void set_backend(Backend b);

// out[i] = |z[i]|^2
void abs_squared(const cplx* z, double* out, std::size_t n);

// Sum of -x*log2(x) with the 0*log(0) = 0 convention. Entries are assumed
// nonnegative; values below DBL_MIN contribute zero.
double neg_xlog2x_sum(const double* x, std::size_t n);

// out[i*db + k] = sum_j u[k*db + j] * psi[i*db + j]
// for i in [0, da): the action of (I_da (x) U) on a bipartite state vector,
// with u a db x db row-major matrix.
void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out);

// Shannon entropy (bits) of |(I (x) U) psi|^2, fused so the rotated vector
// is never materialized by the caller. Requires da*db <= kMaxFusedLen.
inline constexpr std::size_t kMaxFusedLen = 4096;
double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da);

namespace scalar {
void abs_squared(const cplx* z, double* out, std::size_t n);
double neg_xlog2x_sum(const double* x, std::size_t n);
void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out);
double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define COP_KERNELS_X86 1
namespace avx2 {
void abs_squared(const cplx* z, double* out, std::size_t n);
double neg_xlog2x_sum(const double* x, std::size_t n);
void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out);
double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da);
}  // namespace avx2
#else
#define COP_KERNELS_X86 0
#endif

}  // namespace cop::kernels
