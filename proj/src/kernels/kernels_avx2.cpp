/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/kernels.hpp"

#if COP_KERNELS_X86

#include <immintrin.h>

#include <cfloat>
#include <cmath>

// Compiled with -mavx2 -mfma; only reached when cpuid reports both.
namespace cop::kernels::avx2 {

namespace {

// log2 for normal positive doubles: frexp-style mantissa/exponent split and
// the classic rational approximation of log(1+z) on [sqrt(1/2)-1, sqrt(2)-1]
// (Cephes log.c coefficients). Relative error ~1 ulp over the reduced range.
inline __m256d log2_pd(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_biased = _mm256_and_si256(_mm256_srli_epi64(bits, 52),
                                              _mm256_set1_epi64x(0x7ff));
  const __m256i exp_unb =
      _mm256_sub_epi64(exp_biased, _mm256_set1_epi64x(1022));
  // exponents fit in int32: pack the low words and convert
  const __m256i packperm = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  const __m128i exp32 =
      _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(exp_unb, packperm));
  __m256d e = _mm256_cvtepi32_pd(exp32);

  // mantissa in [0.5, 1)
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3fe0000000000000LL)));
  // normalize to [sqrt(1/2), sqrt(2))
  const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);
  const __m256d lt = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lt);
  e = _mm256_sub_pd(e, _mm256_and_pd(lt, one));

  const __m256d z = _mm256_sub_pd(m, one);
  const __m256d z2 = _mm256_mul_pd(z, z);

  __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(7.70838733755885391666e0));
  __m256d q = _mm256_add_pd(z, _mm256_set1_pd(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.31251620126765340583e1));

  __m256d y = _mm256_mul_pd(_mm256_mul_pd(z, z2), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(half, z2, y);  // y <- z^3 P/Q - z^2/2

  // log(m) ~ z + y; log2(x) = (z + y)*log2(e) + e with log2(e) = 1 + LOG2EA
  const __m256d log2ea = _mm256_set1_pd(0.44269504088896340736);
  __m256d r = _mm256_mul_pd(y, log2ea);
  r = _mm256_fmadd_pd(z, log2ea, r);
  r = _mm256_add_pd(r, y);
  r = _mm256_add_pd(r, z);
  r = _mm256_add_pd(r, e);
  return r;
}

inline double hsum_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// complex dot product of two interleaved (re,im) arrays of length db
inline cplx cdot(const double* urow, const double* row, std::size_t db) {
  __m256d acc1 = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
  __m256d acc2 = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
  const std::size_t n2 = 2 * db;
  std::size_t j = 0;
  for (; j + 4 <= n2; j += 4) {
    const __m256d uv = _mm256_loadu_pd(urow + j);
    const __m256d pv = _mm256_loadu_pd(row + j);
    acc1 = _mm256_fmadd_pd(uv, pv, acc1);
    acc2 = _mm256_fmadd_pd(uv, _mm256_permute_pd(pv, 0x5), acc2);
  }
  const __m256d t1 = _mm256_hsub_pd(acc1, acc1);
  const __m256d t2 = _mm256_hadd_pd(acc2, acc2);
  double re = _mm_cvtsd_f64(_mm_add_sd(_mm256_castpd256_pd128(t1),
                                       _mm256_extractf128_pd(t1, 1)));
  double im = _mm_cvtsd_f64(_mm_add_sd(_mm256_castpd256_pd128(t2),
                                       _mm256_extractf128_pd(t2, 1)));
  if (j < n2) {  // odd db: one complex element left
    const double ar = urow[j], ai = urow[j + 1];
    const double br = row[j], bi = row[j + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

}  // namespace

void abs_squared(const cplx* z, double* out, std::size_t n) {
  const double* pd = reinterpret_cast<const double*>(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t1 = _mm256_loadu_pd(pd + 2 * i);
    __m256d t2 = _mm256_loadu_pd(pd + 2 * i + 4);
    t1 = _mm256_mul_pd(t1, t1);
    t2 = _mm256_mul_pd(t2, t2);
    // [|z0|^2, |z2|^2, |z1|^2, |z3|^2] -> natural order
    __m256d h = _mm256_hadd_pd(t1, t2);
    h = _mm256_permute4x64_pd(h, 0xD8);
    _mm256_storeu_pd(out + i, h);
  }
  for (; i < n; ++i)
    out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d ok = _mm256_cmp_pd(v, tiny, _CMP_GE_OQ);
    // entries below DBL_MIN (incl. zero) are replaced by 1: x*log2(x) = 0
    const __m256d vv = _mm256_blendv_pd(one, v, ok);
    acc = _mm256_fnmadd_pd(vv, log2_pd(vv), acc);
  }
  double out = hsum_pd(acc);
  for (; i < n; ++i)
    if (x[i] >= DBL_MIN) out -= x[i] * std::log2(x[i]);
  return out;
}

void apply_block_matrix(const cplx* u, std::size_t db, const cplx* psi,
                        std::size_t da, cplx* out) {
  for (std::size_t i = 0; i < da; ++i) {
    const double* row = reinterpret_cast<const double*>(psi + i * db);
    for (std::size_t k = 0; k < db; ++k) {
      out[i * db + k] =
          cdot(reinterpret_cast<const double*>(u + k * db), row, db);
    }
  }
}

double rotated_dephased_entropy(const cplx* u, std::size_t db, const cplx* psi,
                                std::size_t da) {
  double g[kMaxFusedLen];
  for (std::size_t i = 0; i < da; ++i) {
    const double* row = reinterpret_cast<const double*>(psi + i * db);
    for (std::size_t k = 0; k < db; ++k) {
      const cplx a = cdot(reinterpret_cast<const double*>(u + k * db), row, db);
      g[i * db + k] = a.real() * a.real() + a.imag() * a.imag();
    }
  }
  return neg_xlog2x_sum(g, da * db);
}

}  // namespace cop::kernels::avx2

#endif  // COP_KERNELS_X86
