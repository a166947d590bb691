// Copyright 2026-present the subdiff project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2+FMA backend.  This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has checked CPUID.  The exp/log
// cores are vectorized transcriptions of the Cephes double-precision
// rational approximations (Moshier), accurate to a few ulp.

#include "batch_impl.hpp"

#ifdef SUBDIFF_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace subdiff::kernels::avx2 {

namespace {

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);

// ---- exp ----------------------------------------------------------------

// exp saturation limits; outside them the result is exactly inf / 0.
const __m256d kExpHi = _mm256_set1_pd(709.782712893384);
const __m256d kExpLo = _mm256_set1_pd(-745.133219101941);
const __m256d kLog2E = _mm256_set1_pd(1.4426950408889634074);
// ln 2 split for Cody-Waite argument reduction
const __m256d kC1 = _mm256_set1_pd(6.93145751953125e-1);
const __m256d kC2 = _mm256_set1_pd(1.42860682030941723212e-6);

const __m256d kExpP0 = _mm256_set1_pd(1.26177193074810590878e-4);
const __m256d kExpP1 = _mm256_set1_pd(3.02994407707441961300e-2);
const __m256d kExpP2 = _mm256_set1_pd(9.99999999999999999910e-1);
const __m256d kExpQ0 = _mm256_set1_pd(3.00198505138664455042e-6);
const __m256d kExpQ1 = _mm256_set1_pd(2.52448340349684104192e-3);
const __m256d kExpQ2 = _mm256_set1_pd(2.27265548208155028766e-1);
const __m256d kExpQ3 = _mm256_set1_pd(2.00000000000000000005e0);

// 2^k for integer lanes k in [-1075, 1025], split in two exact factors so the
// exponent field never leaves [0, 2046] and gradual underflow still works.
inline __m256d pow2_split(__m128i k32, __m256d v) {
    __m128i k1 = _mm_srai_epi32(k32, 1);
    __m128i k2 = _mm_sub_epi32(k32, k1);
    __m256i bias = _mm256_set1_epi64x(1023);
    __m256i b1 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52);
    __m256i b2 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52);
    v = _mm256_mul_pd(v, _mm256_castsi256_pd(b1));
    return _mm256_mul_pd(v, _mm256_castsi256_pd(b2));
}

inline __m256d exp4(__m256d x) {
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, kExpLo), kExpHi);
    __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, kLog2E),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d px = _mm256_fnmadd_pd(n, kC1, xc);
    px = _mm256_fnmadd_pd(n, kC2, px);
    __m256d xx = _mm256_mul_pd(px, px);

    // e^px = 1 + 2 px P(px^2) / (Q(px^2) - px P(px^2))
    __m256d p = _mm256_fmadd_pd(kExpP0, xx, kExpP1);
    p = _mm256_fmadd_pd(p, xx, kExpP2);
    p = _mm256_mul_pd(p, px);
    __m256d q = _mm256_fmadd_pd(kExpQ0, xx, kExpQ1);
    q = _mm256_fmadd_pd(q, xx, kExpQ2);
    q = _mm256_fmadd_pd(q, xx, kExpQ3);
    __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, kOne);

    r = pow2_split(_mm256_cvtpd_epi32(n), r);

    // saturation and NaN propagation against the unclamped input
    __m256d inf = _mm256_set1_pd(HUGE_VAL);
    r = _mm256_blendv_pd(r, inf, _mm256_cmp_pd(x, kExpHi, _CMP_GT_OQ));
    r = _mm256_blendv_pd(r, _mm256_setzero_pd(), _mm256_cmp_pd(x, kExpLo, _CMP_LT_OQ));
    r = _mm256_blendv_pd(r, x, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
    return r;
}

// ---- log ----------------------------------------------------------------

// ln2 split with 21 trailing zero bits in the high part, so k * ln2_hi is
// exact for |k| <= 2^21; polynomial in s = f/(2+f) per the classic
// correctly-reduced scheme (worst case well under 1 ulp)
const __m256d kLn2Hi = _mm256_set1_pd(6.93147180369123816490e-1);
const __m256d kLn2Lo = _mm256_set1_pd(1.90821492927058770002e-10);
const __m256d kLg1 = _mm256_set1_pd(6.666666666666735130e-1);
const __m256d kLg2 = _mm256_set1_pd(3.999999999940941908e-1);
const __m256d kLg3 = _mm256_set1_pd(2.857142874366239149e-1);
const __m256d kLg4 = _mm256_set1_pd(2.222219843214978396e-1);
const __m256d kLg5 = _mm256_set1_pd(1.818357216161805012e-1);
const __m256d kLg6 = _mm256_set1_pd(1.531383769920937332e-1);
const __m256d kLg7 = _mm256_set1_pd(1.479819860511658591e-1);

// exact int64 lane -> double for values in [0, 2^31)
inline __m256d small_i64_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)),
                         _mm256_set1_pd(4503599627370496.0));
}

inline __m256d log4(__m256d x) {
    // lift subnormals into the normal range first
    __m256d tiny = _mm256_cmp_pd(x, _mm256_set1_pd(2.2250738585072014e-308), _CMP_LT_OQ);
    __m256d pos = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ);
    __m256d sub = _mm256_and_pd(tiny, pos);
    __m256d xs = _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(0x1p54)), sub);
    __m256d eadj = _mm256_and_pd(sub, _mm256_set1_pd(-54.0));

    __m256i bits = _mm256_castpd_si256(xs);
    __m256i be = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff));
    __m256i frac = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));

    // mantissa normalized to [sqrt(1/2), sqrt(2)): the carry out of
    // frac + (sqrt(2) - 1) decides which side of 1 the mantissa lands on
    __m256i carry = _mm256_srli_epi64(
        _mm256_add_epi64(frac, _mm256_set1_epi64x(0x00095F6400000000LL)), 52);
    __m256i kint = _mm256_add_epi64(
        _mm256_sub_epi64(be, _mm256_set1_epi64x(1023)), carry);
    __m256i mexp =
        _mm256_slli_epi64(_mm256_sub_epi64(_mm256_set1_epi64x(0x3FF), carry), 52);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(frac, mexp));

    // exact int64 -> double through a positive offset
    __m256d dk = _mm256_sub_pd(
        small_i64_to_pd(_mm256_add_epi64(kint, _mm256_set1_epi64x(1100))),
        _mm256_set1_pd(1100.0));
    dk = _mm256_add_pd(dk, eadj);

    __m256d f = _mm256_sub_pd(m, kOne);
    __m256d hfsq = _mm256_mul_pd(kHalf, _mm256_mul_pd(f, f));
    __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    __m256d z = _mm256_mul_pd(s, s);
    __m256d w = _mm256_mul_pd(z, z);
    __m256d t1 = _mm256_mul_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, kLg6, kLg4), kLg2));
    __m256d t2 = _mm256_mul_pd(
        z, _mm256_fmadd_pd(
               w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, kLg7, kLg5), kLg3), kLg1));
    __m256d r = _mm256_add_pd(t1, t2);

    // grouping matters below: k ln2_hi is exact, the residuals cancel inside
    __m256d tlo = _mm256_fmadd_pd(dk, kLn2Lo, _mm256_mul_pd(s, _mm256_add_pd(hfsq, r)));
    __m256d mid = _mm256_sub_pd(_mm256_sub_pd(hfsq, tlo), f);
    __m256d out = _mm256_fmsub_pd(dk, kLn2Hi, mid);

    // specials: log(0) = -inf, log(neg) = NaN, log(inf) = inf, NaN -> NaN
    __m256d zero = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ);
    out = _mm256_blendv_pd(out, _mm256_set1_pd(-HUGE_VAL), zero);
    __m256d neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
    out = _mm256_blendv_pd(out, _mm256_set1_pd(NAN), neg);
    __m256d inf = _mm256_cmp_pd(x, _mm256_set1_pd(HUGE_VAL), _CMP_EQ_OQ);
    out = _mm256_blendv_pd(out, x, _mm256_or_pd(inf, _mm256_cmp_pd(x, x, _CMP_UNORD_Q)));
    return out;
}

}  // namespace

void exp_batch(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = std::exp(x[i]);
}

void log_batch(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, log4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = std::log(x[i]);
}

void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d lxi = _mm256_loadu_pd(lx + i);
        __m256d sh = _mm256_setzero_pd();
        __m256d sg = _mm256_setzero_pd();
        for (std::size_t j = 0; j < k; ++j) {
            __m256d p = exp4(_mm256_mul_pd(_mm256_set1_pd(e[j]), lxi));
            sh = _mm256_fmadd_pd(_mm256_set1_pd(wa[j]), p, sh);
            sg = _mm256_fmadd_pd(_mm256_set1_pd(wb[j]), p, sg);
        }
        _mm256_storeu_pd(h + i, sh);
        if (g) _mm256_storeu_pd(g + i, sg);
    }
    for (; i < n; ++i) {
        double sh = 0.0, sg = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double p = std::exp(e[j] * lx[i]);
            sh += wa[j] * p;
            sg += wb[j] * p;
        }
        h[i] = sh;
        if (g) g[i] = sg;
    }
}

}  // namespace subdiff::kernels::avx2

#endif  // SUBDIFF_HAVE_AVX2_TU
