// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and is only dispatched to after a cpuid check.

#include "wrl/kernels.hpp"

#include <cfloat>
#include <cmath>
#include <immintrin.h>

namespace wrl::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// Exact for |v| < 2^51.
inline __m256d small_i64_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4338000000000000LL);
    __m256d d = _mm256_castsi256_pd(_mm256_add_epi64(v, magic));
    return _mm256_sub_pd(d, _mm256_set1_pd(6755399441055744.0));  // 2^52 + 2^51
}

// log2 of positive normal doubles. Decomposes x = 2^e * m with
// m in [sqrt(2)/2, sqrt(2)], then log2(m) = (2/ln 2) * atanh(r) with
// r = (m-1)/(m+1), |r| <= 0.1716, via the odd series up to r^19.
inline __m256d log2_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i exp_biased =
        _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF));
    __m256i e_i = _mm256_sub_epi64(exp_biased, _mm256_set1_epi64x(1023));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FF0000000000000LL)));

    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
    e_i = _mm256_add_epi64(
        e_i, _mm256_and_si256(_mm256_castpd_si256(gt), _mm256_set1_epi64x(1)));
    const __m256d e = small_i64_to_pd(e_i);

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d r =
        _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d s = _mm256_mul_pd(r, r);

    __m256d poly = _mm256_set1_pd(1.0 / 19.0);
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 17.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 15.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 13.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 11.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 9.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 7.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 5.0));
    poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 3.0));
    poly = _mm256_fmadd_pd(poly, s, one);

    const __m256d two_over_ln2 = _mm256_set1_pd(2.8853900817779268);
    return _mm256_fmadd_pd(_mm256_mul_pd(two_over_ln2, r), poly, e);
}

double avx2_sum_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double avx2_sum_squares(const double* p, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += p[i] * p[i];
    return s;
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void avx2_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double avx2_sum_plog2p(const double* p, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d tiny = _mm256_set1_pd(DBL_MIN);
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        __m256d pos = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
        if (!_mm256_movemask_pd(pos)) continue;
        // subnormal lanes take the scalar route
        if (_mm256_movemask_pd(
                _mm256_and_pd(pos, _mm256_cmp_pd(v, tiny, _CMP_LT_OQ)))) {
            for (std::size_t j = i; j < i + 4; ++j) {
                if (p[j] > 0.0) tail += p[j] * std::log2(p[j]);
            }
            continue;
        }
        __m256d l = log2_pd(_mm256_blendv_pd(one, v, pos));
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_mul_pd(v, l), pos));
    }
    double s = hsum(acc) + tail;
    for (; i < n; ++i) {
        if (p[i] > 0.0) s += p[i] * std::log2(p[i]);
    }
    return s;
}

double avx2_sum_plog2_ratio(const double* p, const double* q, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d tiny = _mm256_set1_pd(DBL_MIN);
    const __m256d huge = _mm256_set1_pd(DBL_MAX);
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d pv = _mm256_loadu_pd(p + i);
        __m256d pos = _mm256_cmp_pd(pv, zero, _CMP_GT_OQ);
        if (!_mm256_movemask_pd(pos)) continue;
        __m256d ratio = _mm256_div_pd(pv, _mm256_loadu_pd(q + i));
        ratio = _mm256_blendv_pd(one, ratio, pos);
        __m256d bad = _mm256_or_pd(_mm256_cmp_pd(ratio, tiny, _CMP_LT_OQ),
                                   _mm256_cmp_pd(ratio, huge, _CMP_GT_OQ));
        if (_mm256_movemask_pd(bad)) {
            for (std::size_t j = i; j < i + 4; ++j) {
                if (p[j] > 0.0) tail += p[j] * std::log2(p[j] / q[j]);
            }
            continue;
        }
        acc = _mm256_add_pd(acc,
                            _mm256_and_pd(_mm256_mul_pd(pv, log2_pd(ratio)), pos));
    }
    double s = hsum(acc) + tail;
    for (; i < n; ++i) {
        if (p[i] > 0.0) s += p[i] * std::log2(p[i] / q[i]);
    }
    return s;
}

void avx2_kron_expand(const double* in, std::size_t n, const double* row,
                      std::size_t k, double* out) {
    if (k == 2) {
        const __m256d rv = _mm256_setr_pd(row[0], row[1], row[0], row[1]);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d a = _mm256_loadu_pd(in + i);
            __m256d lo = _mm256_permute4x64_pd(a, 0x50);  // in0 in0 in1 in1
            __m256d hi = _mm256_permute4x64_pd(a, 0xFA);  // in2 in2 in3 in3
            _mm256_storeu_pd(out + 2 * i, _mm256_mul_pd(lo, rv));
            _mm256_storeu_pd(out + 2 * i + 4, _mm256_mul_pd(hi, rv));
        }
        for (; i < n; ++i) {
            out[2 * i] = in[i] * row[0];
            out[2 * i + 1] = in[i] * row[1];
        }
        return;
    }
    if (k >= 4) {
        for (std::size_t i = 0; i < n; ++i) {
            const __m256d v = _mm256_set1_pd(in[i]);
            double* o = out + i * k;
            std::size_t j = 0;
            for (; j + 4 <= k; j += 4) {
                _mm256_storeu_pd(o + j, _mm256_mul_pd(v, _mm256_loadu_pd(row + j)));
            }
            for (; j < k; ++j) o[j] = in[i] * row[j];
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double v = in[i];
        double* o = out + i * k;
        for (std::size_t j = 0; j < k; ++j) o[j] = v * row[j];
    }
}

const Ops kAvx2Ops = {
    "avx2",
    avx2_sum_abs_diff,
    avx2_sum_squares,
    avx2_dot,
    avx2_axpy,
    avx2_sum_plog2p,
    avx2_sum_plog2_ratio,
    avx2_kron_expand,
};

bool cpu_has_avx2_fma() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops* ops = cpu_has_avx2_fma() ? &kAvx2Ops : nullptr;
    return ops;
}

}  // namespace wrl::kernels
