// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma on
// x86-64 and must only be entered after the runtime cpuid check passes.

#include "wwtp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define WWTP_X86_64 1
#include <immintrin.h>
#else
#define WWTP_X86_64 0
#endif

#include <cmath>

namespace wwtp::kernels {

#if WWTP_X86_64

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void lerp_avx2(double tau, const double* learned, double* target, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(tau);
    const __m256d vomt = _mm256_set1_pd(1.0 - tau);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d blended = _mm256_mul_pd(vomt, _mm256_loadu_pd(target + i));
        blended = _mm256_fmadd_pd(vt, _mm256_loadu_pd(learned + i), blended);
        _mm256_storeu_pd(target + i, blended);
    }
    for (; i < n; ++i) target[i] = tau * learned[i] + (1.0 - tau) * target[i];
}

void relu_avx2(const double* x, double* y, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_avx2(const double* pre, const double* dy, double* dx, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(pre + i), zero, _CMP_GT_OQ);
        _mm256_storeu_pd(dx + i, _mm256_and_pd(_mm256_loadu_pd(dy + i), mask));
    }
    for (; i < n; ++i) dx[i] = pre[i] > 0.0 ? dy[i] : 0.0;
}

void adam_step_avx2(double* p, const double* g, double* m, double* v, std::size_t n,
                    double lr, double b1, double b2, double eps,
                    double bias1, double bias2) {
    const __m256d vb1 = _mm256_set1_pd(b1);
    const __m256d vomb1 = _mm256_set1_pd(1.0 - b1);
    const __m256d vb2 = _mm256_set1_pd(b2);
    const __m256d vomb2 = _mm256_set1_pd(1.0 - b2);
    const __m256d vlr = _mm256_set1_pd(lr);
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vib1 = _mm256_set1_pd(1.0 / bias1);
    const __m256d vib2 = _mm256_set1_pd(1.0 / bias2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vg = _mm256_loadu_pd(g + i);
        __m256d vm = _mm256_fmadd_pd(vomb1, vg, _mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)));
        __m256d vv = _mm256_fmadd_pd(vomb2, _mm256_mul_pd(vg, vg),
                                     _mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)));
        _mm256_storeu_pd(m + i, vm);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(vm, vib1);
        const __m256d vhat = _mm256_mul_pd(vv, vib2);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
        const __m256d step = _mm256_div_pd(_mm256_mul_pd(vlr, mhat), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
    }
    for (; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
        p[i] -= lr * (m[i] / bias1) / (std::sqrt(v[i] / bias2) + eps);
    }
}

}  // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const detail::Ops& detail::avx2_ops() {
    static const Ops ops{dot_avx2,  axpy_avx2,          lerp_avx2,
                         relu_avx2, relu_backward_avx2, adam_step_avx2};
    return ops;
}

#else  // non-x86 build: no AVX2 variant

bool avx2_available() { return false; }

const detail::Ops& detail::avx2_ops() {
    static const Ops ops{nullptr, nullptr, nullptr, nullptr, nullptr, nullptr};
    return ops;
}

#endif

}  // namespace wwtp::kernels
