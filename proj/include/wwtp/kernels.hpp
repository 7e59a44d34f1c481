#pragma once

// Dense double-precision kernels used by the network math. Each kernel has a
// scalar reference implementation and an AVX2+FMA variant; the backend is
// picked once at startup from cpuid and can be overridden with the
// WWTP_MARL_KERNELS environment variable ("scalar" or "avx2") or forced from
// code (tests exercise both and cross-check them).

#include <cstddef>
#include <string>

namespace wwtp::kernels {

enum class Backend { Scalar, Avx2 };

// Backend selected for this process. Stable for the lifetime of the process
// unless force_backend() is called.
Backend active_backend();
const char* backend_name(Backend b);

// True if the CPU (and this build) can run the AVX2 variants.
bool avx2_available();

// Override the dispatch. Throws std::invalid_argument if the requested
// backend is not available.
void force_backend(Backend b);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// target[i] = tau*learned[i] + (1-tau)*target[i]
void lerp(double tau, const double* learned, double* target, std::size_t n);

// y[i] = max(x[i], 0)
void relu(const double* x, double* y, std::size_t n);

// dx[i] = pre[i] > 0 ? dy[i] : 0
void relu_backward(const double* pre, const double* dy, double* dx, std::size_t n);

// One bias-corrected Adam update over a flat parameter block:
//   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g^2
//   p -= lr * (m/bias1) / (sqrt(v/bias2) + eps)
// bias1 = 1-b1^t and bias2 = 1-b2^t are precomputed by the caller.
void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               double lr, double b1, double b2, double eps,
               double bias1, double bias2);

namespace detail {
struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*lerp)(double, const double*, double*, std::size_t);
    void (*relu)(const double*, double*, std::size_t);
    void (*relu_backward)(const double*, const double*, double*, std::size_t);
    void (*adam_step)(double*, const double*, double*, double*, std::size_t,
                      double, double, double, double, double, double);
};
const Ops& scalar_ops();
const Ops& avx2_ops();  // null pointers when not built for x86-64
}  // namespace detail

}  // namespace wwtp::kernels
