#include "wwtp/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace wwtp::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lerp_scalar(double tau, const double* learned, double* target, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        target[i] = tau * learned[i] + (1.0 - tau) * target[i];
}

void relu_scalar(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_scalar(const double* pre, const double* dy, double* dx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dx[i] = pre[i] > 0.0 ? dy[i] : 0.0;
}

void adam_step_scalar(double* p, const double* g, double* m, double* v, std::size_t n,
                      double lr, double b1, double b2, double eps,
                      double bias1, double bias2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
        const double mhat = m[i] / bias1;
        const double vhat = v[i] / bias2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

Backend pick_initial_backend() {
    if (const char* env = std::getenv("WWTP_MARL_KERNELS")) {
        const std::string s(env);
        if (s == "scalar") return Backend::Scalar;
        if (s == "avx2" && avx2_available()) return Backend::Avx2;
    }
    return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

struct Dispatch {
    Backend backend;
    detail::Ops ops;
    Dispatch() : backend(pick_initial_backend()) {
        ops = backend == Backend::Avx2 ? detail::avx2_ops() : detail::scalar_ops();
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

const detail::Ops& detail::scalar_ops() {
    static const Ops ops{dot_scalar,  axpy_scalar,          lerp_scalar,
                         relu_scalar, relu_backward_scalar, adam_step_scalar};
    return ops;
}

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available())
        throw std::invalid_argument("kernels: AVX2 backend not available on this host");
    dispatch().backend = b;
    dispatch().ops = b == Backend::Avx2 ? detail::avx2_ops() : detail::scalar_ops();
}

double dot(const double* a, const double* b, std::size_t n) {
    return dispatch().ops.dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    dispatch().ops.axpy(alpha, x, y, n);
}

void lerp(double tau, const double* learned, double* target, std::size_t n) {
    dispatch().ops.lerp(tau, learned, target, n);
}

void relu(const double* x, double* y, std::size_t n) {
    dispatch().ops.relu(x, y, n);
}

void relu_backward(const double* pre, const double* dy, double* dx, std::size_t n) {
    dispatch().ops.relu_backward(pre, dy, dx, n);
}

void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               double lr, double b1, double b2, double eps,
               double bias1, double bias2) {
    dispatch().ops.adam_step(p, g, m, v, n, lr, b1, b2, eps, bias1, bias2);
}

}  // namespace wwtp::kernels
