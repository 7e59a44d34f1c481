#include "wwtp/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "wwtp/kernels.hpp"

namespace wwtp::marl {

Mlp::Mlp(std::vector<int> sizes, OutputHead head, double out_lo, double out_hi)
    : sizes_(std::move(sizes)), head_(head), out_lo_(out_lo), out_hi_(out_hi) {
    if (sizes_.size() < 2) throw std::invalid_argument("mlp: need at least one layer");
    for (int s : sizes_)
        if (s < 1) throw std::invalid_argument("mlp: layer sizes must be >= 1");
    if (head_ == OutputHead::SquashToBox && !(out_hi_ > out_lo_))
        throw std::invalid_argument("mlp: output box must have hi > lo");

    std::size_t total = 0;
    for (int l = 0; l < num_layers(); ++l) {
        w_offset_.push_back(total);
        total += static_cast<std::size_t>(sizes_[l + 1]) * sizes_[l];
        b_offset_.push_back(total);
        total += sizes_[l + 1];
    }
    params_.assign(total, 0.0);
}

void Mlp::init_random(std::mt19937_64& rng) {
    for (int l = 0; l < num_layers(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
        std::uniform_real_distribution<double> u(-bound, bound);
        for (double& w : weights(l)) w = u(rng);
        for (double& b : biases(l)) b = u(rng);
    }
}

std::span<const double> Mlp::weights(int layer) const {
    return {params_.data() + w_offset_[layer],
            static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer]};
}
std::span<const double> Mlp::biases(int layer) const {
    return {params_.data() + b_offset_[layer], static_cast<std::size_t>(sizes_[layer + 1])};
}
std::span<double> Mlp::weights(int layer) {
    return {params_.data() + w_offset_[layer],
            static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer]};
}
std::span<double> Mlp::biases(int layer) {
    return {params_.data() + b_offset_[layer], static_cast<std::size_t>(sizes_[layer + 1])};
}

void Mlp::forward(std::span<const double> x, Cache& cache) const {
    if (static_cast<int>(x.size()) != input_size())
        throw std::invalid_argument("mlp forward: input size mismatch");

    const int nl = num_layers();
    cache.inputs.resize(nl);
    cache.preacts.resize(nl);
    cache.source = this;

    cache.inputs[0].assign(x.begin(), x.end());
    for (int l = 0; l < nl; ++l) {
        const int n_in = sizes_[l], n_out = sizes_[l + 1];
        auto& z = cache.preacts[l];
        z.resize(n_out);
        const double* w = params_.data() + w_offset_[l];
        const double* b = params_.data() + b_offset_[l];
        const double* in = cache.inputs[l].data();
        for (int i = 0; i < n_out; ++i)
            z[i] = kernels::dot(w + static_cast<std::size_t>(i) * n_in, in, n_in) + b[i];
        if (l + 1 < nl) {
            auto& next_in = cache.inputs[l + 1];
            next_in.resize(n_out);
            kernels::relu(z.data(), next_in.data(), n_out);
        }
    }

    const auto& z_out = cache.preacts[nl - 1];
    cache.output.resize(z_out.size());
    if (head_ == OutputHead::Identity) {
        cache.output = z_out;
    } else {
        for (std::size_t i = 0; i < z_out.size(); ++i)
            cache.output[i] =
                out_lo_ + 0.5 * (std::tanh(z_out[i]) + 1.0) * (out_hi_ - out_lo_);
    }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
    Cache cache;
    forward(x, cache);
    return cache.output;
}

void Mlp::backward(const Cache& cache, std::span<const double> upstream,
                   std::span<double> grad_accum, std::span<double> dx) const {
    if (cache.source != this)
        throw std::invalid_argument("mlp backward: cache does not match this network");
    if (static_cast<int>(upstream.size()) != output_size())
        throw std::invalid_argument("mlp backward: upstream size mismatch");

    const int nl = num_layers();
    std::vector<double> delta(upstream.begin(), upstream.end());
    if (head_ == OutputHead::SquashToBox) {
        const auto& z_out = cache.preacts[nl - 1];
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const double th = std::tanh(z_out[i]);
            delta[i] *= 0.5 * (1.0 - th * th) * (out_hi_ - out_lo_);
        }
    }
    backward_preact(cache, delta, grad_accum, dx);
}

void Mlp::backward_preact(const Cache& cache, std::span<const double> dz,
                          std::span<double> grad_accum, std::span<double> dx) const {
    if (cache.source != this)
        throw std::invalid_argument("mlp backward: cache does not match this network");
    if (static_cast<int>(dz.size()) != output_size())
        throw std::invalid_argument("mlp backward: upstream size mismatch");
    if (grad_accum.size() != params_.size())
        throw std::invalid_argument("mlp backward: gradient buffer size mismatch");

    const int nl = num_layers();
    std::vector<double> delta(dz.begin(), dz.end());
    std::vector<double> below;
    for (int l = nl - 1; l >= 0; --l) {
        const int n_in = sizes_[l], n_out = sizes_[l + 1];
        const double* in = cache.inputs[l].data();
        double* gw = grad_accum.data() + w_offset_[l];
        double* gb = grad_accum.data() + b_offset_[l];
        for (int i = 0; i < n_out; ++i) {
            kernels::axpy(delta[i], in, gw + static_cast<std::size_t>(i) * n_in, n_in);
            gb[i] += delta[i];
        }
        const bool need_dx = l > 0 || !dx.empty();
        if (!need_dx) break;
        below.assign(n_in, 0.0);
        const double* w = params_.data() + w_offset_[l];
        for (int i = 0; i < n_out; ++i)
            kernels::axpy(delta[i], w + static_cast<std::size_t>(i) * n_in, below.data(), n_in);
        if (l > 0) {
            // Through the rectifier of the layer below.
            delta.resize(n_in);
            kernels::relu_backward(cache.preacts[l - 1].data(), below.data(), delta.data(),
                                   n_in);
        } else if (!dx.empty()) {
            if (static_cast<int>(dx.size()) != n_in)
                throw std::invalid_argument("mlp backward: dx size mismatch");
            for (int i = 0; i < n_in; ++i) dx[i] = below[i];
        }
    }
}

void soft_update(Mlp& target, const Mlp& learned, double tau) {
    if (target.sizes() != learned.sizes())
        throw std::invalid_argument("soft_update: shape mismatch");
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("soft_update: tau outside [0,1]");
    kernels::lerp(tau, learned.params().data(), target.params().data(),
                  target.param_count());
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : m_(n, 0.0), v_(n, 0.0), lr_(lr), b1_(beta1), b2_(beta2), eps_(eps) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw std::invalid_argument("adam: size mismatch");
    ++t_;
    const double bias1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
    kernels::adam_step(params.data(), grad.data(), m_.data(), v_.data(), params.size(),
                       lr_, b1_, b2_, eps_, bias1, bias2);
}

}  // namespace wwtp::marl
