#pragma once

// Feed-forward networks with rectifier hidden units, an identity or
// squash-to-box output head, exact reverse-mode gradients, and Adam.
// Parameters live in one flat buffer ([W0,b0,W1,b1,...], W row-major) so the
// optimizer and the soft target update are single vector passes.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wwtp::marl {

enum class OutputHead { Identity, SquashToBox };

class Mlp {
public:
    Mlp() = default;
    // sizes = {in, hidden..., out}
    Mlp(std::vector<int> sizes, OutputHead head, double out_lo = 0.0, double out_hi = 1.0);

    // Uniform +-1/sqrt(fan_in) initialization from the given generator.
    void init_random(std::mt19937_64& rng);

    const std::vector<int>& sizes() const { return sizes_; }
    int input_size() const { return sizes_.front(); }
    int output_size() const { return sizes_.back(); }
    OutputHead head() const { return head_; }
    double out_lo() const { return out_lo_; }
    double out_hi() const { return out_hi_; }

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }
    std::size_t param_count() const { return params_.size(); }

    struct Cache {
        std::vector<std::vector<double>> inputs;   // x fed to each layer
        std::vector<std::vector<double>> preacts;  // z of each layer
        std::vector<double> output;                // post-head output
        const Mlp* source = nullptr;
    };

    void forward(std::span<const double> x, Cache& cache) const;
    std::vector<double> forward(std::span<const double> x) const;

    // Accumulates parameter gradients into grad_accum (same layout as
    // params()); writes dL/dx into dx when non-empty. upstream is dL/dy at
    // the post-head output. Throws when the cache is not from this net.
    void backward(const Cache& cache, std::span<const double> upstream,
                  std::span<double> grad_accum, std::span<double> dx) const;

    // Same, but with the upstream given at the output-layer preactivation,
    // bypassing the head derivative.
    void backward_preact(const Cache& cache, std::span<const double> dz,
                         std::span<double> grad_accum, std::span<double> dx) const;

    // Weight matrix / bias views for layer l.
    std::span<const double> weights(int layer) const;
    std::span<const double> biases(int layer) const;
    std::span<double> weights(int layer);
    std::span<double> biases(int layer);
    int num_layers() const { return static_cast<int>(sizes_.size()) - 1; }

private:
    std::vector<int> sizes_;
    OutputHead head_ = OutputHead::Identity;
    double out_lo_ = 0.0, out_hi_ = 1.0;
    std::vector<double> params_;
    std::vector<std::size_t> w_offset_, b_offset_;
};

// theta_target <- tau*theta + (1-tau)*theta_target, elementwise.
void soft_update(Mlp& target, const Mlp& learned, double tau);

class Adam {
public:
    Adam() = default;
    Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999,
         double eps = 1e-8);
    void step(std::span<double> params, std::span<const double> grad);
    double lr() const { return lr_; }
    long steps_taken() const { return t_; }

private:
    std::vector<double> m_, v_;
    long t_ = 0;
    double lr_ = 1e-3, b1_ = 0.9, b2_ = 0.999, eps_ = 1e-8;
};

}  // namespace wwtp::marl
