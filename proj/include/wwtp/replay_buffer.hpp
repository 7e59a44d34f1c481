#pragma once

// FIFO experience replay. Sampling is uniform with replacement; asking for
// more transitions than are stored yields an empty batch (skip-update
// signal), not an error.

#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace wwtp::marl {

struct Transition {
    std::vector<double> obs1, obs2;  // per-agent observations
    double a1 = 0.0, a2 = 0.0;       // actions normalized to [0,1]
    double reward = 0.0;
    std::vector<double> next_obs1, next_obs2;
};

class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw std::invalid_argument("replay: capacity must be > 0");
        store_.reserve(capacity);
    }

    void push(Transition t) {
        if (store_.size() < capacity_) {
            store_.push_back(std::move(t));
        } else {
            store_[cursor_] = std::move(t);  // overwrite the oldest
        }
        cursor_ = (cursor_ + 1) % capacity_;
    }

    std::size_t size() const { return store_.size(); }
    std::size_t capacity() const { return capacity_; }

    // i = 0 is the oldest stored transition.
    const Transition& at(std::size_t i) const {
        if (i >= store_.size()) throw std::out_of_range("replay: index out of range");
        if (store_.size() < capacity_) return store_[i];
        return store_[(cursor_ + i) % capacity_];
    }

    std::vector<const Transition*> sample(std::size_t n, std::mt19937_64& rng) const {
        if (store_.size() < n) return {};
        std::uniform_int_distribution<std::size_t> pick(0, store_.size() - 1);
        std::vector<const Transition*> batch(n);
        for (auto& slot : batch) slot = &store_[pick(rng)];
        return batch;
    }

private:
    std::vector<Transition> store_;
    std::size_t capacity_;
    std::size_t cursor_ = 0;
};

}  // namespace wwtp::marl
