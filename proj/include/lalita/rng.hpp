#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace lalita {

// Deterministic RNG wrapper. mt19937_64 output is specified by the standard,
// but std::uniform_int_distribution is not; the rejection sampler below makes
// draws reproducible across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform draw in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Accept x >= 2^64 mod n: the remaining range has a multiple of n
        // values, so every residue is equally likely.
        const std::uint64_t threshold = (0ULL - n) % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x < threshold);
        return x % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), returned in ascending order.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace lalita
