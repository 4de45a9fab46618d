#pragma once
// Deterministic counter-based RNG. Every distribution is implemented here so
// results are byte-identical across platforms and thread counts; trial-level
// streams are derived from a master seed instead of sharing mutable state.

#include <cstdint>
#include <string>
#include <vector>

namespace honeykit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Independent stream keyed by (tag, index); does not advance this stream.
    Rng stream(std::uint64_t tag, std::uint64_t index = 0) const {
        std::uint64_t s = mix(state_ ^ mix(tag + 0x632be59bd9b4e019ULL));
        return Rng(mix(s ^ mix(index + 0x9e3779b97f4a7c15ULL)));
    }

    // Unbiased integer in [0, n). n must be > 0.
    std::uint64_t uniform(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % n;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform_real() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    char pick(const std::string& set) { return set[uniform(set.size())]; }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[uniform(v.size())]; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(uniform(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace honeykit
