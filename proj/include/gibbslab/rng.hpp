#ifndef GIBBSLAB_RNG_HPP
#define GIBBSLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace gibbslab {

// Seeded random source with fully specified draw algorithms, so that equal
// seeds give bit-identical streams on every platform.
//
// Engine: std::mt19937_64 (output sequence fixed by the standard).
// Bounded integers: rejection from the top of the 64-bit range, then modulo.
// Reals: 53-bit mantissa draw, uniform on [0,1).
// Neither std::uniform_int_distribution nor std::uniform_real_distribution
// is used anywhere; their output is implementation-defined.
class RandomEngine {
public:
    explicit RandomEngine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform on {0, ..., n-1}, unbiased.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // In-place Fisher-Yates, top-down.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives a decorrelated seed for sub-task `index` (trial loops use one
    // base seed plus the trial index). SplitMix64 finalizer over the pair.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace gibbslab

#endif // GIBBSLAB_RNG_HPP
