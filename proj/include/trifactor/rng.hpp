#pragma once

#include <cstdint>
#include <random>

namespace trifactor {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-game stream seed; games in a batch derive their streams from
// (batch seed, game index) so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701a7b5f3c9ULL));
}

// mt19937_64 with an unbiased bounded draw. The bound logic is spelled out
// here (instead of uniform_int_distribution) so streams are identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace trifactor
