#pragma once

#include <cstdint>

namespace redcalc {

/// Deterministic splittable stream (SplitMix64). Identical seeds give identical
/// sequences; split(i) derives an independent child stream for task i so that
/// parallel sampling does not depend on the thread count.
class SeededGenerator {
public:
    explicit SeededGenerator(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-and-reject).
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool coin() { return (next() >> 63) != 0; }

    /// Child stream keyed by `stream`; does not advance this generator.
    SeededGenerator split(std::uint64_t stream) const {
        SeededGenerator mixer(state_ ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
        return SeededGenerator(mixer.next());
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace redcalc
