#pragma once

// Seeded random RLE instances. splitmix64 keeps the stream identical across
// platforms and standard library implementations.

#include <cstdint>

#include "rled/errors.hpp"
#include "rled/rle.hpp"

namespace rled {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo bias is irrelevant here; determinism is not.
    std::uint64_t bounded(std::uint64_t bound) { return next() % bound; }
};

// Canonical RLE string with exactly `m` runs, lengths uniform in
// [1, max_run], symbols drawn from the first `alphabet` letters with
// adjacent runs forced distinct.
inline RleString gen_random_rle(std::int64_t m, std::int64_t max_run,
                                int alphabet, std::uint64_t seed) {
    if (m < 0) throw DomainError("gen: run count must be >= 0");
    if (max_run < 1) throw DomainError("gen: max run length must be >= 1");
    if (alphabet < 1 || alphabet > 52)
        throw DomainError("gen: alphabet size must be in [1, 52]");
    if (alphabet < 2 && m >= 2)
        throw DomainError("gen: adjacent runs need distinct symbols; "
                          "alphabet must be >= 2 when m >= 2");
    auto letter = [](int i) {
        return static_cast<char>(i < 26 ? 'a' + i : 'A' + (i - 26));
    };
    SplitMix64 rng(seed);
    RleString out;
    int prev = -1;
    for (std::int64_t i = 0; i < m; ++i) {
        int sym;
        if (prev < 0) {
            sym = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(alphabet)));
        } else {
            sym = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(alphabet - 1)));
            if (sym >= prev) ++sym;
        }
        std::int64_t len =
            1 + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(max_run)));
        out.append(letter(sym), len);
        prev = sym;
    }
    return out;
}

}  // namespace rled
