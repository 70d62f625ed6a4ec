#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace semdirb {

/// Seeded pseudorandom source used everywhere an ordering is randomized.
///
/// The engine is std::mt19937_64 seeded directly with the 64-bit seed. Its
/// output sequence is fixed by the C++ standard (the 10000th output of a
/// default-seeded engine is 9981545732273789042), so runs are reproducible
/// across compilers. Bounded integers are produced by rejection sampling,
/// never through std::uniform_int_distribution, whose algorithm is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double unit();

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer. Used to derive independent sub-seeds and as the
/// avalanche step of the n-gram hash.
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for stream `index` derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Random permutation of 0..n-1 by sequential draw-and-swap-remove: at each
/// step pick j = below(pool size), emit pool[j], move the last pool element
/// into slot j. The pool starts as 0..n-1. The cluster-guided scheduler uses
/// the same draw so a single-cluster run reproduces this order exactly.
std::vector<std::size_t> seeded_permutation(std::size_t n, Rng& rng);

}  // namespace semdirb
