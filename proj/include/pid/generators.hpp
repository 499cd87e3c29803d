#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "pid/distribution.hpp"

namespace pid {

enum class Gate { Xor, And };

/// COPY distribution: Y, Z independent uniform over k symbols, S = (Y,Z).
/// Alphabets: |S| = k², |Y| = |Z| = k; mass 1/k² on every consistent triple.
JointDistribution gen_copy(std::size_t k);

/// Uniform independent bits through a binary gate: S = gate(Y,Z).
JointDistribution gen_binary_gate(Gate gate);

/// Seed-reproducible stream of joints sampled uniformly from the probability
/// simplex over all |S||Y||Z| cells (normalized unit-rate exponentials).
class SimplexSampler {
public:
    SimplexSampler(std::array<std::size_t, 3> sizes, std::uint64_t seed);
    JointDistribution next();

private:
    Alphabet s_, y_, z_;
    std::mt19937_64 rng_;
};

std::vector<JointDistribution> gen_simplex_uniform(std::array<std::size_t, 3> sizes,
                                                   std::uint64_t seed, std::size_t count);

}  // namespace pid
