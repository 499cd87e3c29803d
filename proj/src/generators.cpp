#include "pid/generators.hpp"

#include <cmath>

namespace pid {

JointDistribution gen_copy(std::size_t k) {
    if (k < 2) throw DimensionMismatch("COPY requires k >= 2");
    std::vector<std::string> s_labels;
    s_labels.reserve(k * k);
    for (std::size_t y = 0; y < k; ++y)
        for (std::size_t z = 0; z < k; ++z)
            s_labels.push_back("(" + std::to_string(y) + "," + std::to_string(z) + ")");
    Alphabet s(std::move(s_labels));
    Alphabet y = Alphabet::numbered(k);
    Alphabet z = Alphabet::numbered(k);

    std::vector<double> pmf(k * k * k * k, 0.0);
    double mass = 1.0 / static_cast<double>(k * k);
    for (std::size_t yy = 0; yy < k; ++yy)
        for (std::size_t zz = 0; zz < k; ++zz) {
            std::size_t ss = yy * k + zz;
            pmf[(ss * k + yy) * k + zz] = mass;
        }
    return JointDistribution(std::move(s), std::move(y), std::move(z), std::move(pmf));
}

JointDistribution gen_binary_gate(Gate gate) {
    Alphabet s = Alphabet::numbered(2);
    Alphabet y = Alphabet::numbered(2);
    Alphabet z = Alphabet::numbered(2);
    std::vector<double> pmf(8, 0.0);
    for (std::size_t yy = 0; yy < 2; ++yy)
        for (std::size_t zz = 0; zz < 2; ++zz) {
            std::size_t ss = gate == Gate::Xor ? (yy ^ zz) : (yy & zz);
            pmf[(ss * 2 + yy) * 2 + zz] = 0.25;
        }
    return JointDistribution(std::move(s), std::move(y), std::move(z), std::move(pmf));
}

namespace {

// Uniform in (0, 1], built from the top 53 bits so the stream is identical
// across standard libraries.
double canonical_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

SimplexSampler::SimplexSampler(std::array<std::size_t, 3> sizes, std::uint64_t seed)
    : s_(Alphabet::numbered(sizes[0])),
      y_(Alphabet::numbered(sizes[1])),
      z_(Alphabet::numbered(sizes[2])),
      rng_(seed) {}

JointDistribution SimplexSampler::next() {
    std::size_t n = s_.size() * y_.size() * z_.size();
    std::vector<double> pmf(n);
    double total = 0.0;
    for (double& v : pmf) {
        v = -std::log(canonical_open(rng_));
        total += v;
    }
    for (double& v : pmf) v /= total;
    return JointDistribution(s_, y_, z_, std::move(pmf));
}

std::vector<JointDistribution> gen_simplex_uniform(std::array<std::size_t, 3> sizes,
                                                   std::uint64_t seed, std::size_t count) {
    SimplexSampler sampler(sizes, seed);
    std::vector<JointDistribution> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
    return out;
}

}  // namespace pid
