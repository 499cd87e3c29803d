#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pid/errors.hpp"
#include "pid/grid.hpp"

namespace pid {

/// Tolerance for "sums to 1" checks on input tables.
inline constexpr double kNormTol = 1e-9;
/// Entries in [-kNegClampTol, 0) are treated as rounding noise and clamped to 0.
inline constexpr double kNegClampTol = 1e-12;

/// Finite ordered set of symbol labels.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> labels);

    /// Alphabet {"0", "1", ..., "n-1"}.
    static Alphabet numbered(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label, or -1 if absent.
    long index_of(const std::string& label) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> labels_;
};

/// Information quantity stored in nats; reporting converts to bits.
struct InfoValue {
    double nats = 0.0;
    double bits() const { return nats / std::numbers::ln2; }
};

enum class Var { S, Y, Z };
enum class VarPair { SY, SZ, YZ };

/// Per-s conditional distribution Q_{YZ|s} over Y×Z.
struct ConditionalTable {
    std::size_t s_index = 0;
    Grid2 probs;  // rows = Y, cols = Z; normalized within kNormTol
};

/// Dense joint pmf over S×Y×Z. Construction validates and canonicalizes:
/// entries in [-1e-12, 0) clamp to 0, a sum within 1e-9 of 1 renormalizes,
/// anything worse throws (NegativeMass / NotNormalized / DimensionMismatch).
class JointDistribution {
public:
    JointDistribution() = default;
    JointDistribution(Alphabet s, Alphabet y, Alphabet z, std::vector<double> pmf);

    std::size_t ns() const { return s_.size(); }
    std::size_t ny() const { return y_.size(); }
    std::size_t nz() const { return z_.size(); }

    const Alphabet& alphabet_s() const { return s_; }
    const Alphabet& alphabet_y() const { return y_; }
    const Alphabet& alphabet_z() const { return z_; }

    double at(std::size_t s, std::size_t y, std::size_t z) const {
        return pmf_[(s * y_.size() + y) * z_.size() + z];
    }
    std::span<const double> pmf() const { return pmf_; }

    bool operator==(const JointDistribution&) const = default;

private:
    Alphabet s_, y_, z_;
    std::vector<double> pmf_;
};

/// Pair of pairwise marginals (P_SY, P_SZ); the full input of the solver.
/// Validated: nonnegative, each sums to 1 within 1e-9, S-marginals agree
/// entrywise within 1e-9 (else InconsistentMarginals).
class MarginalPair {
public:
    MarginalPair() = default;
    MarginalPair(Alphabet s, Alphabet y, Alphabet z, Grid2 p_sy, Grid2 p_sz);

    static MarginalPair from_joint(const JointDistribution& joint);

    const Grid2& p_sy() const { return p_sy_; }
    const Grid2& p_sz() const { return p_sz_; }
    const Alphabet& alphabet_s() const { return s_; }
    const Alphabet& alphabet_y() const { return y_; }
    const Alphabet& alphabet_z() const { return z_; }

    /// Shared S-marginal (taken from P_SY).
    std::vector<double> p_s() const { return p_sy_.row_sums(); }

private:
    Alphabet s_, y_, z_;
    Grid2 p_sy_, p_sz_;
};

/// Sum over the dropped axes.
Grid2 marginal(const JointDistribution& joint, VarPair keep);
std::vector<double> marginal(const JointDistribution& joint, Var keep);

/// Q_{YZ|s}: entries P(s,y,z)/P_S(s). Throws ZeroConditioningEvent if P_S(s)=0.
ConditionalTable conditional_yz(const JointDistribution& joint, std::size_t s);

}  // namespace pid
