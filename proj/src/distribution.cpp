#include "pid/distribution.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pid {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw DimensionMismatch("alphabet must have at least one symbol");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw DimensionMismatch("alphabet labels must be distinct");
}

Alphabet Alphabet::numbered(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return Alphabet(std::move(labels));
}

long Alphabet::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<long>(i);
    return -1;
}

namespace {

// Shared canonicalization for pmf vectors and marginal tables: clamp rounding
// noise, reject genuine negatives, renormalize sums within tolerance.
void canonicalize(std::span<double> cells, const char* what) {
    double total = 0.0;
    for (double& v : cells) {
        if (!std::isfinite(v)) throw NotNormalized(std::string(what) + ": non-finite entry");
        if (v < 0.0) {
            if (v < -kNegClampTol) {
                std::ostringstream msg;
                msg << what << ": negative entry " << v;
                throw NegativeMass(msg.str());
            }
            v = 0.0;
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << what << ": entries sum to " << total << ", expected 1";
        throw NotNormalized(msg.str());
    }
    // Deviations at the last-ulp level are left untouched so that a
    // saved/reloaded table keeps its exact bits.
    if (std::abs(total - 1.0) > 1e-14)
        for (double& v : cells) v /= total;
}

}  // namespace

JointDistribution::JointDistribution(Alphabet s, Alphabet y, Alphabet z,
                                     std::vector<double> pmf)
    : s_(std::move(s)), y_(std::move(y)), z_(std::move(z)), pmf_(std::move(pmf)) {
    if (pmf_.size() != s_.size() * y_.size() * z_.size())
        throw DimensionMismatch("joint table size does not match alphabet sizes");
    canonicalize(pmf_, "joint distribution");
}

MarginalPair::MarginalPair(Alphabet s, Alphabet y, Alphabet z, Grid2 p_sy, Grid2 p_sz)
    : s_(std::move(s)), y_(std::move(y)), z_(std::move(z)),
      p_sy_(std::move(p_sy)), p_sz_(std::move(p_sz)) {
    if (p_sy_.rows() != s_.size() || p_sy_.cols() != y_.size() ||
        p_sz_.rows() != s_.size() || p_sz_.cols() != z_.size())
        throw DimensionMismatch("marginal table shapes do not match alphabets");
    canonicalize(p_sy_.data(), "P_SY");
    canonicalize(p_sz_.data(), "P_SZ");
    auto s_from_sy = p_sy_.row_sums();
    auto s_from_sz = p_sz_.row_sums();
    for (std::size_t s = 0; s < s_.size(); ++s) {
        if (std::abs(s_from_sy[s] - s_from_sz[s]) > kNormTol) {
            std::ostringstream msg;
            msg << "S-marginals of P_SY and P_SZ disagree at s=" << s_.label(s)
                << " (" << s_from_sy[s] << " vs " << s_from_sz[s] << ")";
            throw InconsistentMarginals(msg.str());
        }
    }
}

MarginalPair MarginalPair::from_joint(const JointDistribution& joint) {
    return MarginalPair(joint.alphabet_s(), joint.alphabet_y(), joint.alphabet_z(),
                        marginal(joint, VarPair::SY), marginal(joint, VarPair::SZ));
}

Grid2 marginal(const JointDistribution& j, VarPair keep) {
    switch (keep) {
        case VarPair::SY: {
            Grid2 out(j.ns(), j.ny());
            for (std::size_t s = 0; s < j.ns(); ++s)
                for (std::size_t y = 0; y < j.ny(); ++y)
                    for (std::size_t z = 0; z < j.nz(); ++z) out(s, y) += j.at(s, y, z);
            return out;
        }
        case VarPair::SZ: {
            Grid2 out(j.ns(), j.nz());
            for (std::size_t s = 0; s < j.ns(); ++s)
                for (std::size_t y = 0; y < j.ny(); ++y)
                    for (std::size_t z = 0; z < j.nz(); ++z) out(s, z) += j.at(s, y, z);
            return out;
        }
        case VarPair::YZ: {
            Grid2 out(j.ny(), j.nz());
            for (std::size_t s = 0; s < j.ns(); ++s)
                for (std::size_t y = 0; y < j.ny(); ++y)
                    for (std::size_t z = 0; z < j.nz(); ++z) out(y, z) += j.at(s, y, z);
            return out;
        }
    }
    throw DimensionMismatch("unknown variable pair");
}

std::vector<double> marginal(const JointDistribution& j, Var keep) {
    std::size_t n = keep == Var::S ? j.ns() : keep == Var::Y ? j.ny() : j.nz();
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < j.ns(); ++s)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) {
                std::size_t i = keep == Var::S ? s : keep == Var::Y ? y : z;
                out[i] += j.at(s, y, z);
            }
    return out;
}

ConditionalTable conditional_yz(const JointDistribution& j, std::size_t s) {
    double ps = 0.0;
    for (std::size_t y = 0; y < j.ny(); ++y)
        for (std::size_t z = 0; z < j.nz(); ++z) ps += j.at(s, y, z);
    if (ps <= 0.0) {
        throw ZeroConditioningEvent("cannot condition on zero-probability symbol s=" +
                                    j.alphabet_s().label(s));
    }
    ConditionalTable out;
    out.s_index = s;
    out.probs = Grid2(j.ny(), j.nz());
    for (std::size_t y = 0; y < j.ny(); ++y)
        for (std::size_t z = 0; z < j.nz(); ++z) out.probs(y, z) = j.at(s, y, z) / ps;
    return out;
}

}  // namespace pid
