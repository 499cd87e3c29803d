#pragma once

#include <span>

#include "pid/distribution.hpp"

namespace pid {

/// H(p) = -Σ p log p in nats, with the 0·log 0 = 0 convention.
InfoValue entropy(std::span<const double> p);

/// D(p‖q) = Σ p log(p/q) in nats; +inf when supp(q) does not cover supp(p).
/// Terms with p=0 contribute 0.
InfoValue kl_divergence(std::span<const double> p, std::span<const double> q);

/// Pairwise mutual information I(A;B) = D(P_AB ‖ P_A ⊗ P_B).
InfoValue mutual_information(const JointDistribution& joint, VarPair pair);

/// Total mutual information I(S;Y,Z).
InfoValue mutual_information_total(const JointDistribution& joint);

/// I(S;Y|given=Z) or I(S;Z|given=Y).
InfoValue conditional_mutual_information(const JointDistribution& joint, Var given);

/// CoI(S;Y;Z) = I(S;Y) - I(S;Y|Z). May be negative.
double co_information(const JointDistribution& joint);

}  // namespace pid
