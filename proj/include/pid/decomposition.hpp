#pragma once

#include "pid/admui.hpp"
#include "pid/distribution.hpp"
#include "pid/info.hpp"

namespace pid::decomp {

enum class Direction { UniqueY, UniqueZ };

/// The four-part split of I(S;Y,Z), derived from a single union-information
/// solve. Components are clamped to 0 when negative by at most 1e-6 (solver
/// tolerance); the raw values are retained alongside.
struct DecompositionResult {
    InfoValue ui_y;       // unique information of Y wrt Z
    InfoValue ui_z;       // unique information of Z wrt Y
    InfoValue si;         // shared (redundant)
    InfoValue ci;         // complementary (synergistic)
    InfoValue mi_total;   // I(S;Y,Z)
    InfoValue mi_sy;      // I(S;Y)
    InfoValue mi_sz;      // I(S;Z)
    double coi = 0.0;     // co-information, may be negative
    InfoValue union_info; // min I_Q(S;Y,Z) over the marginal polytope

    // Pre-clamp values (nats).
    double raw_ui_y = 0.0, raw_ui_z = 0.0, raw_si = 0.0, raw_ci = 0.0;

    solver::SolveOutcome solve;
};

/// Full decomposition of a joint distribution.
DecompositionResult decompose(const JointDistribution& p, const solver::SolverConfig& config);

/// Unique information from the pairwise marginals alone (no full joint).
InfoValue unique_information(const MarginalPair& marginals, Direction direction,
                             const solver::SolverConfig& config);

}  // namespace pid::decomp
