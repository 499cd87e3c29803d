#pragma once

#include <cstddef>
#include <vector>

#include "pid/distribution.hpp"

namespace pid::oracle {

/// A single kernel direction of the marginal-fixing map: +1 at (s,y0,z0) and
/// (s,y,z), -1 at (s,y0,z) and (s,y,z0), with (y0,z0) the first symbols.
/// Moving along it changes the joint without touching P_SY or P_SZ.
struct Direction {
    std::size_t s, y, z;  // y >= 1, z >= 1
};

/// Affine chart of the feasible polytope around a base point: the kernel
/// basis of the marginal map plus a per-coordinate feasibility interval.
struct DeltaPChart {
    JointDistribution base_point;
    std::vector<Direction> basis;  // |S|·(|Y|-1)·(|Z|-1) directions
    std::vector<std::pair<double, double>> box_bounds;

    std::size_t dimension() const { return basis.size(); }
};

DeltaPChart chart_delta_p(const JointDistribution& p);

/// Apply base + Σ t_i·d_i. Entries may go slightly negative for infeasible t.
std::vector<double> apply_chart(const DeltaPChart& chart, const std::vector<double>& t);

/// Exhaustive grid search for min I_Q(S;Y,Z) over the feasible polytope,
/// with refine_rounds of ×0.2 local shrinking around the incumbent.
/// Throws DimensionTooLarge when the chart dimension exceeds 4.
double brute_force_union_information(const JointDistribution& p,
                                     std::size_t grid_points_per_dim = 21,
                                     std::size_t refine_rounds = 3);

/// High-accuracy solver run (ε=1e-12, inner 1e-14) used as a stand-in for
/// the exact optimum in stopping-criterion tests.
double surrogate_optimum(const JointDistribution& p, std::size_t long_run_iters = 1000000);

}  // namespace pid::oracle
