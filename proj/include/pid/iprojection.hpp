#pragma once

#include <cstddef>
#include <vector>

#include "pid/grid.hpp"

namespace pid::iproj {

/// Marginals the projected table must attain: row marginal over Y and
/// column marginal over Z (the conditionals of the joint given s).
struct ProjectionTarget {
    std::vector<double> row_marginal;  // distribution over Y
    std::vector<double> col_marginal;  // distribution over Z
};

/// Inner stopping rule.
///   Distance: squared L2 step between successive normalized iterates <= eps1².
///   EtaGap:   expectation_gap(q_n) <= min positive entry of q_n × gap_factor,
///             the rigorous-mode criterion (gap_factor = ε/12).
struct InnerStopSpec {
    enum class Mode { Distance, EtaGap };
    Mode mode = Mode::Distance;
    double eps1 = 1e-8;
    double gap_factor = 0.0;

    static InnerStopSpec distance(double eps1) { return {Mode::Distance, eps1, 0.0}; }
    static InnerStopSpec eta_gap(double gap_factor) { return {Mode::EtaGap, 0.0, gap_factor}; }
};

enum class ProjectionStatus { Converged, IterationCapReached };

struct ProjectionResult {
    Grid2 q;                    // normalized projected table
    std::size_t iterations = 0; // scaling steps applied
    double final_sq_step = 0.0; // squared L2 distance between last two normalized iterates
    double final_eta_gap = 0.0; // ‖η̃ − η‖₁ of the returned table
    ProjectionStatus status = ProjectionStatus::Converged;
};

/// One multiplicative scaling step:
///   b'(y,z) = b(y,z)·[tY(y)/rowsum(y)]^{1/(2γ)}·[tZ(z)/colsum(z)]^{1/(2γ)}.
/// γ=1 is the plain update; γ<1 is the proximal-damped variant. Cells whose
/// target row or column marginal is 0 become exactly 0. Throws
/// DegenerateIterate when a row/column sum underflows to 0 while its target
/// marginal is positive.
Grid2 gis_step(const Grid2& b, const ProjectionTarget& target, double gamma);

/// ‖η̃ − η‖₁ of a normalized table against the target: L1 distance of the row
/// and column marginals, skipping the first symbol of each axis (the dropped
/// coordinate of the expectation parameterization).
double expectation_gap(const Grid2& b, const ProjectionTarget& target);

/// Iterates gis_step from b₀ = r (restricted to the product of the target
/// supports) until the stop rule fires or max_iter; the returned table is
/// normalized once, on exit.
ProjectionResult i_project(const Grid2& r, const ProjectionTarget& target, double gamma,
                           const InnerStopSpec& stop, std::size_t max_iter = 100000);

}  // namespace pid::iproj
