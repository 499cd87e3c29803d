#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pid/distribution.hpp"
#include "pid/grid.hpp"
#include "pid/iprojection.hpp"

namespace pid::solver {

enum class StopMode { Heuristic, Rigorous };

struct SolverConfig {
    double epsilon = 1e-6;      // outer accuracy (nats)
    double epsilon1 = 1e-8;     // inner accuracy for the distance stop
    double gamma = 1.0;         // scaling exponent damping, in (0, 1]
    StopMode stop_mode = StopMode::Heuristic;
    std::size_t check_cadence = 1;
    std::size_t max_outer_iter = 100000;
    std::size_t max_inner_iter = 100000;
    bool parallel_step1 = false;
    // Reference R^(0); uniform over Y×Z when unset.
    std::optional<Grid2> initial_reference;

    /// Config with epsilon1 at its standard value 1e-2·epsilon.
    static SolverConfig with_epsilon(double eps) {
        SolverConfig c;
        c.epsilon = eps;
        c.epsilon1 = 1e-2 * eps;
        return c;
    }

    void validate() const;
};

enum class SolveStatus { EpsOptimal, CapReached };

struct SolveOutcome {
    JointDistribution q_star;       // P_S · Q_{YZ|S} at the stopping iterate
    InfoValue union_information;    // I(S;Y,Z) under q_star
    std::size_t outer_iterations = 0;
    std::size_t inner_iterations_total = 0;
    SolveStatus status = SolveStatus::EpsOptimal;
    StopMode stop_mode_used = StopMode::Heuristic;
    bool rigorous_downgraded = false;  // vanishing iterate forced a heuristic stop
    double feasibility_gap = 0.0;      // max entrywise marginal mismatch of q_star
    double wall_seconds = 0.0;
};

/// Per-outer-iteration objective values D(P_S·Q^(i) ‖ P_S·R^(i)), for tests.
struct OuterTrace {
    std::vector<double> objective;
};

/// Step 2 closed form: R(y,z) = Σ_s w(s)·q_s(y,z).
Grid2 step2_mixture(const std::vector<Grid2>& q_by_s, const std::vector<double>& weights);

/// max over (table, cell) of log(next/prev). Cells 0 in both are skipped;
/// 0 → positive yields +inf (the stop can never fire on a support change).
double max_log_ratio(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next);

bool stop_heuristic(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next,
                    double epsilon);

/// Rigorous outer test: threshold epsilon/3 on the approximate iterates.
bool stop_rigorous_outer(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next,
                         double epsilon);

/// Rigorous inner eta-gap threshold: (min positive entry of q̃)·epsilon/12.
double rigorous_inner_threshold(const Grid2& q_tilde, double epsilon);

/// Alternating divergence minimization for the union information.
SolveOutcome admui(const MarginalPair& marginals, const SolverConfig& config);

/// Driver behind admui; records the objective trace when given a sink.
SolveOutcome run_outer_loop(const MarginalPair& marginals, const SolverConfig& config,
                            OuterTrace* trace);

}  // namespace pid::solver
