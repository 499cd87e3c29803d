#include "pid/admui.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pid/errors.hpp"

namespace pid::solver {

void SolverConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(epsilon1 > 0.0)) throw std::invalid_argument("epsilon1 must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    if (check_cadence < 1) throw std::invalid_argument("check_cadence must be >= 1");
}

Grid2 step2_mixture(const std::vector<Grid2>& q_by_s, const std::vector<double>& weights) {
    if (q_by_s.empty() || q_by_s.size() != weights.size())
        throw DimensionMismatch("mixture needs one weight per component");
    Grid2 r(q_by_s.front().rows(), q_by_s.front().cols());
    for (std::size_t i = 0; i < q_by_s.size(); ++i) {
        const Grid2& q = q_by_s[i];
        double w = weights[i];
        for (std::size_t y = 0; y < r.rows(); ++y)
            for (std::size_t z = 0; z < r.cols(); ++z) r(y, z) += w * q(y, z);
    }
    return r;
}

double max_log_ratio(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q_prev.size(); ++i) {
        auto prev = q_prev[i].data();
        auto next = q_next[i].data();
        for (std::size_t c = 0; c < prev.size(); ++c) {
            if (prev[c] <= 0.0 && next[c] <= 0.0) continue;
            if (prev[c] <= 0.0) return std::numeric_limits<double>::infinity();
            if (next[c] <= 0.0) continue;  // log -> -inf, irrelevant for the max
            double ratio = std::log(next[c] / prev[c]);
            if (ratio > worst) worst = ratio;
        }
    }
    return worst == -std::numeric_limits<double>::infinity() ? 0.0 : worst;
}

bool stop_heuristic(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next,
                    double epsilon) {
    return max_log_ratio(q_prev, q_next) <= epsilon;
}

bool stop_rigorous_outer(const std::vector<Grid2>& q_prev, const std::vector<Grid2>& q_next,
                         double epsilon) {
    return max_log_ratio(q_prev, q_next) <= epsilon / 3.0;
}

double rigorous_inner_threshold(const Grid2& q_tilde, double epsilon) {
    double m = 0.0;
    bool found = false;
    for (double v : q_tilde.data())
        if (v > 0.0 && (!found || v < m)) {
            m = v;
            found = true;
        }
    return m * epsilon / 12.0;
}

namespace {

struct Step1Result {
    std::vector<Grid2> q;           // aligned with the support list
    std::size_t inner_iterations = 0;
    bool all_converged = true;
    double min_positive = 1.0;
};

Step1Result project_all(const Grid2& r, const std::vector<iproj::ProjectionTarget>& targets,
                        const SolverConfig& cfg, const iproj::InnerStopSpec& stop) {
    Step1Result out;
    out.q.resize(targets.size());
    std::vector<std::size_t> iters(targets.size(), 0);
    std::vector<char> converged(targets.size(), 1);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto res = iproj::i_project(r, targets[i], cfg.gamma, stop, cfg.max_inner_iter);
            iters[i] = res.iterations;
            converged[i] = res.status == iproj::ProjectionStatus::Converged;
            out.q[i] = std::move(res.q);
        }
    };

    if (cfg.parallel_step1 && targets.size() > 1) {
        std::size_t hw = std::thread::hardware_concurrency();
        std::size_t jobs = std::min(targets.size(), std::max<std::size_t>(hw, 2));
        std::vector<std::thread> pool;
        std::size_t chunk = (targets.size() + jobs - 1) / jobs;
        for (std::size_t j = 0; j < jobs; ++j) {
            std::size_t begin = j * chunk;
            std::size_t end = std::min(targets.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    } else {
        work(0, targets.size());
    }

    for (std::size_t i = 0; i < targets.size(); ++i) {
        out.inner_iterations += iters[i];
        if (!converged[i]) out.all_converged = false;
        for (double v : out.q[i].data())
            if (v > 0.0 && v < out.min_positive) out.min_positive = v;
    }
    return out;
}

double mixture_objective(const std::vector<Grid2>& q, const std::vector<double>& weights,
                         const Grid2& r) {
    double value = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double d = 0.0;
        for (std::size_t y = 0; y < r.rows(); ++y)
            for (std::size_t z = 0; z < r.cols(); ++z) {
                double v = q[i](y, z);
                if (v > 0.0) d += v * std::log(v / r(y, z));
            }
        value += weights[i] * d;
    }
    return value;
}

JointDistribution assemble_joint(const MarginalPair& m, const std::vector<std::size_t>& support,
                                 const std::vector<double>& p_supp,
                                 const std::vector<Grid2>& q) {
    std::size_t ns = m.alphabet_s().size(), ny = m.alphabet_y().size(),
                nz = m.alphabet_z().size();
    std::vector<double> pmf(ns * ny * nz, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
        std::size_t s = support[i];
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t z = 0; z < nz; ++z)
                pmf[(s * ny + y) * nz + z] = p_supp[i] * q[i](y, z);
    }
    return JointDistribution(m.alphabet_s(), m.alphabet_y(), m.alphabet_z(), std::move(pmf));
}

double marginal_mismatch(const JointDistribution& q_star, const MarginalPair& m) {
    double gap = max_abs_diff(marginal(q_star, VarPair::SY), m.p_sy());
    double gz = max_abs_diff(marginal(q_star, VarPair::SZ), m.p_sz());
    return gap > gz ? gap : gz;
}

}  // namespace

SolveOutcome run_outer_loop(const MarginalPair& m, const SolverConfig& cfg, OuterTrace* trace) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();

    std::size_t ny = m.alphabet_y().size(), nz = m.alphabet_z().size();
    auto p_s = m.p_s();

    // Per-s projection targets over supp(P_S); zero-mass symbols are skipped.
    std::vector<std::size_t> support;
    std::vector<double> p_supp;
    std::vector<iproj::ProjectionTarget> targets;
    for (std::size_t s = 0; s < p_s.size(); ++s) {
        if (p_s[s] <= 0.0) continue;
        support.push_back(s);
        p_supp.push_back(p_s[s]);
        iproj::ProjectionTarget t;
        t.row_marginal.resize(ny);
        t.col_marginal.resize(nz);
        for (std::size_t y = 0; y < ny; ++y) t.row_marginal[y] = m.p_sy()(s, y) / p_s[s];
        for (std::size_t z = 0; z < nz; ++z) t.col_marginal[z] = m.p_sz()(s, z) / p_s[s];
        targets.push_back(std::move(t));
    }
    if (support.empty()) throw NotNormalized("P_S carries no mass");

    Grid2 r = cfg.initial_reference.value_or(Grid2(ny, nz, 1.0 / double(ny * nz)));
    if (r.rows() != ny || r.cols() != nz)
        throw DimensionMismatch("initial reference shape does not match Y×Z");

    StopMode mode = cfg.stop_mode;
    iproj::InnerStopSpec inner = mode == StopMode::Rigorous
                                     ? iproj::InnerStopSpec::eta_gap(cfg.epsilon / 12.0)
                                     : iproj::InnerStopSpec::distance(cfg.epsilon1);

    SolveOutcome out;
    out.stop_mode_used = mode;
    out.status = SolveStatus::CapReached;

    std::vector<Grid2> q_prev;
    std::vector<Grid2> q;
    Grid2 r_mix;
    double value = std::numeric_limits<double>::infinity();

    for (std::size_t iter = 1; iter <= cfg.max_outer_iter; ++iter) {
        Step1Result step1 = project_all(r, targets, cfg, inner);
        q = std::move(step1.q);
        out.inner_iterations_total += step1.inner_iterations;
        out.outer_iterations = iter;

        if (mode == StopMode::Rigorous &&
            (step1.min_positive < 1e-300 || !step1.all_converged)) {
            // Rigorous guarantee unavailable: either the iterate is
            // vanishing, or an inner projection exhausted its budget before
            // meeting the eta-gap target (the per-entry bound scales with the
            // smallest iterate entry and can drop below what floating point
            // can resolve). Fall back to the heuristic criterion and flag
            // the downgrade.
            mode = StopMode::Heuristic;
            inner = iproj::InnerStopSpec::distance(cfg.epsilon1);
            out.stop_mode_used = StopMode::Heuristic;
            out.rigorous_downgraded = true;
        }

        r_mix = step2_mixture(q, p_supp);
        value = mixture_objective(q, p_supp, r_mix);
        if (trace) trace->objective.push_back(value);

        if (iter >= 2 && iter % cfg.check_cadence == 0) {
            // In rigorous mode both compared iterates met their inner eta-gap
            // target: a miss would have downgraded the run above.
            bool fired = mode == StopMode::Rigorous
                             ? stop_rigorous_outer(q_prev, q, cfg.epsilon)
                             : stop_heuristic(q_prev, q, cfg.epsilon);
            if (fired) {
                out.status = SolveStatus::EpsOptimal;
                break;
            }
        }
        q_prev = q;
        r = r_mix;
    }

    out.q_star = assemble_joint(m, support, p_supp, q);
    out.union_information = {value};
    out.feasibility_gap = marginal_mismatch(out.q_star, m);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SolveOutcome admui(const MarginalPair& m, const SolverConfig& cfg) {
    return run_outer_loop(m, cfg, nullptr);
}

}  // namespace pid::solver
