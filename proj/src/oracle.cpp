#include "pid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pid/admui.hpp"
#include "pid/errors.hpp"

namespace pid::oracle {

DeltaPChart chart_delta_p(const JointDistribution& p) {
    DeltaPChart chart;
    chart.base_point = p;
    std::size_t ny = p.ny(), nz = p.nz();
    for (std::size_t s = 0; s < p.ns(); ++s)
        for (std::size_t y = 1; y < ny; ++y)
            for (std::size_t z = 1; z < nz; ++z) {
                Direction d{s, y, z};
                // q + t·d >= 0 entrywise, looking only at the four touched cells
                double lo = -std::min(p.at(s, 0, 0), p.at(s, y, z));
                double hi = std::min(p.at(s, 0, z), p.at(s, y, 0));
                chart.basis.push_back(d);
                chart.box_bounds.emplace_back(lo, hi);
            }
    return chart;
}

std::vector<double> apply_chart(const DeltaPChart& chart, const std::vector<double>& t) {
    const JointDistribution& p = chart.base_point;
    std::size_t ny = p.ny(), nz = p.nz();
    std::vector<double> pmf(p.pmf().begin(), p.pmf().end());
    for (std::size_t i = 0; i < chart.basis.size(); ++i) {
        if (t[i] == 0.0) continue;
        const Direction& d = chart.basis[i];
        pmf[(d.s * ny + 0) * nz + 0] += t[i];
        pmf[(d.s * ny + d.y) * nz + d.z] += t[i];
        pmf[(d.s * ny + 0) * nz + d.z] -= t[i];
        pmf[(d.s * ny + d.y) * nz + 0] -= t[i];
    }
    return pmf;
}

namespace {

constexpr double kFeasSlack = 1e-15;

// I(S;Y,Z) of a raw pmf vector; tiny negative entries are read as 0.
double total_mi(const std::vector<double>& pmf, std::size_t ns, std::size_t ny, std::size_t nz) {
    std::vector<double> ps(ns, 0.0), pyz(ny * nz, 0.0);
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t z = 0; z < nz; ++z) {
                double v = pmf[(s * ny + y) * nz + z];
                if (v <= 0.0) continue;
                ps[s] += v;
                pyz[y * nz + z] += v;
            }
    double mi = 0.0;
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t z = 0; z < nz; ++z) {
                double v = pmf[(s * ny + y) * nz + z];
                if (v > 0.0) mi += v * std::log(v / (ps[s] * pyz[y * nz + z]));
            }
    return mi;
}

bool feasible(const std::vector<double>& pmf) {
    for (double v : pmf)
        if (v < -kFeasSlack) return false;
    return true;
}

}  // namespace

namespace {

// Interval of coordinate i that keeps the current table nonnegative, holding
// the other coordinates fixed. Only the four cells the direction touches
// move with t_i.
std::pair<double, double> slack_interval(const std::vector<double>& pmf, const Direction& d,
                                         std::size_t ny, std::size_t nz) {
    double up = std::min(pmf[(d.s * ny + 0) * nz + d.z], pmf[(d.s * ny + d.y) * nz + 0]);
    double down = std::min(pmf[(d.s * ny + 0) * nz + 0], pmf[(d.s * ny + d.y) * nz + d.z]);
    return {-down, up};
}

}  // namespace

double brute_force_union_information(const JointDistribution& p,
                                     std::size_t grid_points_per_dim,
                                     std::size_t refine_rounds) {
    DeltaPChart chart = chart_delta_p(p);
    std::size_t dim = chart.dimension();
    if (dim > 4)
        throw DimensionTooLarge("grid search supports chart dimension <= 4, got " +
                                std::to_string(dim));
    if (grid_points_per_dim < 11)
        throw std::invalid_argument("grid needs at least 11 points per dimension");

    std::size_t ns = p.ns(), ny = p.ny(), nz = p.nz();

    // Feasible incumbent to seed the search: the base point itself.
    std::vector<double> best_t(dim, 0.0);
    double best_val = total_mi(apply_chart(chart, best_t), ns, ny, nz);
    if (dim == 0) return best_val;

    // Search over a box that covers the whole feasible polytope. Each
    // direction's anchor cell (s,y,z), y,z >= 1 is touched by that direction
    // alone, so base + t_i must stay within [0, min of the two fixed pair
    // marginals at the anchor]; that brackets every feasible t_i. The
    // per-coordinate box_bounds of the chart can be strictly smaller when
    // coordinates interact.
    Grid2 p_sy = marginal(p, VarPair::SY);
    Grid2 p_sz = marginal(p, VarPair::SZ);
    std::vector<double> cover_lo(dim), cover_hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const Direction& d = chart.basis[i];
        double anchor = p.at(d.s, d.y, d.z);
        cover_lo[i] = -anchor;
        cover_hi[i] = std::min(p_sy(d.s, d.y), p_sz(d.s, d.z)) - anchor;
    }
    std::vector<double> lo = cover_lo, hi = cover_hi;

    const std::size_t gp = grid_points_per_dim;
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> t(dim, 0.0);

    for (std::size_t round = 0; round <= refine_rounds; ++round) {
        std::fill(idx.begin(), idx.end(), 0);
        bool done = false;
        while (!done) {
            for (std::size_t i = 0; i < dim; ++i) {
                double w = hi[i] - lo[i];
                t[i] = w == 0.0 ? lo[i] : lo[i] + w * double(idx[i]) / double(gp - 1);
            }
            std::vector<double> pmf = apply_chart(chart, t);
            if (feasible(pmf)) {
                double val = total_mi(pmf, ns, ny, nz);
                // strict < keeps the lexicographically first grid index on ties
                if (val < best_val) {
                    best_val = val;
                    best_t = t;
                }
            }
            // advance the multi-index
            std::size_t d = 0;
            while (d < dim && ++idx[d] == gp) {
                idx[d] = 0;
                ++d;
            }
            done = d == dim;
        }
        // Shrink ×0.2 around the incumbent, clipped to the covering box.
        for (std::size_t i = 0; i < dim; ++i) {
            double half = 0.1 * (hi[i] - lo[i]);
            lo[i] = std::max(best_t[i] - half, cover_lo[i]);
            hi[i] = std::min(best_t[i] + half, cover_hi[i]);
        }
    }

    // Polish: cyclic golden-section line searches along each coordinate from
    // the grid incumbent. The objective is convex and every probe stays
    // feasible, so the value can only move down toward the optimum; this
    // removes the grid's resolution slack on faces the grid straddles.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    std::vector<double> pmf = apply_chart(chart, best_t);
    for (std::size_t sweep = 0; sweep < 200; ++sweep) {
        double before = best_val;
        for (std::size_t i = 0; i < dim; ++i) {
            auto [dlo, dhi] = slack_interval(pmf, chart.basis[i], ny, nz);
            double a = best_t[i] + dlo, b = best_t[i] + dhi;
            if (b - a <= 1e-15) continue;
            auto eval = [&](double ti) {
                std::vector<double> probe = best_t;
                probe[i] = ti;
                return total_mi(apply_chart(chart, probe), ns, ny, nz);
            };
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = eval(x1), f2 = eval(x2);
            for (int step = 0; step < 60 && b - a > 1e-14; ++step) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = eval(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = eval(x2);
                }
            }
            double cand = 0.5 * (a + b);
            double fc = eval(cand);
            if (fc < best_val) {
                best_val = fc;
                best_t[i] = cand;
                pmf = apply_chart(chart, best_t);
            }
        }
        if (before - best_val < 1e-13) break;
    }
    return best_val;
}

double surrogate_optimum(const JointDistribution& p, std::size_t long_run_iters) {
    solver::SolverConfig cfg;
    cfg.epsilon = 1e-12;
    cfg.epsilon1 = 1e-14;
    cfg.max_outer_iter = long_run_iters;
    auto outcome = solver::admui(MarginalPair::from_joint(p), cfg);
    if (outcome.status == solver::SolveStatus::CapReached)
        throw Error("surrogate optimum hit the outer iteration cap");
    return outcome.union_information.nats;
}

}  // namespace pid::oracle
