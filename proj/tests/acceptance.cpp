// Acceptance suite: one pass/fail line per criterion, exit 0 only if all hold.
//
// The whole battery runs three times — twice with jobs=1 (consecutive runs)
// and once with jobs=4 plus threaded step 1 — and the canonical %.17g result
// strings of the passes are compared byte-for-byte for the determinism
// criterion. Wall-clock readings never enter the canonical strings.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pid/admui.hpp"
#include "pid/decomposition.hpp"
#include "pid/generators.hpp"
#include "pid/info.hpp"
#include "pid/ingest.hpp"
#include "pid/iprojection.hpp"
#include "pid/oracle.hpp"

using namespace pid;
using solver::SolverConfig;
using solver::SolveStatus;
using solver::StopMode;

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SolverConfig rigorous(double eps) {
    auto cfg = SolverConfig::with_epsilon(eps);
    cfg.stop_mode = StopMode::Rigorous;
    return cfg;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

struct Check {
    std::string label;
    bool pass;
    std::string detail;
};

JointDistribution tensor_square(const JointDistribution& p) {
    auto paired = [](const Alphabet& a) {
        std::vector<std::string> labels;
        for (const auto& u : a.labels())
            for (const auto& v : a.labels()) labels.push_back(u + "+" + v);
        return Alphabet(labels);
    };
    std::size_t ns = p.ns(), ny = p.ny(), nz = p.nz();
    std::vector<double> pmf(ns * ns * ny * ny * nz * nz);
    for (std::size_t s1 = 0; s1 < ns; ++s1)
        for (std::size_t s2 = 0; s2 < ns; ++s2)
            for (std::size_t y1 = 0; y1 < ny; ++y1)
                for (std::size_t y2 = 0; y2 < ny; ++y2)
                    for (std::size_t z1 = 0; z1 < nz; ++z1)
                        for (std::size_t z2 = 0; z2 < nz; ++z2)
                            pmf[(((s1 * ns + s2) * ny + y1) * ny + y2) * nz * nz + z1 * nz +
                                z2] = p.at(s1, y1, z1) * p.at(s2, y2, z2);
    return JointDistribution(paired(p.alphabet_s()), paired(p.alphabet_y()),
                             paired(p.alphabet_z()), std::move(pmf));
}

JointDistribution coarse_grain(const JointDistribution& p, Var axis,
                               const std::vector<std::size_t>& map, std::size_t n_out) {
    std::size_t ns = axis == Var::S ? n_out : p.ns();
    std::size_t ny = axis == Var::Y ? n_out : p.ny();
    std::size_t nz = axis == Var::Z ? n_out : p.nz();
    std::vector<double> pmf(ns * ny * nz, 0.0);
    for (std::size_t s = 0; s < p.ns(); ++s)
        for (std::size_t y = 0; y < p.ny(); ++y)
            for (std::size_t z = 0; z < p.nz(); ++z) {
                std::size_t s2 = axis == Var::S ? map[s] : s;
                std::size_t y2 = axis == Var::Y ? map[y] : y;
                std::size_t z2 = axis == Var::Z ? map[z] : z;
                pmf[(s2 * ny + y2) * nz + z2] += p.at(s, y, z);
            }
    return JointDistribution(Alphabet::numbered(ns), Alphabet::numbered(ny),
                             Alphabet::numbered(nz), std::move(pmf));
}

JointDistribution markov_szy(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&rng] { return (double(rng() >> 11) + 1.0) * 0x1.0p-53; };
    Grid2 p_sz(2, 2);
    double total = 0.0;
    for (auto& v : p_sz.data()) total += (v = u());
    for (auto& v : p_sz.data()) v /= total;
    Grid2 y_given_z(2, 2);
    for (std::size_t z = 0; z < 2; ++z) {
        double a = u(), b = u();
        y_given_z(z, 0) = a / (a + b);
        y_given_z(z, 1) = b / (a + b);
    }
    std::vector<double> pmf(8);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                pmf[(s * 2 + y) * 2 + z] = p_sz(s, z) * y_given_z(z, y);
    return JointDistribution(Alphabet::numbered(2), Alphabet::numbered(2),
                             Alphabet::numbered(2), std::move(pmf));
}

// A second joint with the same pairwise marginals: random point of the
// fiber, scaled toward the base point until every cell is nonnegative.
JointDistribution fiber_sibling(const JointDistribution& p, std::uint64_t seed) {
    auto chart = oracle::chart_delta_p(p);
    std::mt19937_64 rng(seed);
    std::vector<double> t(chart.dimension());
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto [lo, hi] = chart.box_bounds[i];
        double u = double(rng() >> 11) * 0x1.0p-53;
        t[i] = lo + u * (hi - lo);
    }
    for (int halvings = 0; halvings < 60; ++halvings) {
        auto pmf = oracle::apply_chart(chart, t);
        bool ok = true;
        for (double v : pmf)
            if (v < 0.0) ok = false;
        if (ok) return JointDistribution(p.alphabet_s(), p.alphabet_y(), p.alphabet_z(), pmf);
        for (double& v : t) v *= 0.5;
    }
    return p;
}

struct Battery {
    std::size_t jobs;
    std::ostringstream canon;
    std::vector<Check> checks;

    explicit Battery(std::size_t jobs_) : jobs(jobs_) {}

    SolverConfig with_parallel(SolverConfig cfg) const {
        cfg.parallel_step1 = jobs > 1;
        return cfg;
    }

    // 1. COPY accuracy and wall time across sizes and accuracies.
    void criterion1() {
        const std::size_t ks[] = {2, 4, 7, 10};
        const double epses[] = {1e-3, 1e-5, 1e-8};
        const double tol_bits[] = {1.1e-3, 2e-5, 2e-8};
        bool pass = true;
        double worst_err = 0.0, worst_wall = 0.0;
        for (std::size_t k : ks) {
            auto copy = gen_copy(k);
            auto m = MarginalPair::from_joint(copy);
            double mi_sz = mutual_information(copy, VarPair::SZ).nats;
            for (int e = 0; e < 3; ++e) {
                auto cfg = with_parallel(SolverConfig::with_epsilon(epses[e]));
                auto t0 = std::chrono::steady_clock::now();
                auto out = solver::admui(m, cfg);
                double wall =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                double ui_bits = (out.union_information.nats - mi_sz) / kLn2;
                double err = std::abs(ui_bits - std::log2(double(k)));
                canon << "c1 k=" << k << " eps=" << fmt17(epses[e]) << " ui=" << fmt17(ui_bits)
                      << "\n";
                if (err > tol_bits[e] || wall > 5.0 || out.status != SolveStatus::EpsOptimal)
                    pass = false;
                worst_err = std::max(worst_err, err);
                worst_wall = std::max(worst_wall, wall);
            }
        }
        std::ostringstream d;
        d << "k in {2,4,7,10} x eps in {1e-3,1e-5,1e-8}; worst |UI-log2 k| = " << worst_err
          << " bits, worst wall = " << worst_wall << " s (cap 5 s)";
        checks.push_back({"criterion 1: COPY accuracy and time", pass, d.str()});
    }

    // 2. Rigorous-mode certificate vs long-run surrogates.
    void criterion2(std::vector<JointDistribution>& store) {
        store = gen_simplex_uniform({2, 2, 2}, 10101, 100);
        struct Row {
            double surrogate, v3, v6;
            bool downgraded;
        };
        std::vector<Row> rows(store.size());
        parallel_for(store.size(), jobs, [&](std::size_t i) {
            const auto& j = store[i];
            auto m = MarginalPair::from_joint(j);
            Row r{};
            r.surrogate = oracle::surrogate_optimum(j);
            auto o3 = solver::admui(m, with_parallel(rigorous(1e-3)));
            auto o6 = solver::admui(m, with_parallel(rigorous(1e-6)));
            r.v3 = o3.union_information.nats;
            r.v6 = o6.union_information.nats;
            r.downgraded = o3.rigorous_downgraded || o6.rigorous_downgraded;
            rows[i] = r;
        });
        int ok3 = 0, ok6 = 0, downgrades = 0;
        double worst = 0.0;
        for (const auto& r : rows) {
            if (std::abs(r.v3 - r.surrogate) <= 1e-3) ++ok3;
            if (std::abs(r.v6 - r.surrogate) <= 1e-6) ++ok6;
            worst = std::max(worst, std::abs(r.v6 - r.surrogate) / 1e-6);
            if (r.downgraded) ++downgrades;
            canon << "c2 " << fmt17(r.surrogate) << " " << fmt17(r.v3) << " " << fmt17(r.v6)
                  << "\n";
        }
        std::ostringstream d;
        d << "eps=1e-3: " << ok3 << "/100, eps=1e-6: " << ok6
          << "/100 within eps of the 1e-12 surrogate (worst error/eps " << worst
          << "); rigorous downgrades: " << downgrades;
        checks.push_back(
            {"criterion 2: rigorous-mode certificate", ok3 == 100 && ok6 == 100, d.str()});
    }

    // 3. Solver vs brute-force grid search.
    void criterion3(std::vector<JointDistribution>& store) {
        store = gen_simplex_uniform({2, 2, 2}, 777001, 50);
        auto extra = gen_simplex_uniform({2, 3, 2}, 777002, 20);
        store.insert(store.end(), extra.begin(), extra.end());
        std::vector<double> diffs(store.size());
        parallel_for(store.size(), jobs, [&](std::size_t i) {
            const auto& j = store[i];
            auto out = solver::admui(MarginalPair::from_joint(j), with_parallel(rigorous(1e-6)));
            double grid = oracle::brute_force_union_information(j, 21, 6);
            diffs[i] = std::abs(out.union_information.nats - grid);
        });
        double worst = 0.0;
        int ok = 0;
        for (double d : diffs) {
            if (d <= 1e-4) ++ok;
            worst = std::max(worst, d);
            canon << "c3 " << fmt17(d) << "\n";
        }
        std::ostringstream d;
        d << ok << "/" << store.size() << " instances within 1e-4 nats of the grid oracle "
          << "(worst " << worst << ")";
        checks.push_back({"criterion 3: oracle equivalence", ok == int(store.size()), d.str()});
    }

    // 4. Decomposition identities on every instance of criteria 2-3.
    void criterion4(const std::vector<JointDistribution>& c2_instances,
                    const std::vector<JointDistribution>& c3_instances) {
        std::vector<JointDistribution> all = c2_instances;
        all.insert(all.end(), c3_instances.begin(), c3_instances.end());
        std::vector<double> residual(all.size());
        std::vector<char> clamped_ok(all.size());
        parallel_for(all.size(), jobs, [&](std::size_t i) {
            auto res = decomp::decompose(all[i], with_parallel(rigorous(1e-6)));
            double w = 0.0;
            w = std::max(w, std::abs(res.raw_ui_y + res.raw_ui_z + res.raw_si + res.raw_ci -
                                     res.mi_total.nats));
            w = std::max(w, std::abs(res.raw_si + res.raw_ui_y - res.mi_sy.nats));
            w = std::max(w, std::abs(res.raw_si + res.raw_ui_z - res.mi_sz.nats));
            w = std::max(w, std::abs(res.raw_si - res.raw_ci - res.coi));
            w = std::max(w, std::abs(res.raw_ci + res.raw_ui_y -
                                     conditional_mutual_information(all[i], Var::Z).nats));
            residual[i] = w;
            clamped_ok[i] = res.ui_y.nats >= 0.0 && res.ui_z.nats >= 0.0 &&
                            res.si.nats >= 0.0 && res.ci.nats >= 0.0;
        });
        double worst = 0.0;
        bool clamp_pass = true;
        for (std::size_t i = 0; i < all.size(); ++i) {
            worst = std::max(worst, residual[i]);
            clamp_pass = clamp_pass && clamped_ok[i];
            canon << "c4 " << fmt17(residual[i]) << "\n";
        }
        std::ostringstream d;
        d << "raw identity residuals on " << all.size() << " instances; worst " << worst
          << " (tol 1e-9); clamped components nonnegative: " << (clamp_pass ? "yes" : "no");
        checks.push_back({"criterion 4: identity suite", worst <= 1e-9 && clamp_pass, d.str()});
    }

    // 5. Property suite.
    void criterion5() {
        const double eps = 1e-6;
        bool pass = true;
        std::ostringstream d;

        {  // P2: only the marginal pair matters (50 instances)
            auto joints = gen_simplex_uniform({2, 2, 2}, 888001, 50);
            std::vector<double> discrepancy(joints.size());
            parallel_for(joints.size(), jobs, [&](std::size_t i) {
                auto sibling = fiber_sibling(joints[i], 999000 + i);
                auto r1 = decomp::decompose(joints[i], with_parallel(rigorous(eps)));
                auto r2 = decomp::decompose(sibling, with_parallel(rigorous(eps)));
                discrepancy[i] = std::abs(r1.raw_ui_y - r2.raw_ui_y);
            });
            double worst = 0.0;
            for (double v : discrepancy) {
                worst = std::max(worst, v);
                canon << "c5p2 " << fmt17(v) << "\n";
            }
            if (worst > 2 * eps) pass = false;
            d << "P2 worst " << worst << " (tol 2e-6)";
        }

        {  // P3: additivity on i.i.d. squares (20 instances)
            auto joints = gen_simplex_uniform({2, 2, 2}, 888002, 20);
            std::vector<double> discrepancy(joints.size());
            parallel_for(joints.size(), jobs, [&](std::size_t i) {
                auto r1 = decomp::decompose(joints[i], with_parallel(rigorous(eps)));
                auto r2 =
                    decomp::decompose(tensor_square(joints[i]), with_parallel(rigorous(eps)));
                double w = std::abs(r2.raw_ui_y - 2 * r1.raw_ui_y);
                w = std::max(w, std::abs(r2.raw_ui_z - 2 * r1.raw_ui_z));
                w = std::max(w, std::abs(r2.raw_si - 2 * r1.raw_si));
                w = std::max(w, std::abs(r2.raw_ci - 2 * r1.raw_ci));
                discrepancy[i] = w;
            });
            double worst = 0.0;
            for (double v : discrepancy) {
                worst = std::max(worst, v);
                canon << "c5p3 " << fmt17(v) << "\n";
            }
            if (worst > 5 * eps) pass = false;
            d << "; P3 worst " << worst << " (tol 5e-6)";
        }

        {  // P4: coarse-graining monotonicity, 30 random maps (10 per axis)
            auto joints = gen_simplex_uniform({3, 3, 3}, 888003, 10);
            std::mt19937_64 rng(888004);
            std::vector<std::vector<std::size_t>> maps;
            for (int i = 0; i < 10; ++i)
                maps.push_back({rng() % 2, rng() % 2, rng() % 2});
            std::vector<double> violation(joints.size());
            parallel_for(joints.size(), jobs, [&](std::size_t i) {
                auto cfg = with_parallel(rigorous(eps));
                auto ui = [&](const JointDistribution& j) {
                    return decomp::unique_information(MarginalPair::from_joint(j),
                                                      decomp::Direction::UniqueY, cfg)
                        .nats;
                };
                double base = ui(joints[i]);
                double v = 0.0;
                v = std::max(v, ui(coarse_grain(joints[i], Var::S, maps[i], 2)) - base);
                v = std::max(v, ui(coarse_grain(joints[i], Var::Y, maps[i], 2)) - base);
                v = std::max(v, base - ui(coarse_grain(joints[i], Var::Z, maps[i], 2)));
                violation[i] = v;
            });
            double worst = 0.0;
            for (double v : violation) {
                worst = std::max(worst, v);
                canon << "c5p4 " << fmt17(v) << "\n";
            }
            if (worst > 2 * eps) pass = false;
            d << "; P4 worst violation " << worst << " (tol 2e-6)";
        }

        {  // Markov chains S-Z-Y: no unique information in Y (20 instances)
            std::vector<double> ui(20);
            parallel_for(ui.size(), jobs, [&](std::size_t i) {
                auto j = markov_szy(888100 + i);
                ui[i] = decomp::unique_information(MarginalPair::from_joint(j),
                                                   decomp::Direction::UniqueY,
                                                   with_parallel(rigorous(eps)))
                            .nats;
            });
            double worst = 0.0;
            for (double v : ui) {
                worst = std::max(worst, v);
                canon << "c5mk " << fmt17(v) << "\n";
            }
            if (worst > 2 * eps) pass = false;
            d << "; Markov worst UI " << worst << " (tol 2e-6)";
        }

        checks.push_back({"criterion 5: property suite (P2/P3/P4/Markov)", pass, d.str()});
    }

    // 6. Sublinear rate bound for the scaling iteration.
    void criterion6() {
        std::mt19937_64 rng(606060);
        auto u = [&rng] { return (double(rng() >> 11) + 1.0) * 0x1.0p-53; };
        auto dirichlet3 = [&] {
            std::vector<double> v(3);
            double t = 0.0;
            for (auto& x : v) t += (x = -std::log(u()));
            for (auto& x : v) x /= t;
            return v;
        };
        std::vector<iproj::ProjectionTarget> targets;
        for (int k = 0; k < 20; ++k) targets.push_back({dirichlet3(), dirichlet3()});

        std::vector<std::array<double, 3>> gaps(targets.size());
        parallel_for(targets.size(), jobs, [&](std::size_t k) {
            Grid2 b0(3, 3, 1.0 / 9);
            auto div_from_uniform = [](const Grid2& q) {
                double dd = 0.0;
                for (double v : q.data())
                    if (v > 0.0) dd += v * std::log(v * 9.0);
                return dd;
            };
            Grid2 b = b0;
            for (int n = 0; n < 1000000; ++n) b = iproj::gis_step(b, targets[k], 1.0);
            double dstar = div_from_uniform(normalized(b));
            b = b0;
            std::array<double, 3> g{};
            int slot = 0;
            for (int n = 1; n <= 1000; ++n) {
                b = iproj::gis_step(b, targets[k], 1.0);
                if (n == 10 || n == 100 || n == 1000)
                    g[slot++] = std::abs(div_from_uniform(normalized(b)) - dstar);
            }
            gaps[k] = g;
        });
        int ok = 0;
        double worst_ratio = 0.0;
        const int ns[] = {10, 100, 1000};
        for (std::size_t k = 0; k < gaps.size(); ++k) {
            bool inst_ok = true;
            for (int s = 0; s < 3; ++s) {
                double bound = std::log(9.0) / ns[s];
                worst_ratio = std::max(worst_ratio, gaps[k][s] / bound);
                if (gaps[k][s] > bound) inst_ok = false;
                canon << "c6 " << fmt17(gaps[k][s]) << "\n";
            }
            if (inst_ok) ++ok;
        }
        std::ostringstream d;
        d << ok << "/20 targets satisfy gap <= log(9)/n at n in {10,100,1000} "
          << "(worst gap/bound " << worst_ratio << ")";
        checks.push_back({"criterion 6: scaling-iteration rate bound", ok == 20, d.str()});
    }

    // 7. Proximal acceleration ordering and value agreement.
    void criterion7() {
        const double epses[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
        const double gammas[] = {1.0, 1.0 / std::sqrt(2.0)};
        auto joints = gen_simplex_uniform({2, 2, 2}, 20250809, 250);

        std::vector<std::array<std::size_t, 28>> counts(joints.size());
        std::vector<std::array<double, 2>> ui_at_tightest(joints.size());
        parallel_for(joints.size(), jobs, [&](std::size_t i) {
            auto m = MarginalPair::from_joint(joints[i]);
            double mi_sz = 0.0;
            {
                const auto& t = m.p_sz();
                auto pa = t.row_sums();
                auto pb = t.col_sums();
                for (std::size_t a = 0; a < t.rows(); ++a)
                    for (std::size_t b = 0; b < t.cols(); ++b)
                        if (t(a, b) > 0.0)
                            mi_sz += t(a, b) * std::log(t(a, b) / (pa[a] * pb[b]));
            }
            std::array<std::size_t, 28> c{};
            for (int g = 0; g < 2; ++g)
                for (int e = 0; e < 7; ++e) {
                    auto cfg = with_parallel(SolverConfig::with_epsilon(epses[e]));
                    cfg.gamma = gammas[g];
                    auto out = solver::admui(m, cfg);
                    c[(g * 7 + e) * 2] = out.outer_iterations;
                    c[(g * 7 + e) * 2 + 1] = out.inner_iterations_total;
                    if (e == 6) ui_at_tightest[i][g] = out.union_information.nats - mi_sz;
                }
            counts[i] = c;
        });

        double outer_mean[2][7] = {}, inner_mean[2][7] = {};
        for (std::size_t i = 0; i < joints.size(); ++i)
            for (int g = 0; g < 2; ++g)
                for (int e = 0; e < 7; ++e) {
                    outer_mean[g][e] += double(counts[i][(g * 7 + e) * 2]);
                    inner_mean[g][e] += double(counts[i][(g * 7 + e) * 2 + 1]);
                }
        for (int g = 0; g < 2; ++g)
            for (int e = 0; e < 7; ++e) {
                outer_mean[g][e] /= double(joints.size());
                inner_mean[g][e] /= double(joints.size());
                canon << "c7it g=" << g << " e=" << e << " " << fmt17(outer_mean[g][e]) << " "
                      << fmt17(inner_mean[g][e]) << "\n";
            }
        bool inner_ordered = true;
        for (int e = 0; e < 7; ++e)
            if (!(inner_mean[1][e] < inner_mean[0][e])) inner_ordered = false;
        double worst_ui_diff = 0.0;
        for (std::size_t i = 0; i < joints.size(); ++i) {
            worst_ui_diff =
                std::max(worst_ui_diff, std::abs(ui_at_tightest[i][0] - ui_at_tightest[i][1]));
            canon << "c7 " << fmt17(ui_at_tightest[i][0]) << " " << fmt17(ui_at_tightest[i][1])
                  << "\n";
        }
        bool values_agree = worst_ui_diff <= 1e-6;

        std::ostringstream d;
        d << "mean scaling iterations (gamma=0.707 < gamma=1) per eps:";
        for (int e = 0; e < 7; ++e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %.0f<%.0f", inner_mean[1][e], inner_mean[0][e]);
            d << buf;
        }
        d << "; UI agreement at eps=1e-8 worst " << worst_ui_diff
          << "; outer means (tie by design, informational):";
        for (int e = 0; e < 7; ++e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %.2f~%.2f", outer_mean[1][e], outer_mean[0][e]);
            d << buf;
        }
        checks.push_back({"criterion 7: proximal acceleration (ordering of mean scaling "
                          "iterations and value agreement)",
                          inner_ordered && values_agree, d.str()});
    }

    // 8. Census-style ingestion workflow on the bundled synthetic table.
    void criterion8() {
        auto t0 = std::chrono::steady_clock::now();
        std::string path = std::string(PID_TEST_DATA_DIR) + "/census_synth.csv";
        bool pass = true;
        std::ostringstream d;

        auto run_pipeline = [&](const ingest::DatasetConfig& cfg, const char* tag) {
            auto rep = ingest::load_joint_from_table(path, cfg);
            auto res = decomp::decompose(rep.joint, with_parallel(rigorous(1e-6)));
            double comps[4] = {res.ui_y.nats, res.ui_z.nats, res.si.nats, res.ci.nats};
            double total = comps[0] + comps[1] + comps[2] + comps[3];
            double share_sum = 0.0;
            for (double c : comps) {
                double share = total > 0.0 ? c / total : 0.0;
                if (share < 0.0 || share > 1.0) pass = false;
                share_sum += share;
                canon << "c8 " << tag << " " << fmt17(share) << "\n";
            }
            if (res.mi_total.nats > 1e-12 && std::abs(share_sum - 1.0) > 1e-6) pass = false;
            d << tag << ": " << rep.rows_kept << " rows kept, " << rep.rows_dropped
              << " dropped; ";
        };

        ingest::DatasetConfig cat;
        cat.s_column = ingest::ColumnSpec::categorical("income");
        cat.y_column = ingest::ColumnSpec::categorical("education");
        cat.z_column = ingest::ColumnSpec::categorical("sex");
        run_pipeline(cat, "edu/sex");

        ingest::DatasetConfig binned;
        binned.s_column = ingest::ColumnSpec::categorical("income");
        ingest::BinSpec age;
        age.cuts = {24, 36, 51};
        age.labels = {"<24", "24-35", "36-50", ">50"};
        binned.y_column = ingest::ColumnSpec::binned("age", age);
        ingest::BinSpec hours;
        hours.cuts = {41};
        hours.labels = {"<=40", ">40"};
        binned.z_column = ingest::ColumnSpec::binned("hours_per_week", hours);
        run_pipeline(binned, "age/hours");

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (wall > 10.0) pass = false;
        d << "wall " << wall << " s (cap 10 s)";
        checks.push_back({"criterion 8: census-style ingestion pipeline", pass, d.str()});
    }

    void run() {
        std::vector<JointDistribution> c2_instances, c3_instances;
        criterion1();
        criterion2(c2_instances);
        criterion3(c3_instances);
        criterion4(c2_instances, c3_instances);
        criterion5();
        criterion6();
        criterion7();
        criterion8();
    }
};

}  // namespace

int main() {
    Battery first(1), second(1), threaded(4);
    first.run();
    second.run();
    threaded.run();

    bool all_pass = true;
    for (const auto& c : first.checks) {
        std::printf("[%s] %s — %s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(),
                    c.detail.c_str());
        all_pass = all_pass && c.pass;
    }

    bool reruns_match = first.canon.str() == second.canon.str();
    bool jobs_match = first.canon.str() == threaded.canon.str();
    bool det = reruns_match && jobs_match;
    std::printf("[%s] criterion 9: determinism — consecutive runs byte-identical: %s; "
                "jobs=1 vs jobs=4 byte-identical: %s (%zu canonical bytes)\n",
                det ? "PASS" : "FAIL", reruns_match ? "yes" : "no", jobs_match ? "yes" : "no",
                first.canon.str().size());
    all_pass = all_pass && det;

    std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES");
    return all_pass ? 0 : 1;
}
