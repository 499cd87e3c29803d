// pid: partial information decomposition of finite joint distributions.
//
// Subcommands: decompose, copy, gate, random, project, bench.
// Exit codes: 0 success / eps-optimal, 2 iteration cap reached, 1 error.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pid/decomposition.hpp"
#include "pid/generators.hpp"
#include "pid/info.hpp"
#include "pid/ingest.hpp"
#include "pid/iprojection.hpp"
#include "pid/oracle.hpp"

using json = nlohmann::json;
using namespace pid;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(s);
    while (std::getline(is, field, delim)) out.push_back(field);
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_list(s, ',')) out.push_back(std::stod(tok));
    return out;
}

// "2x3x2" or "2,3,2"
std::array<std::size_t, 3> parse_sizes(const std::string& s) {
    char delim = s.find('x') != std::string::npos ? 'x' : ',';
    auto parts = split_list(s, delim);
    if (parts.size() != 3) throw Error("expected sizes as |S|x|Y|x|Z|, got '" + s + "'");
    return {std::stoul(parts[0]), std::stoul(parts[1]), std::stoul(parts[2])};
}

std::uint64_t resolve_seed(std::uint64_t flag_seed, bool seed_given) {
    if (seed_given) return flag_seed;
    if (const char* env = std::getenv("PID_SEED")) return std::strtoull(env, nullptr, 10);
    return 12345;
}

// Solver knobs shared by decompose and bench.
struct SolverFlags {
    double eps = 1e-6;
    double eps_inner = 0.0;  // 0 = derive as 1e-2 * eps
    double gamma = 1.0;
    std::string stop = "heuristic";
    std::size_t check_every = 1;
    std::size_t max_iter = 100000;
    bool parallel = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps", eps, "outer accuracy in nats (default 1e-6)");
        cmd->add_option("--eps-inner", eps_inner,
                        "inner accuracy for the distance stop (default eps*1e-2)");
        cmd->add_option("--gamma", gamma, "scaling exponent damping in (0,1], default 1");
        cmd->add_option("--stop", stop, "stopping rule: heuristic | rigorous")
            ->check(CLI::IsMember({"heuristic", "rigorous"}));
        cmd->add_option("--check-every", check_every, "stopping-check cadence (default 1)");
        cmd->add_option("--max-iter", max_iter, "outer iteration cap (default 1e5)");
        cmd->add_flag("--parallel,!--no-parallel", parallel,
                      "run per-s projections on threads");
    }

    solver::SolverConfig config() const {
        solver::SolverConfig cfg;
        cfg.epsilon = eps;
        cfg.epsilon1 = eps_inner > 0.0 ? eps_inner : 1e-2 * eps;
        cfg.gamma = gamma;
        cfg.stop_mode =
            stop == "rigorous" ? solver::StopMode::Rigorous : solver::StopMode::Heuristic;
        cfg.check_cadence = check_every;
        cfg.max_outer_iter = max_iter;
        cfg.parallel_step1 = parallel;
        cfg.validate();
        return cfg;
    }
};

// CSV ingestion flags for one column.
struct ColumnFlags {
    std::string name;
    std::string bins;    // comma list of cuts; empty = categorical
    std::string labels;  // optional comma list, cuts+1 entries

    ingest::ColumnSpec spec() const {
        if (bins.empty()) return ingest::ColumnSpec::categorical(name);
        auto cuts = parse_double_list(bins);
        if (labels.empty())
            return ingest::ColumnSpec::binned(name, ingest::BinSpec::with_default_labels(cuts));
        ingest::BinSpec b;
        b.cuts = cuts;
        b.labels = split_list(labels, ',');
        b.validate();
        return ingest::ColumnSpec::binned(name, b);
    }
};

struct RunReport {
    std::string command;
    std::string input;
    std::size_t ns = 0, ny = 0, nz = 0;
    solver::SolverConfig cfg;
    bool bits = true;
    decomp::DecompositionResult res;
    std::size_t rows_dropped = 0, rows_kept = 0;
    bool from_csv = false;

    double unit(double nats_value) const {
        return bits ? nats_value / std::numbers::ln2 : nats_value;
    }

    // Normalized shares: clamped components scaled to sum to 1. Omitted when
    // the total mutual information is numerically zero.
    bool shares_defined() const { return res.mi_total.nats > 1e-12; }
    std::array<double, 4> shares() const {
        double c[4] = {res.ui_y.nats, res.ui_z.nats, res.si.nats, res.ci.nats};
        double total = c[0] + c[1] + c[2] + c[3];
        std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
        if (total > 0.0)
            for (int i = 0; i < 4; ++i) out[i] = c[i] / total;
        return out;
    }

    std::string status_str() const {
        return res.solve.status == solver::SolveStatus::EpsOptimal ? "eps-optimal"
                                                                   : "cap-reached";
    }
    std::string stop_str() const {
        std::string s = res.solve.stop_mode_used == solver::StopMode::Rigorous ? "rigorous"
                                                                               : "heuristic";
        if (res.solve.rigorous_downgraded) s += "(downgraded)";
        return s;
    }
};

void print_human(const RunReport& r, std::ostream& out) {
    const char* u = r.bits ? "bits" : "nats";
    out << "input:              " << r.input << "  (|S|=" << r.ns << " |Y|=" << r.ny
        << " |Z|=" << r.nz << ")\n";
    if (r.from_csv)
        out << "rows:               " << r.rows_kept << " kept, " << r.rows_dropped
            << " dropped\n";
    out << "solver:             eps=" << r.cfg.epsilon << " eps_inner=" << r.cfg.epsilon1
        << " gamma=" << r.cfg.gamma << " stop=" << r.stop_str() << "\n";
    out << "status:             " << r.status_str() << " (" << r.res.solve.outer_iterations
        << " outer, " << r.res.solve.inner_iterations_total << " inner iterations, "
        << fmt_short(r.res.solve.wall_seconds * 1e3) << " ms)\n";
    auto sh = r.shares();
    bool with_shares = r.shares_defined();
    auto line = [&](const char* label, double nats_value, int share_idx) {
        out << label << fmt_short(r.unit(nats_value)) << " " << u;
        if (with_shares && share_idx >= 0) out << "   share " << fmt_short(sh[share_idx]);
        out << "\n";
    };
    line("mi_total  I(S;Y,Z): ", r.res.mi_total.nats, -1);
    line("union_information:  ", r.res.union_info.nats, -1);
    line("ui_y  UI(S;Y\\Z):    ", r.res.ui_y.nats, 0);
    line("ui_z  UI(S;Z\\Y):    ", r.res.ui_z.nats, 1);
    line("si    shared:       ", r.res.si.nats, 2);
    line("ci    synergistic:  ", r.res.ci.nats, 3);
    line("mi_sy I(S;Y):       ", r.res.mi_sy.nats, -1);
    line("mi_sz I(S;Z):       ", r.res.mi_sz.nats, -1);
    out << "coi   CoI(S;Y;Z):   " << fmt_short(r.unit(r.res.coi)) << " " << u << "\n";
}

void print_tsv(const RunReport& r, std::ostream& out) {
    auto sh = r.shares();
    out << "input\tns\tny\tnz\tunit\teps\teps_inner\tgamma\tstop\tstatus\touter_iters\t"
           "inner_iters\tmi_total\tunion_info\tui_y\tui_z\tsi\tci\tmi_sy\tmi_sz\tcoi\t"
           "share_ui_y\tshare_ui_z\tshare_si\tshare_ci\twall_ms\n";
    out << r.input << '\t' << r.ns << '\t' << r.ny << '\t' << r.nz << '\t'
        << (r.bits ? "bits" : "nats") << '\t' << fmt17(r.cfg.epsilon) << '\t'
        << fmt17(r.cfg.epsilon1) << '\t' << fmt17(r.cfg.gamma) << '\t' << r.stop_str() << '\t'
        << r.status_str() << '\t' << r.res.solve.outer_iterations << '\t'
        << r.res.solve.inner_iterations_total << '\t' << fmt17(r.unit(r.res.mi_total.nats))
        << '\t' << fmt17(r.unit(r.res.union_info.nats)) << '\t'
        << fmt17(r.unit(r.res.ui_y.nats)) << '\t' << fmt17(r.unit(r.res.ui_z.nats)) << '\t'
        << fmt17(r.unit(r.res.si.nats)) << '\t' << fmt17(r.unit(r.res.ci.nats)) << '\t'
        << fmt17(r.unit(r.res.mi_sy.nats)) << '\t' << fmt17(r.unit(r.res.mi_sz.nats)) << '\t'
        << fmt17(r.unit(r.res.coi)) << '\t';
    if (r.shares_defined())
        out << fmt17(sh[0]) << '\t' << fmt17(sh[1]) << '\t' << fmt17(sh[2]) << '\t'
            << fmt17(sh[3]);
    else
        out << "\t\t\t";
    out << '\t' << fmt_short(r.res.solve.wall_seconds * 1e3) << "\n";
}

void print_json(const RunReport& r, std::ostream& out) {
    json o;
    o["command"] = r.command;
    o["input"] = r.input;
    o["sizes"] = {r.ns, r.ny, r.nz};
    o["unit"] = r.bits ? "bits" : "nats";
    o["eps"] = r.cfg.epsilon;
    o["eps_inner"] = r.cfg.epsilon1;
    o["gamma"] = r.cfg.gamma;
    o["stop"] = r.stop_str();
    o["status"] = r.status_str();
    o["outer_iters"] = r.res.solve.outer_iterations;
    o["inner_iters"] = r.res.solve.inner_iterations_total;
    o["wall_ms"] = r.res.solve.wall_seconds * 1e3;
    o["mi_total"] = r.unit(r.res.mi_total.nats);
    o["union_info"] = r.unit(r.res.union_info.nats);
    o["ui_y"] = r.unit(r.res.ui_y.nats);
    o["ui_z"] = r.unit(r.res.ui_z.nats);
    o["si"] = r.unit(r.res.si.nats);
    o["ci"] = r.unit(r.res.ci.nats);
    o["mi_sy"] = r.unit(r.res.mi_sy.nats);
    o["mi_sz"] = r.unit(r.res.mi_sz.nats);
    o["coi"] = r.unit(r.res.coi);
    if (r.shares_defined()) {
        auto sh = r.shares();
        o["shares"] = {{"ui_y", sh[0]}, {"ui_z", sh[1]}, {"si", sh[2]}, {"ci", sh[3]}};
    }
    if (r.from_csv) {
        o["rows_kept"] = r.rows_kept;
        o["rows_dropped"] = r.rows_dropped;
    }
    out << o.dump() << "\n";
}

void emit_joint(const JointDistribution& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        ingest::write_joint(j, std::cout);
    } else {
        ingest::save_joint(j, out_path);
        std::cout << out_path << "\n";
    }
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(const std::string& joint_file, const std::string& csv_file,
                  const ColumnFlags& s_col, const ColumnFlags& y_col, const ColumnFlags& z_col,
                  const std::string& delim, bool no_header, double alpha, const SolverFlags& sf,
                  bool tsv, bool json_lines, bool nats) {
    RunReport report;
    report.command = "decompose";
    report.cfg = sf.config();
    report.bits = !nats;

    JointDistribution joint;
    if (!joint_file.empty()) {
        joint = ingest::load_joint(joint_file);
        report.input = joint_file;
    } else {
        ingest::DatasetConfig dcfg;
        dcfg.s_column = s_col.spec();
        dcfg.y_column = y_col.spec();
        dcfg.z_column = z_col.spec();
        if (!delim.empty()) dcfg.delimiter = delim[0];
        dcfg.header = !no_header;
        dcfg.alpha = alpha;
        auto rep = ingest::load_joint_from_table(csv_file, dcfg);
        joint = rep.joint;
        report.input = csv_file;
        report.from_csv = true;
        report.rows_kept = rep.rows_kept;
        report.rows_dropped = rep.rows_dropped;
    }
    report.ns = joint.ns();
    report.ny = joint.ny();
    report.nz = joint.nz();

    report.res = decomp::decompose(joint, report.cfg);

    if (json_lines)
        print_json(report, std::cout);
    else if (tsv)
        print_tsv(report, std::cout);
    else
        print_human(report, std::cout);
    return report.res.solve.status == solver::SolveStatus::EpsOptimal ? 0 : 2;
}

// ------------------------------------------------------------------- bench

struct BenchTask {
    std::string instance;
    std::string size;
    const JointDistribution* joint;
    double gamma;
    std::string stop;
    double eps;
};

int cmd_bench(const std::string& sizes_list, const std::string& copy_list, std::size_t count,
              std::uint64_t seed, const std::string& eps_list, const std::string& gamma_list,
              const std::string& stop, std::size_t check_every, std::size_t jobs,
              bool no_timing, bool with_oracle) {
    std::vector<std::pair<std::string, std::vector<JointDistribution>>> instance_groups;
    if (!copy_list.empty()) {
        for (const auto& tok : split_list(copy_list, ',')) {
            std::size_t k = std::stoul(tok);
            instance_groups.emplace_back("copy" + tok,
                                         std::vector<JointDistribution>{gen_copy(k)});
        }
    } else {
        for (const auto& tok : split_list(sizes_list, ',')) {
            auto sizes = parse_sizes(tok);
            instance_groups.emplace_back(tok, gen_simplex_uniform(sizes, seed, count));
        }
    }

    std::vector<double> epses = parse_double_list(eps_list);
    std::vector<double> gammas = parse_double_list(gamma_list);

    std::vector<BenchTask> tasks;
    for (auto& [size_label, joints] : instance_groups)
        for (double gamma : gammas)
            for (double eps : epses)
                for (std::size_t i = 0; i < joints.size(); ++i)
                    tasks.push_back({size_label + "#" + std::to_string(i), size_label,
                                     &joints[i], gamma, stop, eps});

    if (with_oracle)
        for (auto& t : tasks)
            if (oracle::chart_delta_p(*t.joint).dimension() > 4)
                throw Error("--oracle requires chart dimension <= 4; size " + t.size +
                            " is too large");

    std::vector<std::string> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const BenchTask& t = tasks[i];
            solver::SolverConfig cfg;
            cfg.epsilon = t.eps;
            cfg.epsilon1 = 1e-2 * t.eps;
            cfg.gamma = t.gamma;
            cfg.check_cadence = check_every;
            cfg.stop_mode = t.stop == "rigorous" ? solver::StopMode::Rigorous
                                                 : solver::StopMode::Heuristic;
            auto m = MarginalPair::from_joint(*t.joint);
            auto out = solver::admui(m, cfg);
            double ui_bits =
                (out.union_information.nats - mutual_information(*t.joint, VarPair::SZ).nats) /
                std::numbers::ln2;
            std::ostringstream row;
            row << t.instance << '\t' << t.size << '\t' << fmt17(t.gamma) << '\t' << t.stop
                << '\t' << fmt17(t.eps) << '\t' << fmt17(ui_bits) << '\t'
                << out.outer_iterations << '\t' << out.inner_iterations_total << '\t'
                << (no_timing ? "0" : fmt_short(out.wall_seconds * 1e3));
            if (with_oracle) {
                double oracle_bits = (oracle::brute_force_union_information(*t.joint) -
                                      mutual_information(*t.joint, VarPair::SZ).nats) /
                                     std::numbers::ln2;
                row << '\t' << fmt17(oracle_bits);
            }
            rows[i] = row.str();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < std::max<std::size_t>(jobs, 1); ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::cout << "instance\tsize\tgamma\tstop_mode\teps\tui_bits\touter_iters\tinner_iters"
                 "\twall_ms";
    if (with_oracle) std::cout << "\toracle_ui_bits";
    std::cout << "\n";
    for (const auto& r : rows) std::cout << r << "\n";

    // mean summary per (size, gamma, stop, eps), in first-appearance order
    struct Acc {
        double ui = 0, outer = 0, inner = 0, wall = 0;
        std::size_t n = 0;
    };
    std::vector<std::pair<std::string, Acc>> acc;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const BenchTask& t = tasks[i];
        std::string key = t.size + "\t" + fmt17(t.gamma) + "\t" + t.stop + "\t" + fmt17(t.eps);
        auto fields = split_list(rows[i], '\t');
        Acc* slot = nullptr;
        for (auto& [k, a] : acc)
            if (k == key) slot = &a;
        if (!slot) {
            acc.emplace_back(key, Acc{});
            slot = &acc.back().second;
        }
        slot->ui += std::stod(fields[5]);
        slot->outer += std::stod(fields[6]);
        slot->inner += std::stod(fields[7]);
        slot->wall += std::stod(fields[8]);
        slot->n += 1;
    }
    for (const auto& [key, a] : acc) {
        double n = double(a.n);
        std::cout << "mean\t" << key << '\t' << fmt17(a.ui / n) << '\t' << fmt17(a.outer / n)
                  << '\t' << fmt17(a.inner / n) << '\t'
                  << (no_timing ? "0" : fmt_short(a.wall / n)) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ project

int cmd_project(const std::string& joint_file, const std::string& s_label,
                const std::string& ref, double gamma, double eps_inner, std::size_t max_iter) {
    auto joint = ingest::load_joint(joint_file);
    long s = joint.alphabet_s().index_of(s_label);
    if (s < 0) throw Error("unknown S label '" + s_label + "'");
    ConditionalTable cond = conditional_yz(joint, static_cast<std::size_t>(s));
    iproj::ProjectionTarget target{cond.probs.row_sums(), cond.probs.col_sums()};

    Grid2 r = ref == "yz"
                  ? marginal(joint, VarPair::YZ)
                  : Grid2(joint.ny(), joint.nz(), 1.0 / double(joint.ny() * joint.nz()));
    auto res =
        iproj::i_project(r, target, gamma, iproj::InnerStopSpec::distance(eps_inner), max_iter);
    std::cout << "y\tz\tq\n";
    for (std::size_t y = 0; y < joint.ny(); ++y)
        for (std::size_t z = 0; z < joint.nz(); ++z)
            std::cout << joint.alphabet_y().label(y) << '\t' << joint.alphabet_z().label(z)
                      << '\t' << fmt17(res.q(y, z)) << "\n";
    std::cerr << "iterations=" << res.iterations << " final_sq_step="
              << fmt17(res.final_sq_step) << " eta_gap=" << fmt17(res.final_eta_gap)
              << " status="
              << (res.status == iproj::ProjectionStatus::Converged ? "converged" : "cap-reached")
              << "\n";
    return res.status == iproj::ProjectionStatus::Converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial information decomposition via alternating divergence minimization"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "decompose a joint distribution");
    std::string joint_file, csv_file, delim;
    ColumnFlags s_col, y_col, z_col;
    bool no_header = false, tsv = false, json_lines = false, nats = false, bits = false;
    SolverFlags sf;
    dec->add_option("--joint", joint_file, "pid-joint v1 file");
    dec->add_option("--csv", csv_file, "delimited table with one row per observation");
    dec->add_option("--s", s_col.name, "S column (response)");
    dec->add_option("--y", y_col.name, "Y column");
    dec->add_option("--z", z_col.name, "Z column");
    dec->add_option("--s-bins", s_col.bins, "numeric cut points for S");
    dec->add_option("--y-bins", y_col.bins, "numeric cut points for Y");
    dec->add_option("--z-bins", z_col.bins, "numeric cut points for Z");
    dec->add_option("--s-bin-labels", s_col.labels, "labels for the S bins");
    dec->add_option("--y-bin-labels", y_col.labels, "labels for the Y bins");
    dec->add_option("--z-bin-labels", z_col.labels, "labels for the Z bins");
    dec->add_option("--delim", delim, "field delimiter (default ,)");
    double alpha = 0.0;
    dec->add_option("--alpha", alpha, "additive smoothing per cell (default 0)");
    dec->add_flag("--no-header", no_header, "columns are 0-based indices");
    dec->add_flag("--tsv", tsv, "tab-separated output");
    dec->add_flag("--json-lines", json_lines, "one JSON object per line");
    dec->add_flag("--nats", nats, "report in nats");
    dec->add_flag("--bits", bits, "report in bits (default)");
    sf.attach(dec);

    // copy / gate / random
    auto* copy = app.add_subcommand("copy", "write a COPY distribution");
    std::size_t copy_k = 2;
    std::string out_path;
    copy->add_option("--k", copy_k, "alphabet size per input (default 2)");
    copy->add_option("--out", out_path, "output file (default stdout)");

    auto* gate = app.add_subcommand("gate", "write a binary-gate distribution");
    std::string gate_name = "xor";
    std::string gate_out;
    gate->add_option("--name", gate_name, "xor | and")->check(CLI::IsMember({"xor", "and"}));
    gate->add_option("--out", gate_out, "output file (default stdout)");

    auto* rnd = app.add_subcommand("random", "sample joints uniformly from the simplex");
    std::string rnd_sizes = "2x2x2", out_prefix = "joint";
    std::size_t rnd_count = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    rnd->add_option("--sizes", rnd_sizes, "|S|x|Y|x|Z| (default 2x2x2)");
    rnd->add_option("--count", rnd_count, "number of samples (default 1)");
    rnd->add_option("--seed", seed, "RNG seed (falls back to PID_SEED, then 12345)")
        ->trigger_on_parse()
        ->each([&seed_given](const std::string&) { seed_given = true; });
    rnd->add_option("--out-prefix", out_prefix, "files <prefix>_NNN.pid");

    // project
    auto* proj = app.add_subcommand(
        "project", "I-projection of a reference onto the fixed-marginal family of one S symbol");
    std::string proj_joint, proj_s, proj_ref = "uniform";
    double proj_gamma = 1.0, proj_eps = 1e-8;
    std::size_t proj_max = 100000;
    proj->add_option("--joint", proj_joint, "pid-joint v1 file")->required();
    proj->add_option("--s", proj_s, "S symbol label")->required();
    proj->add_option("--ref", proj_ref, "reference: uniform | yz")
        ->check(CLI::IsMember({"uniform", "yz"}));
    proj->add_option("--gamma", proj_gamma, "scaling exponent damping");
    proj->add_option("--eps-inner", proj_eps, "distance stop threshold");
    proj->add_option("--max-iter", proj_max, "iteration cap");

    // bench
    auto* bench = app.add_subcommand("bench", "seeded benchmark sweep, TSV output");
    std::string bench_sizes = "2x2x2", bench_copy, bench_eps = "1e-6", bench_gammas = "1";
    std::string bench_stop = "heuristic";
    std::size_t bench_count = 10, bench_jobs = 1;
    std::uint64_t bench_seed = 0;
    bool bench_seed_given = false, no_timing = false, bench_oracle = false;
    bench->add_option("--sizes", bench_sizes, "comma list of |S|x|Y|x|Z|");
    bench->add_option("--copy", bench_copy, "comma list of COPY k values (overrides --sizes)");
    bench->add_option("--count", bench_count, "instances per size (default 10)");
    bench->add_option("--seed", bench_seed, "RNG seed (falls back to PID_SEED, then 12345)")
        ->trigger_on_parse()
        ->each([&bench_seed_given](const std::string&) { bench_seed_given = true; });
    bench->add_option("--eps-list", bench_eps, "comma list of accuracies (default 1e-6)");
    bench->add_option("--gamma-list", bench_gammas, "comma list of gamma values (default 1)");
    bench->add_option("--stop", bench_stop, "heuristic | rigorous")
        ->check(CLI::IsMember({"heuristic", "rigorous"}));
    std::size_t bench_check_every = 20;
    bench->add_option("--check-every", bench_check_every,
                      "stopping-check cadence (default 20 in bench mode)");
    bench->add_option("--jobs", bench_jobs, "concurrent instances (default 1)");
    bench->add_flag("--no-timing", no_timing, "write wall_ms as 0 for reproducible bytes");
    bench->add_flag("--oracle", bench_oracle, "append grid-search reference values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) {
            if (joint_file.empty() == csv_file.empty())
                throw Error("decompose needs exactly one of --joint or --csv");
            if (!csv_file.empty() &&
                (s_col.name.empty() || y_col.name.empty() || z_col.name.empty()))
                throw Error("--csv needs --s, --y and --z column names");
            return cmd_decompose(joint_file, csv_file, s_col, y_col, z_col, delim,
                                 no_header, alpha, sf, tsv, json_lines, nats && !bits);
        }
        if (copy->parsed()) {
            emit_joint(gen_copy(copy_k), out_path);
            return 0;
        }
        if (gate->parsed()) {
            emit_joint(gen_binary_gate(gate_name == "xor" ? Gate::Xor : Gate::And), gate_out);
            return 0;
        }
        if (rnd->parsed()) {
            auto sizes = parse_sizes(rnd_sizes);
            auto joints = gen_simplex_uniform(sizes, resolve_seed(seed, seed_given), rnd_count);
            for (std::size_t i = 0; i < joints.size(); ++i) {
                char name[512];
                std::snprintf(name, sizeof name, "%s_%03zu.pid", out_prefix.c_str(), i);
                ingest::save_joint(joints[i], name);
                std::cout << name << "\n";
            }
            return 0;
        }
        if (proj->parsed())
            return cmd_project(proj_joint, proj_s, proj_ref, proj_gamma, proj_eps, proj_max);
        if (bench->parsed())
            return cmd_bench(bench_sizes, bench_copy, bench_count,
                             resolve_seed(bench_seed, bench_seed_given), bench_eps,
                             bench_gammas, bench_stop, bench_check_every, bench_jobs,
                             no_timing, bench_oracle);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
