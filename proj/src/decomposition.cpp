#include "pid/decomposition.hpp"

#include <cmath>

namespace pid::decomp {

namespace {

double clamp_component(double nats) {
    return (nats < 0.0 && nats >= -1e-6) ? 0.0 : nats;
}

double pair_mi(const Grid2& table) {
    auto pa = table.row_sums();
    auto pb = table.col_sums();
    double mi = 0.0;
    for (std::size_t a = 0; a < table.rows(); ++a)
        for (std::size_t b = 0; b < table.cols(); ++b) {
            double v = table(a, b);
            if (v > 0.0) mi += v * std::log(v / (pa[a] * pb[b]));
        }
    return mi;
}

}  // namespace

DecompositionResult decompose(const JointDistribution& p, const solver::SolverConfig& config) {
    DecompositionResult out;
    MarginalPair marginals = MarginalPair::from_joint(p);
    out.solve = solver::admui(marginals, config);

    out.union_info = out.solve.union_information;
    out.mi_total = mutual_information_total(p);
    out.mi_sy = mutual_information(p, VarPair::SY);
    out.mi_sz = mutual_information(p, VarPair::SZ);
    out.coi = co_information(p);

    // All four components follow from one solve: the pairwise mutual
    // informations are constant on the feasible set, so
    //   UI(S;Y\Z) = union - I(S;Z),  UI(S;Z\Y) = union - I(S;Y),
    //   SI = I(S;Y) - UI(S;Y\Z),     CI = I(S;Y,Z) - union.
    double u = out.union_info.nats;
    out.raw_ui_y = u - out.mi_sz.nats;
    out.raw_ui_z = u - out.mi_sy.nats;
    out.raw_si = out.mi_sy.nats - out.raw_ui_y;
    out.raw_ci = out.mi_total.nats - u;

    out.ui_y = {clamp_component(out.raw_ui_y)};
    out.ui_z = {clamp_component(out.raw_ui_z)};
    out.si = {clamp_component(out.raw_si)};
    out.ci = {clamp_component(out.raw_ci)};
    return out;
}

InfoValue unique_information(const MarginalPair& marginals, Direction direction,
                             const solver::SolverConfig& config) {
    solver::SolveOutcome solve = solver::admui(marginals, config);
    double fixed_mi = direction == Direction::UniqueY ? pair_mi(marginals.p_sz())
                                                      : pair_mi(marginals.p_sy());
    return {clamp_component(solve.union_information.nats - fixed_mi)};
}

}  // namespace pid::decomp
