#include "pid/info.hpp"

#include <cmath>
#include <limits>

namespace pid {

InfoValue entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return {h};
}

InfoValue kl_divergence(std::span<const double> p, std::span<const double> q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return {std::numeric_limits<double>::infinity()};
        d += p[i] * std::log(p[i] / q[i]);
    }
    return {d};
}

InfoValue mutual_information(const JointDistribution& j, VarPair pair) {
    Grid2 ab = marginal(j, pair);
    auto pa = ab.row_sums();
    auto pb = ab.col_sums();
    double mi = 0.0;
    for (std::size_t a = 0; a < ab.rows(); ++a)
        for (std::size_t b = 0; b < ab.cols(); ++b) {
            double v = ab(a, b);
            if (v > 0.0) mi += v * std::log(v / (pa[a] * pb[b]));
        }
    return {mi};
}

InfoValue mutual_information_total(const JointDistribution& j) {
    auto ps = marginal(j, Var::S);
    Grid2 pyz = marginal(j, VarPair::YZ);
    double mi = 0.0;
    for (std::size_t s = 0; s < j.ns(); ++s)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) {
                double v = j.at(s, y, z);
                if (v > 0.0) mi += v * std::log(v / (ps[s] * pyz(y, z)));
            }
    return {mi};
}

InfoValue conditional_mutual_information(const JointDistribution& j, Var given) {
    // I(S;Y|Z) = Σ q(s,y,z) log[ q(s,y,z) q(z) / (q(s,z) q(y,z)) ], and the
    // symmetric expression when conditioning on Y.
    if (given == Var::S) throw DimensionMismatch("conditioning variable must be Y or Z");
    bool on_z = given == Var::Z;
    auto pc = marginal(j, on_z ? Var::Z : Var::Y);
    Grid2 p_sc = marginal(j, on_z ? VarPair::SZ : VarPair::SY);
    Grid2 p_oc = marginal(j, VarPair::YZ);  // rows Y, cols Z either way
    double cmi = 0.0;
    for (std::size_t s = 0; s < j.ns(); ++s)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) {
                double v = j.at(s, y, z);
                if (v <= 0.0) continue;
                std::size_t c = on_z ? z : y;
                double joint_oc = p_oc(y, z);
                cmi += v * std::log(v * pc[c] / (p_sc(s, c) * joint_oc));
            }
    return {cmi};
}

double co_information(const JointDistribution& j) {
    return mutual_information(j, VarPair::SY).nats -
           conditional_mutual_information(j, Var::Z).nats;
}

}  // namespace pid
