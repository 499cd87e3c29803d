#include "pid/iprojection.hpp"

#include <cmath>
#include <stdexcept>

#include "pid/errors.hpp"

namespace pid::iproj {

Grid2 gis_step(const Grid2& b, const ProjectionTarget& target, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1]");
    const auto& ty = target.row_marginal;
    const auto& tz = target.col_marginal;
    if (b.rows() != ty.size() || b.cols() != tz.size())
        throw DimensionMismatch("iterate shape does not match target marginals");

    auto rs = b.row_sums();
    auto cs = b.col_sums();
    for (std::size_t y = 0; y < ty.size(); ++y)
        if (ty[y] > 0.0 && rs[y] <= 0.0)
            throw DegenerateIterate("row sum underflowed to 0 with positive target marginal");
    for (std::size_t z = 0; z < tz.size(); ++z)
        if (tz[z] > 0.0 && cs[z] <= 0.0)
            throw DegenerateIterate("column sum underflowed to 0 with positive target marginal");

    const double expo = 1.0 / (2.0 * gamma);
    Grid2 out(b.rows(), b.cols());
    for (std::size_t y = 0; y < b.rows(); ++y) {
        if (ty[y] <= 0.0) continue;  // row forced to exact 0
        double row_factor = std::pow(ty[y] / rs[y], expo);
        for (std::size_t z = 0; z < b.cols(); ++z) {
            if (tz[z] <= 0.0) continue;
            double v = b(y, z);
            if (v <= 0.0) continue;
            out(y, z) = v * row_factor * std::pow(tz[z] / cs[z], expo);
        }
    }
    return out;
}

double expectation_gap(const Grid2& b, const ProjectionTarget& target) {
    auto rs = b.row_sums();
    auto cs = b.col_sums();
    double gap = 0.0;
    for (std::size_t y = 1; y < rs.size(); ++y) gap += std::abs(rs[y] - target.row_marginal[y]);
    for (std::size_t z = 1; z < cs.size(); ++z) gap += std::abs(cs[z] - target.col_marginal[z]);
    return gap;
}

namespace {

double min_positive(const Grid2& g) {
    double m = 0.0;
    bool found = false;
    for (double v : g.data()) {
        if (v > 0.0 && (!found || v < m)) {
            m = v;
            found = true;
        }
    }
    return found ? m : 0.0;
}

}  // namespace

ProjectionResult i_project(const Grid2& r, const ProjectionTarget& target, double gamma,
                           const InnerStopSpec& stop, std::size_t max_iter) {
    // Restrict to the product of the target supports up front; forced-zero
    // cells never participate in the iteration.
    Grid2 b = r;
    for (std::size_t y = 0; y < b.rows(); ++y)
        for (std::size_t z = 0; z < b.cols(); ++z)
            if (target.row_marginal[y] <= 0.0 || target.col_marginal[z] <= 0.0) b(y, z) = 0.0;
    if (b.sum() <= 0.0)
        throw DegenerateIterate("reference has no mass on the product of target supports");

    ProjectionResult result;
    Grid2 q_prev = normalized(b);
    for (std::size_t n = 0; n < max_iter; ++n) {
        b = gis_step(b, target, gamma);
        ++result.iterations;
        Grid2 q = normalized(b);
        result.final_sq_step = sq_distance(q, q_prev);
        bool done = false;
        switch (stop.mode) {
            case InnerStopSpec::Mode::Distance:
                done = result.final_sq_step <= stop.eps1 * stop.eps1;
                break;
            case InnerStopSpec::Mode::EtaGap:
                done = expectation_gap(q, target) <= min_positive(q) * stop.gap_factor;
                break;
        }
        if (done) {
            result.q = std::move(q);
            result.final_eta_gap = expectation_gap(result.q, target);
            result.status = ProjectionStatus::Converged;
            return result;
        }
        q_prev = std::move(q);
    }
    result.q = std::move(q_prev);
    result.final_eta_gap = expectation_gap(result.q, target);
    result.status = ProjectionStatus::IterationCapReached;
    return result;
}

}  // namespace pid::iproj
