#include "geoflow/inertia.hpp"

#include "geoflow/error.hpp"
#include "geoflow/lie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geoflow {

MetricParams::MetricParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw Error(ErrorCode::InvalidArgument, "metric parameters must be finite and non-negative");
    if (alpha == 0.0 && beta == 0.0) throw Error(ErrorCode::InvalidArgument, "metric parameters cannot both be zero");
}

GridField apply_inertia(const MetricParams& params, const GridField& u) {
    const PeriodicGrid& g = u.grid();
    return apply_multiplier(u, [&](int k) { return std::complex<double>(params.symbol(g.angular(k))); });
}

GridField invert_inertia(const MetricParams& params, const GridField& m) {
    const PeriodicGrid& g = m.grid();
    if (params.degenerate()) {
        const double avg = mean(m);
        if (std::abs(avg) > 1e-10 * std::max(1.0, m.max_abs())) {
            std::ostringstream msg;
            msg << "inertia with alpha = 0 is only invertible on zero-mean momenta; mean is " << avg;
            throw Error(ErrorCode::Solvability, msg.str());
        }
    }
    return apply_multiplier(m, [&](int k) {
        const double s = params.symbol(g.angular(k));
        return std::complex<double>(k == 0 && params.degenerate() ? 0.0 : 1.0 / s);
    });
}

double kinetic_energy(const MetricParams& params, const GridField& u) {
    return 0.5 * pairing(apply_inertia(params, u), u);
}

}  // namespace geoflow
