#include "dnls/evolution.hpp"

namespace dnls {

cplx theta(double x, double t, cplx lambda)
{
    if (t == 0.0)
        throw ValidationError("theta: t must be nonzero");
    return -((x / t) * lambda + 2.0 * lambda * lambda);
}

ScatteringData evolve(const ScatteringData& d, double t)
{
    std::vector<cplx> rho = d.rho_samples();
    for (std::size_t j = 0; j < rho.size(); ++j) {
        double l = d.node(j);
        rho[j] *= std::polar(1.0, -4.0 * l * l * t);
    }
    std::vector<DiscretePair> disc = d.discrete();
    for (auto& p : disc) {
        // the residue condition carries C e^{-2it theta}, i.e. C e^{+4i lambda^2 t}
        cplx e = 4.0 * I * p.lambda * p.lambda * t;
        p.log_scale += e.real();
        p.mant *= std::polar(1.0, e.imag());
    }
    return ScatteringData(d.eps(), d.lo(), d.hi(), std::move(rho), std::move(disc), d.t_stamp() + t);
}

} // namespace dnls
