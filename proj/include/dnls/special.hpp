#pragma once

#include "dnls/types.hpp"

namespace dnls {

// Principal branch of log Gamma (cut along the negative real axis).
cplx log_gamma(cplx z);
// 1/Gamma(z); zero at the poles.
cplx rgamma(cplx z);

enum class PcfRegime { series, asymptotic };

struct PcfValue {
    cplx nu, z, value;
    PcfRegime regime;
};

inline constexpr double pcf_switch = 8.0;

// Parabolic cylinder function D_nu(z) for |arg z| < 3pi/4.
PcfValue pcf(cplx nu, cplx z);
inline cplx pcf_D(cplx nu, cplx z) { return pcf(nu, z).value; }

// Regime-forced evaluations, exposed for overlap checks.
cplx pcf_D_series(cplx nu, cplx z);
cplx pcf_D_asymptotic(cplx nu, cplx z);

} // namespace dnls
