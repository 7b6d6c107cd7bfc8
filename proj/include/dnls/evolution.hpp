#pragma once

#include "dnls/field.hpp"

namespace dnls {

// theta = -((x/t) lambda + 2 lambda^2); t = 0 is a domain error.
cplx theta(double x, double t, cplx lambda);
// t * theta, which stays defined at t = 0.
inline cplx t_theta(double x, double t, cplx lambda)
{
    return -(x * lambda + 2.0 * t * lambda * lambda);
}

// rho -> rho e^{-4i lambda^2 t}, C_k -> C_k e^{4i lambda_k^2 t}.
ScatteringData evolve(const ScatteringData& d, double t);

} // namespace dnls
