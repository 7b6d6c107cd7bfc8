#pragma once

#include "dnls/field.hpp"

namespace dnls {

// Space-time cone x = x0 + v t, v in [v1, v2], x0 in [x1, x2], evaluated at (x, t).
struct ConeFrame {
    double v1 = 0.0, v2 = 0.0, x1 = 0.0, x2 = 0.0;
    double x = 0.0, t = 1.0;

    ConeFrame() = default;
    ConeFrame(double v1_, double v2_, double x1_, double x2_, double x_, double t_);

    double xi() const { return -x / (4.0 * t); }
    int eta() const { return t < 0 ? -1 : 1; }
    double i_lo() const { return -v2 / 4.0; }
    double i_hi() const { return -v1 / 4.0; }
    bool in_I(double s) const { return s >= i_lo() && s <= i_hi(); }
    // Half-line I^-: eta*s <= eta*xi.
    bool in_minus(double s) const { return eta() * s <= eta() * xi(); }
    // Re lambda in I^- \ I.
    bool excluded(cplx lambda) const { return in_minus(lambda.real()) && !in_I(lambda.real()); }
    bool in_cone() const;
    // Same cone, another space-time point.
    ConeFrame at(double x_, double t_) const { return {v1, v2, x1, x2, x_, t_}; }
};

struct KappaProfile {
    double xi, kappa, kappa_sup;
};

// kappa(s) = -(1/2pi) log(1 - eps s |rho(s)|^2)
double kappa(double s, const ScatteringData& d);
KappaProfile kappa_profile(double xi, const ScatteringData& d);

// Part of I^- on which rho is numerically nonzero: [a, b], empty when a >= b.
struct Span {
    double a, b;
};
Span minus_support(const ConeFrame& f, const ScatteringData& d);

// int_{I^-} g(s) / (s - lambda) ds for g = kappa; lambda off the half-line.
cplx cauchy_kappa(cplx lambda, const ConeFrame& f, const ScatteringData& d);

cplx delta(cplx lambda, const ConeFrame& f, const ScatteringData& d);
// Regularized phase beta(xi, xi); delta0 = exp(i beta).
double beta_at_xi(const ConeFrame& f, const ScatteringData& d);
cplx delta0(const ConeFrame& f, const ScatteringData& d);
cplx delta1(const ConeFrame& f, const ScatteringData& d);

} // namespace dnls
