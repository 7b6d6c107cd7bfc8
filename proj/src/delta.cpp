#include "dnls/delta.hpp"
#include "dnls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dnls {

ConeFrame::ConeFrame(double v1_, double v2_, double x1_, double x2_, double x_, double t_)
    : v1(v1_), v2(v2_), x1(x1_), x2(x2_), x(x_), t(t_)
{
    if (!(v1 <= v2) || !(x1 <= x2))
        throw ValidationError("cone: need v1 <= v2 and x1 <= x2");
    if (t == 0.0 || !std::isfinite(t) || !std::isfinite(x))
        throw ValidationError("cone: t must be nonzero and finite");
}

bool ConeFrame::in_cone() const
{
    // x - v t must meet [x1, x2] for some v in [v1, v2].
    double a = x - v1 * t, b = x - v2 * t;
    if (a > b)
        std::swap(a, b);
    return b >= x1 && a <= x2;
}

double kappa(double s, const ScatteringData& d)
{
    double r2 = std::norm(d.rho(s));
    double arg = 1.0 - d.eps() * s * r2;
    if (!(arg > 0.0))
        throw NumericalError("kappa: 1 - eps*s*|rho|^2 <= 0 at s = " + std::to_string(s));
    return -std::log1p(-d.eps() * s * r2) / (2.0 * pi);
}

KappaProfile kappa_profile(double xi, const ScatteringData& d)
{
    double sup = 0.0;
    for (std::size_t j = 0; j < d.m(); ++j)
        sup = std::max(sup, std::abs(kappa(d.node(j), d)));
    return {xi, kappa(xi, d), sup};
}

Span minus_support(const ConeFrame& f, const ScatteringData& d)
{
    // Trim to nodes where |rho| >= 1e-10, padded by one cell.
    std::size_t first = d.m(), last = 0;
    for (std::size_t j = 0; j < d.m(); ++j)
        if (std::abs(d.rho_samples()[j]) >= 1e-10) {
            first = std::min(first, j);
            last = j;
        }
    if (first == d.m())
        return {0.0, 0.0};
    double a = d.node(first > 0 ? first - 1 : 0);
    double b = d.node(std::min(last + 1, d.m() - 1));
    double xi = f.xi();
    if (f.eta() > 0)
        b = std::min(b, xi);
    else
        a = std::max(a, xi);
    return {a, b};
}

namespace {

// Integral over [a, b] split geometrically around c at distances h, 10h, 100h, ...
cplx integrate_near(const auto& g, double a, double b, double c, double h)
{
    std::vector<double> cuts{a, b};
    if (c > a && c < b)
        cuts.push_back(c);
    for (double r = h; r < b - a; r *= 10.0) {
        if (c - r > a && c - r < b)
            cuts.push_back(c - r);
        if (c + r > a && c + r < b)
            cuts.push_back(c + r);
    }
    std::sort(cuts.begin(), cuts.end());
    cplx v = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        v += integrate(g, cuts[i], cuts[i + 1], 1e-11, "cauchy integral");
    return v;
}

// int_a^b k(s)/(s - lambda) ds with the value at Re lambda subtracted when it lies inside.
cplx cauchy(const auto& k, double a, double b, cplx lambda)
{
    if (!(b > a))
        return 0.0;
    double lr = lambda.real();
    double h = std::max(std::abs(lambda.imag()), 1e-12);
    if (lr <= a || lr >= b)
        return integrate_near([&](double s) { return cplx(k(s)) / (s - lambda); }, a, b, std::clamp(lr, a, b), h);
    double k0 = k(lr);
    auto g = [&](double s) { return cplx(k(s) - k0) / (s - lambda); };
    return integrate_near(g, a, b, lr, h) + k0 * (std::log(cplx(b) - lambda) - std::log(cplx(a) - lambda));
}

} // namespace

cplx cauchy_kappa(cplx lambda, const ConeFrame& f, const ScatteringData& d)
{
    Span s = minus_support(f, d);
    return cauchy([&](double z) { return kappa(z, d); }, s.a, s.b, lambda);
}

cplx delta(cplx lambda, const ConeFrame& f, const ScatteringData& d)
{
    double xi = f.xi();
    double dist = f.in_minus(lambda.real()) ? std::abs(lambda.imag()) : std::abs(lambda - xi);
    if (dist < 1e-6)
        throw ValidationError("delta: lambda lies on the contour I^-; use delta0 at xi");
    return std::exp(I * cauchy_kappa(lambda, f, d));
}

double beta_at_xi(const ConeFrame& f, const ScatteringData& d)
{
    const double xi = f.xi();
    const double k0 = kappa(xi, d);
    const double eta = f.eta();
    Span s = minus_support(f, d);
    // chi window (xi - 1, xi) for eta = +1, (xi, xi + 1) for eta = -1.
    double w_lo = eta > 0 ? xi - 1.0 : xi;
    double w_hi = eta > 0 ? xi : xi + 1.0;
    auto inner = [&](double z) {
        double dz = z - xi;
        if (dz == 0.0)
            return 0.0;
        return (kappa(z, d) - k0) / dz;
    };
    auto outer = [&](double z) { return kappa(z, d) / (z - xi); };
    double v = integrate(inner, w_lo, w_hi, 1e-11, "delta0");
    if (s.b > s.a) {
        if (eta > 0 && s.a < w_lo)
            v += integrate(outer, s.a, w_lo, 1e-11, "delta0");
        if (eta < 0 && s.b > w_hi)
            v += integrate(outer, w_hi, s.b, 1e-11, "delta0");
    }
    return v;
}

cplx delta0(const ConeFrame& f, const ScatteringData& d)
{
    cplx v = std::exp(I * beta_at_xi(f, d));
    if (std::abs(std::abs(v) - 1.0) > 1e-10)
        throw NumericalError("delta0: not a unit");
    return v / std::abs(v);
}

cplx delta1(const ConeFrame& f, const ScatteringData& d)
{
    Span s = minus_support(f, d);
    if (!(s.b > s.a))
        return 0.0;
    return -I * integrate([&](double z) { return kappa(z, d); }, s.a, s.b, 1e-12, "delta1");
}

} // namespace dnls
