#include "dnls/special.hpp"

#include <array>
#include <cmath>

namespace dnls {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> stirling = {
    1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

bool is_pole(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

} // namespace

cplx log_gamma(cplx z)
{
    if (is_pole(z))
        throw ValidationError("log_gamma: pole at nonpositive integer");
    // Shift to |w| >= 17 with principal logs, which stays on the principal branch.
    cplx shift = 0.0;
    cplx w = z;
    while (std::abs(w) < 17.0 || w.real() < 0.0) {
        shift += std::log(w);
        w += 1.0;
    }
    cplx w2 = 1.0 / (w * w);
    cplx series = 0.0;
    cplx pw = 1.0 / w;
    for (double b : stirling) {
        series += b * pw;
        pw *= w2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi) + series - shift;
}

cplx rgamma(cplx z)
{
    if (is_pole(z))
        return 0.0;
    return std::exp(-log_gamma(z));
}

cplx pcf_D_asymptotic(cplx nu, cplx z)
{
    // e^{-z^2/4} z^nu sum_s (-1)^s (-nu)_{2s} / (s! (2 z^2)^s), summed to the smallest term.
    cplx z2 = 2.0 * z * z;
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int s = 0; s < 500; ++s) {
        cplx next = -term * (2.0 * s - nu) * (2.0 * s + 1.0 - nu) / ((s + 1.0) * z2);
        double a = std::abs(next);
        if (a > last && s > 2)
            break;
        sum += next;
        term = next;
        last = a;
        if (a < 1e-17 * std::abs(sum))
            break;
    }
    return std::exp(-0.25 * z * z + nu * std::log(z)) * sum;
}

namespace {

struct WD {
    cplx w, dw;
};

// Taylor stepping of w'' = (z^2/4 - nu - 1/2) w along the segment from z0 to z1.
WD taylor_walk(cplx nu, cplx z0, WD s, cplx z1)
{
    const cplx a = nu + 0.5;
    cplx dz = z1 - z0;
    double len = std::abs(dz);
    if (len == 0.0)
        return s;
    double scale = 1.0 + 0.5 * std::max(std::abs(z0), std::abs(z1)) + std::sqrt(std::abs(a));
    int steps = std::max(1, static_cast<int>(std::ceil(len * scale / 1.5)));
    cplx h = dz / static_cast<double>(steps);
    cplx zc = z0;
    std::array<cplx, 160> c{};
    for (int k = 0; k < steps; ++k) {
        c[0] = s.w;
        c[1] = s.dw;
        cplx w = c[0] + c[1] * h, dw = c[1];
        cplx hp = h;
        const cplx q0 = 0.25 * zc * zc - a;
        double mag = std::abs(s.w) + std::abs(s.dw) * std::abs(h);
        int quiet = 0;
        for (std::size_t n = 0; n + 2 < c.size(); ++n) {
            cplx acc = q0 * c[n];
            if (n >= 1)
                acc += 0.5 * zc * c[n - 1];
            if (n >= 2)
                acc += 0.25 * c[n - 2];
            c[n + 2] = acc / static_cast<double>((n + 2) * (n + 1));
            dw += static_cast<double>(n + 2) * c[n + 2] * hp;
            hp *= h;
            cplx t = c[n + 2] * hp;
            w += t;
            quiet = std::abs(t) < 1e-18 * (mag + std::abs(w)) ? quiet + 1 : 0;
            if (quiet >= 3)
                break;
        }
        s = {w, dw};
        zc += h;
    }
    return s;
}

} // namespace

cplx pcf_D_series(cplx nu, cplx z)
{
    if (std::real(z * z) > 10.0) {
        // Recessive direction: start on the far circle and walk inward.
        cplx zr = z * (9.5 / std::abs(z));
        WD s{pcf_D_asymptotic(nu, zr), 0.0};
        s.dw = 0.5 * zr * s.w - pcf_D_asymptotic(nu + 1.0, zr);
        return taylor_walk(nu, zr, s, z).w;
    }
    const double sp = std::sqrt(pi);
    WD s{std::pow(2.0, 0.5 * nu) * sp * rgamma(0.5 * (1.0 - nu)),
         -std::pow(2.0, 0.5 * (nu + 1.0)) * sp * rgamma(-0.5 * nu)};
    return taylor_walk(nu, 0.0, s, z).w;
}

PcfValue pcf(cplx nu, cplx z)
{
    if (std::abs(nu.imag()) > 10.0)
        throw ValidationError("pcf_D: |Im nu| > 10 is outside the supported range");
    if (std::abs(std::arg(z)) >= 0.75 * pi && std::abs(z) > 1e-300)
        throw ValidationError("pcf_D: |arg z| >= 3pi/4 is outside the supported range");
    if (std::abs(z) > pcf_switch)
        return {nu, z, pcf_D_asymptotic(nu, z), PcfRegime::asymptotic};
    cplx v = pcf_D_series(nu, z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalError("pcf_D: evaluation failed");
    return {nu, z, v, PcfRegime::series};
}

} // namespace dnls
