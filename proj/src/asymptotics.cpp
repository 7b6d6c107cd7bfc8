#include "dnls/asymptotics.hpp"
#include "dnls/quadrature.hpp"
#include "dnls/special.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dnls {

namespace {

void require_initial(const ScatteringData& d)
{
    if (d.t_stamp() != 0.0)
        throw ValidationError("asymptotics: scattering data must describe the initial datum (t_stamp = 0)");
}

void require_cone(const ConeFrame& f, double t_min)
{
    if (std::abs(f.t) < t_min)
        throw ValidationError("asymptotics: |t| = " + std::to_string(std::abs(f.t)) + " is below t_min = "
                              + std::to_string(t_min));
    if (!f.in_cone())
        throw ValidationError("asymptotics: point outside the cone, x - v t misses [x1, x2] = ["
                              + std::to_string(f.x1) + ", " + std::to_string(f.x2) + "] for all v in ["
                              + std::to_string(f.v1) + ", " + std::to_string(f.v2) + "]");
}

// log(1 - eps s |rho|^2) / s, finite at s = 0.
double log_transmission_over_s(double s, const ScatteringData& d)
{
    double r2 = std::norm(d.rho(s));
    double x = -d.eps() * s * r2;
    if (!(1.0 + x > 0.0))
        throw NumericalError("1 - eps s |rho|^2 <= 0 at s = " + std::to_string(s));
    double ratio = std::abs(x) < 1e-300 ? 1.0 : std::log1p(x) / x;
    return -d.eps() * r2 * ratio;
}

double log_transmission(double s, const ScatteringData& d)
{
    double x = -d.eps() * s * std::norm(d.rho(s));
    if (!(1.0 + x > 0.0))
        throw NumericalError("1 - eps s |rho|^2 <= 0 at s = " + std::to_string(s));
    return std::log1p(x);
}

double excluded_arg_sum(const ConeFrame& f, const Pairs& discrete)
{
    double s = 0.0;
    for (const auto& p : discrete)
        if (f.excluded(p.lambda))
            s += std::arg(p.lambda);
    return s;
}

double reduce_angle(double a)
{
    a = std::remainder(a, 2.0 * pi);
    return a <= -pi ? a + 2.0 * pi : a;
}

} // namespace

LocalModelConstants local_model(const ConeFrame& f, const ScatteringData& d)
{
    require_initial(d);
    LocalModelConstants c;
    c.xi = f.xi();
    c.eta = f.eta();
    c.zeta_scale = std::sqrt(std::abs(8.0 * f.t));
    c.p = std::polar(std::sqrt(std::abs(8.0 * f.t * c.xi * c.xi)), c.eta * pi / 4.0);
    cplx rho = d.rho(c.xi);
    c.kappa = kappa(c.xi, d);
    if (rho == 0.0 || c.kappa == 0.0) {
        c.r_xi = c.s_xi = c.A12 = c.A21 = 0.0;
        return c;
    }
    cplx d0 = delta0(f, d);
    const double k = c.kappa;
    c.r_xi = rho * d0 * d0 * std::polar(1.0, -c.eta * k * std::log(std::abs(8.0 * f.t)) + 4.0 * f.t * c.xi * c.xi);
    c.s_xi = -static_cast<double>(d.eps()) * c.xi * std::conj(c.r_xi);
    const double amp = std::sqrt(2.0 * pi) * std::exp(-pi * k / 2.0);
    const cplx q = std::polar(1.0, pi / 4.0);
    // beta12(s, r) = amp e^{i pi/4} / (s Gamma(-i k)); beta21(s, r) = -amp e^{-i pi/4} / (r Gamma(i k))
    if (c.eta > 0) {
        c.A12 = amp * q * rgamma(-I * k) / c.s_xi;
        c.A21 = -amp * std::conj(q) * rgamma(I * k) / c.r_xi;
    } else {
        c.A12 = amp * std::conj(q) * rgamma(I * k) / c.s_xi;
        c.A21 = -amp * q * rgamma(-I * k) / c.r_xi;
    }
    return c;
}

double stieltjes_log_integral(const ConeFrame& f, const ScatteringData& d)
{
    const std::size_t m = d.m();
    const double h = d.h(), xi = f.xi();
    const int eta = f.eta();
    // L on the nodes padded with two zeros per side; w = dL/ds by centered differences.
    std::vector<double> L(m + 4, 0.0), w(m + 4, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double s = d.node(j);
        double x = -d.eps() * s * std::norm(d.rho_samples()[j]);
        if (!(1.0 + x > 0.0))
            throw NumericalError("stieltjes: 1 - eps s |rho|^2 <= 0");
        L[j + 2] = std::log1p(x);
    }
    for (std::size_t j = 1; j + 1 < L.size(); ++j)
        w[j] = (L[j + 1] - L[j - 1]) / (2.0 * h);
    auto g0 = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
    auto g1 = [](double u) { return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::abs(u)) - 0.25 * u * u; };
    const double base = d.lo() - 2.0 * h;
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        if (w[j] == 0.0 && w[j + 1] == 0.0)
            continue;
        double a = base + h * static_cast<double>(j), b = a + h;
        if (eta > 0)
            b = std::min(b, xi);
        else
            a = std::max(a, xi);
        if (!(b > a))
            continue;
        double c1 = (w[j + 1] - w[j]) / h;
        double c0 = w[j] + c1 * (xi - (base + h * static_cast<double>(j)));
        double u1 = a - xi, u2 = b - xi;
        total += c0 * (g0(u2) - g0(u1)) + c1 * (g1(u2) - g1(u1));
    }
    return total / pi;
}

namespace {

// sqrt(eps kappa / xi) and -arg(-eps xi conj(rho)) + eta arg Gamma(i kappa), continued to xi = 0.
std::pair<double, double> amplitude_phase(double xi, cplx rho, double k, int eps, int eta)
{
    if (xi == 0.0)
        return {std::abs(rho) / std::sqrt(2.0 * pi), std::arg(rho) + eta * pi / 2.0};
    return {std::sqrt(eps * k / xi),
            eta * log_gamma(I * k).imag() - std::arg(-static_cast<double>(eps) * xi * std::conj(rho))};
}

} // namespace

ACoefficients A_coefficients(const ConeFrame& f, const ScatteringData& d)
{
    require_initial(d);
    const double xi = f.xi();
    const int eta = f.eta();
    cplx rho = d.rho(xi);
    double k = kappa(xi, d);
    if (rho == 0.0 || (k == 0.0 && xi != 0.0))
        return {0.0, 0.0};
    auto [mod, arg0] = amplitude_phase(xi, rho, k, d.eps(), eta);
    double arg = eta * pi / 4.0 + arg0 + stieltjes_log_integral(f, d) - eta * k * std::log(std::abs(8.0 * f.t))
        + 4.0 * f.t * xi * xi;
    cplx a12 = std::polar(mod, arg);
    return {a12, static_cast<double>(d.eps()) * xi * std::conj(a12)};
}

double phi_phase(const ConeFrame& f, const Pairs& discrete)
{
    double s = 0.0;
    for (const auto& p : discrete)
        if (f.excluded(p.lambda))
            s += std::arg(p.lambda - f.xi());
    return -4.0 * s;
}

double time_scale(double t) { return 1.0 / std::sqrt(std::abs(t)); }

OuterModel outer_model(const ConeFrame& f, const ScatteringData& d)
{
    require_initial(d);
    OuterModel om;
    om.data = modulate_coefficients(d, f, Modulation::hat);
    auto row = solve_reflectionless(d.eps(), om.data, f.x, f.t, {cplx(f.xi())});
    om.n11 = row.row_values[0][0];
    om.n12 = row.row_values[0][1];
    om.phi = phi_phase(f, d.discrete());
    return om;
}

namespace {

cplx f_from(const ACoefficients& a, const OuterModel& om, int eps, double xi)
{
    cplx e = std::polar(1.0, om.phi);
    return (a.A12 * om.n11 * om.n11 * e + static_cast<double>(eps) * xi * std::conj(a.A12) * om.n12 * om.n12 / e)
        / std::sqrt(2.0);
}

} // namespace

cplx f_correction(const ConeFrame& f, const ScatteringData& d)
{
    return f_from(A_coefficients(f, d), outer_model(f, d), d.eps(), f.xi());
}

AsymptoticProfile q_asymptotic(const ConeFrame& f, const ScatteringData& d, double t_min)
{
    require_cone(f, t_min);
    OuterModel om = outer_model(f, d);
    AsymptoticProfile p;
    p.x = f.x;
    p.t = f.t;
    p.leading = q_sol_at(d.eps(), om.data, f.x, f.t);
    p.correction = time_scale(f.t) * f_from(A_coefficients(f, d), om, d.eps(), f.xi());
    return p;
}

DispersiveValue dispersive_no_soliton(const ConeFrame& f, const ScatteringData& d)
{
    require_initial(d);
    if (!d.discrete().empty())
        throw ValidationError("dispersive_no_soliton: discrete data present");
    const double xi = f.xi(), t = f.t;
    const int eta = f.eta();
    DispersiveValue v{0.0, 0.0, 0.0, 0.0, 0.0};
    cplx rho = d.rho(xi);
    double k = kappa(xi, d);
    if (rho == 0.0 || (k == 0.0 && xi != 0.0))
        return v;
    auto [mod, arg0] = amplitude_phase(xi, rho, k, d.eps(), eta);
    v.alpha = eta * pi / 4.0 + arg0 + stieltjes_log_integral(f, d);
    double phase = v.alpha + f.x * f.x / (4.0 * t) - eta * k * std::log(std::abs(8.0 * t));
    double scale = 1.0 / std::sqrt(2.0 * std::abs(t));
    v.modulus_displayed = scale * (xi == 0.0 ? d.eps() * std::norm(rho) / (2.0 * pi) : k / xi);
    v.modulus_local_model = scale * mod;
    v.displayed = v.modulus_displayed * std::polar(1.0, phase);
    v.local_model = v.modulus_local_model * std::polar(1.0, phase);
    return v;
}

std::vector<PhaseShift> phase_shifts(const ScatteringData& d) { return phase_shifts(d, pair_x_factor, pair_phi_factor); }

std::vector<PhaseShift> phase_shifts(const ScatteringData& d, double x_factor, double phi_factor)
{
    require_initial(d);
    const auto& ds = d.discrete();
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (ds[i].lambda.real() == ds[j].lambda.real())
                throw ValidationError("phase_shifts: coincident Re lambda_k (breather); per-soliton shifts undefined");
    std::vector<PhaseShift> out;
    const double lo = d.lo(), hi = d.hi();
    const bool rad = d.has_radiation();
    for (std::size_t k = 0; k < ds.size(); ++k) {
        cplx lk = ds[k].lambda;
        double u = lk.real(), tau = lk.imag();
        auto kern = [&](double s) { return kappa(s, d) / ((s - u) * (s - u) + tau * tau); };
        auto kern1 = [&](double s) { return (s - u) * kern(s); };
        double a_left = 0.0, a_right = 0.0, b_left = 0.0, b_right = 0.0;
        if (rad) {
            double mid = std::clamp(u, lo, hi);
            a_left = integrate(kern, lo, mid, 1e-12, "phase_shifts");
            a_right = integrate(kern, mid, hi, 1e-12, "phase_shifts");
            b_left = integrate(kern1, lo, mid, 1e-12, "phase_shifts");
            b_right = integrate(kern1, mid, hi, 1e-12, "phase_shifts");
        }
        double sum_log_p = 0.0, sum_log_m = 0.0, sum_arg_p = 0.0, sum_arg_m = 0.0;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (j == k)
                continue;
            cplx r = (lk - ds[j].lambda) / (lk - std::conj(ds[j].lambda));
            if (u > ds[j].lambda.real()) {
                sum_log_p += std::log(std::abs(r));
                sum_arg_p += std::arg(r);
            } else {
                sum_log_m += std::log(std::abs(r));
                sum_arg_m += std::arg(r);
            }
        }
        cplx c = ds[k].c();
        double base_x = (std::log(std::abs(lk)) + 2.0 * ds[k].log_c().real() - std::log(4.0 * tau * tau)) / (4.0 * tau);
        double base_phi = std::arg(I * lk * c);
        PhaseShift ps;
        ps.lambda = lk;
        ps.x_plus = base_x + x_factor / tau * sum_log_p + a_left;
        ps.x_minus = base_x + x_factor / tau * sum_log_m + a_right;
        ps.phi_plus = reduce_angle(base_phi + phi_factor * sum_arg_p - 2.0 * b_left);
        ps.phi_minus = reduce_angle(base_phi + phi_factor * sum_arg_m - 2.0 * b_right);
        ps.dx = ps.x_plus - ps.x_minus;
        ps.dphi = reduce_angle(phi_factor * (sum_arg_p - sum_arg_m) - 2.0 * b_left + 2.0 * b_right);
        out.push_back(ps);
    }
    return out;
}

double alpha0(const ConeFrame& f, const ScatteringData& d)
{
    Span s = minus_support(f, d);
    double v = 0.0;
    if (s.b > s.a)
        v = integrate([&](double z) { return -log_transmission_over_s(z, d) / (2.0 * pi); }, s.a, s.b, 1e-12,
                      "alpha0");
    return -2.0 * v + 4.0 * excluded_arg_sum(f, d.discrete());
}

FGValues FG_at(double kappa_xi, int eta, cplx p)
{
    if (p == 0.0) {
        if (kappa_xi != 0.0)
            throw ValidationError("FG: p = 0 with kappa != 0");
        return {p, 1.0, 0.0};
    }
    cplx nu = I * static_cast<double>(eta) * kappa_xi;
    cplx d0 = pcf_D(nu, p), d1 = pcf_D(nu - 1.0, p);
    cplx term = std::exp(p * p / 4.0 - nu * std::log(p)) * d0;
    return {p, 1.0 / (term * term), p * d1 / d0};
}

FGValues FG_factors(const ConeFrame& f, const ScatteringData& d)
{
    double xi = f.xi();
    cplx p = std::polar(std::sqrt(std::abs(8.0 * f.t * xi * xi)), f.eta() * pi / 4.0);
    return FG_at(kappa(xi, d), f.eta(), p);
}

NpcColumn npc_first_column_at_zero(const ConeFrame& f, const ScatteringData& d)
{
    const double xi = f.xi(), t = f.t;
    const int eta = f.eta();
    if (xi == 0.0)
        return {1.0, 0.0};
    double k = kappa(xi, d);
    cplx p = std::polar(std::sqrt(std::abs(8.0 * t * xi * xi)), eta * pi / 4.0);
    cplx nu = I * static_cast<double>(eta) * k;
    ACoefficients a = A_coefficients(f, d);
    cplx pref = std::exp(pi * k / 4.0)
        * std::polar(1.0, 2.0 * t * xi * xi - 0.5 * eta * k * std::log(std::abs(8.0 * t * xi * xi)));
    NpcColumn c;
    c.n11 = pref * pcf_D(nu, p);
    c.n21 = a.A21 == 0.0 ? cplx(0.0)
                         : pref * (-std::polar(1.0, eta * pi / 4.0) * sgn(xi)) * I * a.A21 * pcf_D(nu - 1.0, p);
    return c;
}

AsymptoticProfile u_asymptotic(const ConeFrame& f, const ScatteringData& d, double big_m, double t_min)
{
    require_cone(f, t_min);
    if (!(big_m > 0.0))
        throw ValidationError("u_asymptotic: M must be positive");
    const int eps = d.eps();
    const double xi = f.xi();
    OuterModel om = outer_model(f, d);
    ACoefficients a = A_coefficients(f, d);
    GaugeAtZero g0 = u_sol_at(eps, om.data, f.x, f.t);
    const double ts = time_scale(f.t);
    cplx rot = std::polar(1.0, alpha0(f, d));
    cplx fv = f_from(a, om, eps, xi);
    cplx rest = I * std::sqrt(2.0) * static_cast<double>(eps) * (a.A12 * om.n11 * std::conj(om.n12) * std::polar(1.0, om.phi)).real();
    // u_sol * g = (u_sol / q_sol) f + u_sol * rest, with u_sol / q_sol = N11(0)^{-2}.
    cplx ug = g0.phase * fv + g0.u * rest;
    AsymptoticProfile p;
    p.x = f.x;
    p.t = f.t;
    p.qsol_zero = std::abs(g0.q) < 1e-13;
    if (std::abs(xi) >= big_m * std::pow(std::abs(f.t), -0.125)) {
        p.branch = Branch::outer;
        p.leading = g0.u * rot;
        p.correction = rot * ts * ug;
    } else {
        p.branch = Branch::inner;
        FGValues fg = FG_factors(f, d);
        cplx extra = I * static_cast<double>(eps) / std::sqrt(2.0) * std::conj(a.A12) * (1.0 - fg.G)
            * std::polar(1.0, 4.0 * excluded_arg_sum(f, d.discrete())) * g0.tail_u;
        p.leading = g0.u * rot * fg.F;
        p.correction = rot * fg.F * ts * (ug + g0.u * extra);
    }
    return p;
}

cplx trace_alpha(const ScatteringData& d, cplx lambda, TraceKind kind)
{
    if (lambda.imag() == 0.0)
        throw ValidationError("trace_alpha: lambda must be off the real axis");
    cplx prod = 1.0;
    for (const auto& p : d.discrete())
        prod *= (lambda - p.lambda) / (lambda - std::conj(p.lambda));
    cplx k = 0.0;
    if (d.has_radiation()) {
        const double a = d.lo(), b = d.hi(), lr = lambda.real();
        auto L = [&](double s) { return log_transmission(s, d); };
        if (lr > a && lr < b) {
            double l0 = L(lr);
            auto g = [&](double s) { return cplx(L(s) - l0) / (s - lambda); };
            k = integrate(g, a, lr, 1e-12, "trace") + integrate(g, lr, b, 1e-12, "trace")
                + l0 * (std::log(cplx(b) - lambda) - std::log(cplx(a) - lambda));
        } else {
            k = integrate([&](double s) { return cplx(L(s)) / (s - lambda); }, a, b, 1e-12, "trace");
        }
        k /= 2.0 * pi * I;
    }
    if (kind == TraceKind::breve)
        return prod * std::exp(-k);
    return std::exp(k) / prod;
}

PlancherelResult plancherel_check(const ScatteringData& d, double mass)
{
    double args = 0.0;
    for (const auto& p : d.discrete())
        args += std::arg(p.lambda);
    double integral = 0.0;
    if (d.has_radiation())
        integral = integrate([&](double s) { return log_transmission_over_s(s, d); }, d.lo(), d.hi(), 1e-13,
                             "plancherel");
    PlancherelResult r;
    r.lhs = std::polar(1.0, d.eps() * mass);
    r.rhs = std::polar(1.0, -4.0 * args - integral / pi);
    r.defect = std::abs(r.lhs - r.rhs);
    return r;
}

PlancherelResult plancherel_check(const ScatteringData& d, const FieldGrid& q)
{
    auto m = cumulative_mass(q);
    return plancherel_check(d, m.empty() ? 0.0 : m.front());
}

} // namespace dnls
