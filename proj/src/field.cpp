#include "dnls/field.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

FieldGrid::FieldGrid(int eps_, double x0_, double dx_, std::vector<cplx> v, bool whole)
    : eps(eps_), x0(x0_), dx(dx_), values(std::move(v)), whole_line(whole)
{
    validate();
}

double FieldGrid::max_abs() const
{
    double m = 0.0;
    for (auto& v : values)
        m = std::max(m, std::abs(v));
    return m;
}

void FieldGrid::validate() const
{
    check_eps(eps);
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw ValidationError("field: dx must be positive");
    if (!std::isfinite(x0))
        throw ValidationError("field: x0 must be finite");
    if (values.size() < 8)
        throw ValidationError("field: need at least 8 samples");
    for (auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("field: non-finite sample");
}

void FieldGrid::check_tail(double tol) const
{
    double m = max_abs();
    if (m == 0.0)
        return;
    if (std::abs(values.front()) > tol * m || std::abs(values.back()) > tol * m)
        throw ValidationError("field: tail does not decay (end samples exceed tolerance)");
}

std::vector<double> cumulative_mass(const FieldGrid& f)
{
    std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;)
        out[j] = out[j + 1] + 0.5 * f.dx * (std::norm(f.values[j]) + std::norm(f.values[j + 1]));
    return out;
}

static FieldGrid gauge(const FieldGrid& f, double sign)
{
    if (f.whole_line)
        f.check_tail();
    else
        throw ValidationError("gauge: field must be whole-line");
    auto m = cumulative_mass(f);
    FieldGrid g = f;
    for (std::size_t j = 0; j < f.size(); ++j)
        g.values[j] = std::polar(1.0, sign * f.eps * m[j]) * f.values[j];
    return g;
}

FieldGrid gauge_forward(const FieldGrid& u) { return gauge(u, 1.0); }
FieldGrid gauge_inverse(const FieldGrid& q) { return gauge(q, -1.0); }

cplx tail_integral(const FieldGrid& f, double x, Weight w)
{
    if (!f.whole_line)
        throw ValidationError("tail_integral: field must be whole-line");
    const double xe = f.x_end();
    if (x < f.x0 || x > xe)
        throw ValidationError("tail_integral: x outside grid");
    auto val = [&](std::size_t j) -> cplx {
        return w == Weight::abs2 ? cplx(std::norm(f.values[j])) : f.values[j];
    };
    std::size_t n = f.size();
    double s = (x - f.x0) / f.dx;
    auto j0 = std::min(static_cast<std::size_t>(std::floor(s)), n - 1);
    if (j0 == n - 1)
        return 0.0;
    double frac = s - static_cast<double>(j0);
    cplx fx = (1.0 - frac) * val(j0) + frac * val(j0 + 1);
    cplx sum = 0.5 * (1.0 - frac) * f.dx * (fx + val(j0 + 1));
    for (std::size_t j = j0 + 1; j + 1 < n; ++j)
        sum += 0.5 * f.dx * (val(j) + val(j + 1));
    return sum;
}

DiscretePair DiscretePair::from_log(cplx lam, cplx log_c)
{
    DiscretePair p;
    p.lambda = lam;
    p.mant = std::polar(1.0, log_c.imag());
    p.log_scale = log_c.real();
    return p;
}

Spline::Spline(double lo, double h, std::vector<cplx> y) : lo_(lo), h_(h), y_(std::move(y))
{
    std::size_t n = y_.size();
    m_.assign(n, 0.0);
    if (n < 3)
        return;
    // Thomas algorithm for the natural spline second derivatives.
    std::vector<double> c(n, 0.0);
    std::vector<cplx> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        cplx rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h * h);
        double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
        c[i] = 1.0 / denom;
        d[i] = (rhs - (i > 1 ? d[i - 1] : cplx(0.0))) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1)
            break;
    }
}

cplx Spline::operator()(double x) const
{
    std::size_t n = y_.size();
    double s = (x - lo_) / h_;
    if (s < 0.0 || s > static_cast<double>(n - 1))
        return 0.0;
    auto i = std::min(static_cast<std::size_t>(s), n - 2);
    double a = s - static_cast<double>(i);
    double b = 1.0 - a;
    return b * y_[i] + a * y_[i + 1]
        + (h_ * h_ / 6.0) * ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[i + 1]);
}

ScatteringData::ScatteringData(int eps, double lo, double hi, std::vector<cplx> rho,
                               std::vector<DiscretePair> discrete, double t_stamp)
    : eps_(eps), lo_(lo), hi_(hi), rho_(std::move(rho)), discrete_(std::move(discrete)),
      t_stamp_(t_stamp)
{
    check_eps(eps_);
    if (!(hi_ > lo_) || !std::isfinite(lo_) || !std::isfinite(hi_))
        throw ValidationError("scattering: need lambda_lo < lambda_hi");
    if (rho_.size() < 2)
        throw ValidationError("scattering: need m >= 2");
    if (!std::isfinite(t_stamp_))
        throw ValidationError("scattering: t must be finite");
    for (std::size_t j = 0; j < rho_.size(); ++j) {
        auto r = rho_[j];
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            throw ValidationError("scattering: non-finite rho sample");
        if (1.0 - eps_ * node(j) * std::norm(r) <= 0.0)
            throw ValidationError("scattering: 1 - eps*lambda*|rho|^2 <= 0 at lambda = "
                                  + std::to_string(node(j)));
    }
    for (auto& p : discrete_) {
        if (!(p.lambda.imag() > 0.0))
            throw ValidationError("scattering: discrete lambda must have Im > 0");
        if (p.mant == 0.0 || !std::isfinite(std::abs(p.mant)) || !std::isfinite(p.log_scale))
            throw ValidationError("scattering: norming constant must be finite and nonzero");
    }
    for (std::size_t i = 0; i < discrete_.size(); ++i)
        for (std::size_t k = i + 1; k < discrete_.size(); ++k)
            if (discrete_[i].lambda == discrete_[k].lambda)
                throw ValidationError("scattering: discrete eigenvalues must be distinct");
    // Interpolate the t = 0 profile; the e^{-4i lambda^2 t} carrier is restored on evaluation.
    std::vector<cplx> base(rho_.size());
    for (std::size_t j = 0; j < rho_.size(); ++j) {
        double l = node(j);
        base[j] = rho_[j] * std::polar(1.0, 4.0 * l * l * t_stamp_);
    }
    spline_ = std::make_shared<Spline>(lo_, h(), std::move(base));
}

ScatteringData ScatteringData::reflectionless(int eps, std::vector<DiscretePair> discrete)
{
    return ScatteringData(eps, -1.0, 1.0, std::vector<cplx>(8, 0.0), std::move(discrete));
}

bool ScatteringData::has_radiation() const
{
    return std::any_of(rho_.begin(), rho_.end(), [](cplx r) { return r != 0.0; });
}

cplx ScatteringData::rho(double lambda) const
{
    if (lambda < lo_ || lambda > hi_ || !spline_)
        return 0.0;
    return (*spline_)(lambda) * std::polar(1.0, -4.0 * lambda * lambda * t_stamp_);
}

double ScatteringData::transmission(double lambda) const
{
    return 1.0 - eps_ * lambda * std::norm(rho(lambda));
}

double ScatteringData::min_gap() const
{
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < discrete_.size(); ++i) {
        g = std::min(g, 2.0 * discrete_[i].lambda.imag());
        for (std::size_t k = i + 1; k < discrete_.size(); ++k)
            g = std::min(g, std::abs(discrete_[i].lambda - discrete_[k].lambda));
    }
    return g;
}

} // namespace dnls
