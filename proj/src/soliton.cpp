#include "dnls/soliton.hpp"
#include "dnls/evolution.hpp"
#include "dnls/parallel.hpp"
#include "dnls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dnls {

std::vector<std::size_t> NormalizationSet::members() const
{
    std::vector<std::size_t> m;
    for (std::size_t k = 0; k < in_delta.size(); ++k)
        if (in_delta[k])
            m.push_back(k);
    return m;
}

namespace {

std::vector<std::size_t> sorted_order(const Pairs& d)
{
    std::vector<std::size_t> o(d.size());
    std::iota(o.begin(), o.end(), 0);
    std::stable_sort(o.begin(), o.end(),
                     [&](std::size_t a, std::size_t b) { return d[a].lambda.real() < d[b].lambda.real(); });
    return o;
}

NormalizationSet make_set(const Pairs& d, auto pred)
{
    NormalizationSet s;
    s.order = sorted_order(d);
    s.in_delta.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        s.in_delta[k] = pred(k);
    return s;
}

constexpr double gamma_limit = 1e12;

} // namespace

NormalizationSet choose_normalization(const Pairs& discrete, double xi, int eta)
{
    if (eta > 0)
        return make_set(discrete, [&](std::size_t k) { return discrete[k].lambda.real() <= xi; });
    return make_set(discrete, [&](std::size_t k) { return discrete[k].lambda.real() > xi; });
}

NormalizationSet adaptive_normalization(const Pairs& discrete, double x, double t)
{
    return make_set(discrete, [&](std::size_t k) {
        const auto& p = discrete[k];
        cplx lg = std::log(p.lambda) + p.log_c() - 2.0 * I * t_theta(x, t, p.lambda);
        return lg.real() > 0.0;
    });
}

cplx blaschke(cplx lambda, const NormalizationSet& delta, const Pairs& discrete)
{
    cplx b = 1.0;
    for (std::size_t k = 0; k < discrete.size(); ++k) {
        if (!delta.contains(k))
            continue;
        cplx lk = discrete[k].lambda;
        if (lambda == lk)
            throw ValidationError("blaschke: evaluation at a pole");
        b *= (lambda - std::conj(lk)) / (lambda - lk);
    }
    return b;
}

cplx blaschke_inv_prime(std::size_t k, const NormalizationSet& delta, const Pairs& discrete)
{
    // 1/B has a simple zero at lambda_k; its derivative is the remaining product.
    cplx lk = discrete[k].lambda;
    cplx v = 1.0 / (lk - std::conj(lk));
    for (std::size_t j = 0; j < discrete.size(); ++j)
        if (j != k && delta.contains(j))
            v *= (lk - discrete[j].lambda) / (lk - std::conj(discrete[j].lambda));
    return v;
}

std::vector<Residue> residue_coefficients(const Pairs& discrete, const NormalizationSet& delta,
                                          double x, double t)
{
    std::vector<Residue> out;
    for (std::size_t k = 0; k < discrete.size(); ++k) {
        const auto& p = discrete[k];
        cplx tt = t_theta(x, t, p.lambda);
        Residue r{k, delta.contains(k), 0.0, 0.0};
        if (!r.upper)
            r.log_gamma = p.log_c() - 2.0 * std::log(blaschke(p.lambda, delta, discrete)) - 2.0 * I * tt;
        else
            r.log_gamma = -p.log_c() - 2.0 * std::log(blaschke_inv_prime(k, delta, discrete)) + 2.0 * I * tt;
        if (r.log_gamma.real() > std::log(gamma_limit))
            throw NumericalError("residue_coefficients: |gamma| exceeds 1e12; normalization rejected");
        r.gamma = std::exp(r.log_gamma);
        out.push_back(r);
    }
    return out;
}

namespace {

struct System {
    std::vector<cplx> pole, coef;
    std::vector<int> comp;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    Eigen::MatrixXcd m;
    NormalizationSet delta;
};

System assemble(int eps, const Pairs& d, const NormalizationSet& delta, double x, double t)
{
    System s;
    s.delta = delta;
    const std::size_t n = 2 * d.size();
    s.pole.resize(n);
    s.coef.resize(n);
    s.comp.resize(n);
    auto res = residue_coefficients(d, delta, x, t);
    for (std::size_t k = 0; k < d.size(); ++k) {
        cplx lk = d[k].lambda;
        cplx g = res[k].gamma;
        s.pole[2 * k] = lk;
        s.pole[2 * k + 1] = std::conj(lk);
        s.coef[2 * k + 1] = static_cast<double>(eps) * std::conj(g);
        if (!res[k].upper) {
            s.comp[2 * k] = 0;
            s.coef[2 * k] = lk * g;
            s.comp[2 * k + 1] = 1;
        } else {
            s.comp[2 * k] = 1;
            s.coef[2 * k] = g / lk;
            s.comp[2 * k + 1] = 0;
        }
    }
    s.m = Eigen::MatrixXcd::Identity(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t r = 0; r < n; ++r)
            if (s.comp[r] != s.comp[p])
                s.m(p, r) -= s.coef[r] / (s.pole[p] - s.pole[r]);
    s.lu.compute(s.m);
    return s;
}

Eigen::VectorXcd solve_row(const System& s, cplx a0, cplx a1, double& residual)
{
    const auto n = s.pole.size();
    Eigen::VectorXcd b(n);
    for (std::size_t p = 0; p < n; ++p)
        b(p) = s.comp[p] == 0 ? a1 : a0;
    Eigen::VectorXcd w = s.lu.solve(b);
    double denom = s.m.cwiseAbs().rowwise().sum().maxCoeff() * w.cwiseAbs().maxCoeff()
        + b.cwiseAbs().maxCoeff();
    residual = n ? (s.m * w - b).cwiseAbs().maxCoeff() / denom : 0.0;
    if (!w.allFinite() || residual > 1e-10)
        throw NumericalError("solve_reflectionless: linear system is ill-conditioned");
    return w;
}

std::array<cplx, 2> row_at(const System& s, const Eigen::VectorXcd& w, cplx a0, cplx a1, cplx lambda,
                           const Pairs& d)
{
    std::array<cplx, 2> c = {a0, a1};
    for (std::size_t p = 0; p < s.pole.size(); ++p) {
        if (lambda == s.pole[p])
            throw ValidationError("solve_reflectionless: evaluation point is a pole");
        c[s.comp[p]] += s.coef[p] * w(p) / (lambda - s.pole[p]);
    }
    cplx b = blaschke(lambda, s.delta, d);
    return {c[0] * b, c[1] / b};
}

cplx moment(const System& s, const Eigen::VectorXcd& w)
{
    cplx m = 0.0;
    for (std::size_t p = 0; p < s.pole.size(); ++p)
        if (s.comp[p] == 1)
            m += s.coef[p] * w(p);
    return 2.0 * I * m;
}

std::vector<NormalizationSet> candidates(const Pairs& d, double x, double t,
                                         const std::optional<NormalizationSet>& given)
{
    std::vector<NormalizationSet> c;
    if (given)
        c.push_back(*given);
    c.push_back(adaptive_normalization(d, x, t));
    if (t != 0.0) {
        int eta = t < 0 ? -1 : 1;
        c.push_back(choose_normalization(d, -x / (4.0 * t), eta));
        c.push_back(choose_normalization(d, -x / (4.0 * t), -eta));
    }
    c.push_back(make_set(d, [](std::size_t) { return false; }));
    c.push_back(make_set(d, [](std::size_t) { return true; }));
    return c;
}

template <class F>
auto with_retry(int eps, const Pairs& d, double x, double t, const std::optional<NormalizationSet>& given,
                F body)
{
    std::string last;
    for (auto& set : candidates(d, x, t, given)) {
        try {
            System s = assemble(eps, d, set, x, t);
            return body(s);
        } catch (const NumericalError& e) {
            last = e.what();
        }
    }
    throw NumericalError("solve_reflectionless: all normalizations failed (" + last + ")");
}

} // namespace

RowSolution solve_reflectionless(int eps, const Pairs& discrete, double x, double t,
                                 const std::vector<cplx>& eval_points, std::optional<NormalizationSet> delta)
{
    check_eps(eps);
    if (discrete.empty()) {
        RowSolution r;
        r.points = eval_points;
        r.row_values.assign(eval_points.size(), {1.0, 0.0});
        return r;
    }
    return with_retry(eps, discrete, x, t, delta, [&](const System& s) {
        RowSolution r;
        r.points = eval_points;
        r.delta = s.delta;
        auto w = solve_row(s, 1.0, 0.0, r.residual);
        r.moment12 = moment(s, w);
        for (auto z : eval_points)
            r.row_values.push_back(row_at(s, w, 1.0, 0.0, z, discrete));
        return r;
    });
}

std::vector<Eigen::Matrix2cd> solve_reflectionless_matrix(int eps, const Pairs& discrete, double x, double t,
                                                          const std::vector<cplx>& eval_points,
                                                          std::optional<NormalizationSet> delta)
{
    check_eps(eps);
    std::vector<Eigen::Matrix2cd> out;
    if (discrete.empty()) {
        out.assign(eval_points.size(), Eigen::Matrix2cd::Identity());
        return out;
    }
    return with_retry(eps, discrete, x, t, delta, [&](const System& s) {
        double res = 0.0;
        auto w1 = solve_row(s, 1.0, 0.0, res);
        cplx q = moment(s, w1);
        cplx pstar = 0.5 * I * static_cast<double>(eps) * std::conj(q);
        auto w2 = solve_row(s, pstar, 1.0, res);
        std::vector<Eigen::Matrix2cd> m;
        for (auto z : eval_points) {
            auto r1 = row_at(s, w1, 1.0, 0.0, z, discrete);
            auto r2 = row_at(s, w2, pstar, 1.0, z, discrete);
            Eigen::Matrix2cd n;
            n << r1[0], r1[1], r2[0], r2[1];
            m.push_back(n);
        }
        return m;
    });
}

double soliton_mass_to(cplx lambda, double y, int eps)
{
    double v = lambda.imag(), u = lambda.real(), a = std::abs(lambda);
    double k = std::sqrt((a + eps * u) / (a - eps * u));
    return 4.0 * (std::atan(k * std::tanh(2.0 * v * y)) + std::atan(k));
}

cplx one_soliton_closed_form(cplx lambda, cplx c, double x, double t, int eps)
{
    check_eps(eps);
    double u = lambda.real(), v = lambda.imag(), a = std::abs(lambda);
    if (!(v > 0.0) || c == 0.0)
        throw ValidationError("one_soliton: need Im lambda > 0 and C != 0");
    if (eps * u >= a)
        throw ValidationError("one_soliton: eps*u >= |lambda|");
    auto Q2 = [&](double y) {
        double ch = std::cosh(4.0 * v * y);
        return std::isfinite(ch) ? 8.0 * v * v / (a * ch - eps * u) : 0.0;
    };
    double x0 = std::log(a * std::norm(c) / (4.0 * v * v)) / (4.0 * v);
    double phi0 = std::arg(lambda) + std::arg(c) + 0.5 * pi;
    double y = x - x0 + 4.0 * u * t;
    // Q^2 < 16 v^2 e^{-4 v |y|} / a: the part below min(y, 0) - 10 / v is below 1e-17
    double lo = std::min(y, 0.0);
    double mass = integrate(Q2, lo - 10.0 / v, lo, 1e-12, "one_soliton");
    if (y > 0.0)
        mass += integrate(Q2, 0.0, y, 1e-12, "one_soliton");
    double phase = 4.0 * a * a * t - 2.0 * u * (x + 4.0 * u * t) - 0.25 * eps * mass - phi0;
    return std::sqrt(Q2(y)) * std::polar(1.0, phase);
}

cplx q_sol_at(int eps, const Pairs& discrete, double x, double t)
{
    return solve_reflectionless(eps, discrete, x, t, {}).moment12;
}

FieldGrid q_sol(int eps, const Pairs& discrete, double x0, double dx, std::size_t n, double t)
{
    std::vector<cplx> v(n);
    parallel_for(n, [&](std::size_t j) { v[j] = q_sol_at(eps, discrete, x0 + dx * static_cast<double>(j), t); });
    return FieldGrid(eps, x0, dx, std::move(v), true);
}

GaugeAtZero u_sol_at(int eps, const Pairs& discrete, double x, double t)
{
    auto r = solve_reflectionless(eps, discrete, x, t, {0.0});
    cplx n11 = r.row_values[0][0], n12 = r.row_values[0][1];
    GaugeAtZero g;
    g.q = r.moment12;
    g.phase = 1.0 / (n11 * n11);
    g.u = g.q * g.phase;
    g.tail_u = -n12 / n11;
    return g;
}

Pairs modulate_coefficients(const ScatteringData& d, const ConeFrame& frame, Modulation variant)
{
    Span s = minus_support(frame, d);
    const int eps = d.eps();
    Pairs out;
    for (const auto& p : d.discrete()) {
        if (variant == Modulation::hat && !frame.in_I(p.lambda.real()))
            continue;
        cplx integral = 0.0;
        if (s.b > s.a)
            integral = integrate(
                [&](double z) {
                    return cplx(std::log1p(-eps * z * std::norm(d.rho(z)))) / (z - p.lambda);
                },
                s.a, s.b, 1e-12, "modulate_coefficients");
        cplx lc = p.log_c() + (I / pi) * integral;
        if (variant == Modulation::hat)
            for (const auto& o : d.discrete())
                if (frame.excluded(o.lambda))
                    lc += 2.0 * std::log((p.lambda - o.lambda) / (p.lambda - std::conj(o.lambda)));
        out.push_back(DiscretePair::from_log(p.lambda, lc));
    }
    return out;
}

} // namespace dnls
