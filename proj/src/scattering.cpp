#include "dnls/scattering.hpp"
#include "dnls/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace dnls {

namespace odeint = boost::numeric::odeint;

namespace {

using Col = std::array<cplx, 2>;
using Full = std::array<cplx, 4>;

template <class State, class Rhs>
State run(const JostOptions& opt, Rhs rhs, State s, double from, double to)
{
    if (from == to)
        return s;
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opt.atol, opt.rtol);
    double h0 = to > from ? 1e-2 : -1e-2;
    try {
        odeint::integrate_adaptive(stepper, rhs, s, from, to, h0);
    } catch (const std::exception& e) {
        throw NumericalError(std::string("jost integration failed near x = ") + std::to_string(from)
                             + ": " + e.what());
    }
    for (auto& v : s)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("jost integration produced non-finite values");
    return s;
}

} // namespace

JostSolver::JostSolver(const FieldGrid& q, JostOptions opt)
    : pot_(q), opt_(opt), x_m_(0.5 * (q.x0 + q.x_end()))
{
    if (!q.whole_line)
        throw ValidationError("scattering: field must be whole-line");
    q.check_tail();
}

Mat2 JostSolver::integrate_to(cplx lambda, Side side, double x) const
{
    if (lambda.imag() < 0.0)
        throw ValidationError("integrate_jost: Im lambda must be >= 0");
    const double eps = pot_.eps();
    const cplx il2 = 2.0 * I * lambda;
    const double from = side == Side::left ? pot_.lo() : pot_.hi();
    x = std::clamp(x, pot_.lo(), pot_.hi());
    Mat2 n = Mat2::Identity();
    auto col1 = [&](const Col& s, Col& ds, double y) {
        cplx q = pot_(y);
        cplx c = 0.5 * I * eps * std::norm(q);
        ds[0] = q * s[1] - c * s[0];
        ds[1] = il2 * s[1] + eps * lambda * std::conj(q) * s[0] + c * s[1];
    };
    auto col2 = [&](const Col& s, Col& ds, double y) {
        cplx q = pot_(y);
        cplx c = 0.5 * I * eps * std::norm(q);
        ds[0] = -il2 * s[0] + q * s[1] - c * s[0];
        ds[1] = eps * lambda * std::conj(q) * s[0] + c * s[1];
    };
    bool real = lambda.imag() == 0.0;
    if (real || side == Side::left) {
        auto s = run(opt_, col1, Col{1.0, 0.0}, from, x);
        n(0, 0) = s[0];
        n(1, 0) = s[1];
    } else {
        n(0, 0) = n(1, 0) = 0.0;
    }
    if (real || side == Side::right) {
        auto s = run(opt_, col2, Col{0.0, 1.0}, from, x);
        n(0, 1) = s[0];
        n(1, 1) = s[1];
    } else {
        n(0, 1) = n(1, 1) = 0.0;
    }
    return n;
}

Mat2 JostSolver::integrate(cplx lambda, Side side) const { return integrate_to(lambda, side, x_m_); }

JostMatrices JostSolver::jost(cplx lambda) const
{
    JostMatrices j;
    j.lambda = lambda;
    j.x_m = x_m_;
    j.full = lambda.imag() == 0.0;
    j.n_minus = integrate(lambda, Side::left);
    j.n_plus = integrate(lambda, Side::right);
    return j;
}

TransitionEntries JostSolver::transition(double lambda) const
{
    auto j = jost(lambda);
    const Mat2& a = j.n_minus;
    const Mat2& b = j.n_plus;
    TransitionEntries t;
    t.alpha = b(0, 0) * a(1, 1) - b(1, 0) * a(0, 1);
    t.alpha_breve = a(0, 0) * b(1, 1) - a(1, 0) * b(0, 1);
    t.beta = (b(0, 1) * a(1, 1) - b(1, 1) * a(0, 1)) * std::exp(2.0 * I * lambda * x_m_);
    t.beta_breve = (a(0, 0) * b(1, 0) - a(1, 0) * b(0, 0)) * std::exp(-2.0 * I * lambda * x_m_);
    return t;
}

cplx JostSolver::alpha_breve(cplx lambda) const
{
    Mat2 a = integrate(lambda, Side::left);
    Mat2 b = integrate(lambda, Side::right);
    return a(0, 0) * b(1, 1) - a(1, 0) * b(0, 1);
}

cplx JostSolver::alpha_breve_prime(cplx lambda, double r, int points) const
{
    std::vector<cplx> vals(points);
    parallel_for(points, [&](std::size_t k) {
        cplx e = std::polar(1.0, 2.0 * pi * static_cast<double>(k) / points);
        vals[k] = alpha_breve(lambda + r * e) / e;
    });
    cplx sum = 0.0;
    for (auto v : vals)
        sum += v;
    return sum / (static_cast<double>(points) * r);
}

std::vector<cplx> JostSolver::reflection(const LambdaGrid& g) const
{
    if (g.m < 2 || !(g.hi > g.lo))
        throw ValidationError("reflection: invalid lambda grid");
    std::vector<cplx> rho(g.m);
    std::vector<double> defect(g.m);
    const double h = (g.hi - g.lo) / static_cast<double>(g.m - 1);
    parallel_for(g.m, [&](std::size_t k) {
        double l = g.lo + h * static_cast<double>(k);
        auto t = transition(l);
        rho[k] = t.beta / t.alpha;
        defect[k] = 1.0 - eps() * l * std::norm(rho[k]);
    });
    for (std::size_t k = 0; k < g.m; ++k)
        if (!(defect[k] > 0.0))
            throw NumericalError("reflection: 1 - eps*lambda*|rho|^2 <= 0 at lambda = "
                                 + std::to_string(g.lo + h * static_cast<double>(k))
                                 + " (spectral singularity, data outside P)");
    return rho;
}

namespace {

struct Node {
    cplx z, f;
};

class ZeroFinder {
public:
    explicit ZeroFinder(const JostSolver& s) : s_(s) {}

    std::vector<cplx> find(const Box& b)
    {
        std::vector<cplx> out;
        search(b, winding(b), 0, out);
        std::sort(out.begin(), out.end(), [](cplx a, cplx c) {
            return a.real() != c.real() ? a.real() < c.real() : a.imag() < c.imag();
        });
        return out;
    }

private:
    const JostSolver& s_;

    cplx f(cplx z) const { return s_.alpha_breve(z); }

    double edge(const Node& a, const Node& b, int depth, double scale) const
    {
        if (std::abs(a.f) < 1e-9 * scale || std::abs(b.f) < 1e-9 * scale)
            throw NumericalError("find_eigenvalues: contour passes through a zero");
        double d = std::arg(b.f / a.f);
        if (std::abs(d) <= pi / 6)
            return d;
        if (depth > 14)
            throw NumericalError("find_eigenvalues: winding number unstable under refinement "
                                 "(contour too close to a zero)");
        cplx zm = 0.5 * (a.z + b.z);
        Node m{zm, f(zm)};
        return edge(a, m, depth + 1, scale) + edge(m, b, depth + 1, scale);
    }

    int winding(const Box& b) const
    {
        const int per = 8;
        std::array<cplx, 5> c = {cplx(b.re1, b.im1), cplx(b.re2, b.im1), cplx(b.re2, b.im2),
                                 cplx(b.re1, b.im2), cplx(b.re1, b.im1)};
        std::vector<cplx> zs;
        for (int e = 0; e < 4; ++e)
            for (int k = 0; k < per; ++k)
                zs.push_back(c[e] + (c[e + 1] - c[e]) * (static_cast<double>(k) / per));
        std::vector<Node> nodes(zs.size());
        parallel_for(zs.size(), [&](std::size_t k) { nodes[k] = {zs[k], f(zs[k])}; });
        double scale = 0.0;
        for (auto& n : nodes)
            scale = std::max(scale, std::abs(n.f));
        double total = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k)
            total += edge(nodes[k], nodes[(k + 1) % nodes.size()], 0, scale);
        double w = total / (2.0 * pi);
        long r = std::lround(w);
        if (std::abs(w - static_cast<double>(r)) > 0.05 || r < 0)
            throw NumericalError("find_eigenvalues: non-integer winding number");
        return static_cast<int>(r);
    }

    bool newton(const Box& b, cplx& z) const
    {
        double size = std::min(b.re2 - b.re1, b.im2 - b.im1);
        double margin = 0.25 * size;
        for (int it = 0; it < 50; ++it) {
            cplx fz = f(z);
            if (std::abs(fz) <= 1e-10)
                return true;
            double r = std::min({0.25 * size, 0.5 * z.imag(), 0.1});
            cplx d = s_.alpha_breve_prime(z, r, 32);
            if (d == 0.0)
                return false;
            cplx step = fz / d;
            z -= step;
            if (z.real() < b.re1 - margin || z.real() > b.re2 + margin || z.imag() < b.im1 - margin
                || z.imag() > b.im2 + margin || z.imag() <= 0.0)
                return false;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z)))
                return std::abs(f(z)) <= 1e-9;
        }
        return false;
    }

    static bool inside(const Box& b, cplx z)
    {
        return z.real() >= b.re1 && z.real() <= b.re2 && z.imag() >= b.im1 && z.imag() <= b.im2;
    }

    void search(const Box& b, int w, int depth, std::vector<cplx>& out) const
    {
        if (w == 0)
            return;
        double size = std::min(b.re2 - b.re1, b.im2 - b.im1);
        if (w == 1) {
            cplx z(0.5 * (b.re1 + b.re2), 0.5 * (b.im1 + b.im2));
            if (newton(b, z) && inside(b, z)) {
                out.push_back(z);
                return;
            }
        }
        if (size < 1e-7 || depth > 40)
            throw NumericalError(w > 1 ? "find_eigenvalues: zero of multiplicity > 1 "
                                         "(non-generic data)"
                                       : "find_eigenvalues: Newton refinement failed");
        double rm = b.re1 + 0.4637 * (b.re2 - b.re1);
        double im = b.im1 + 0.5279 * (b.im2 - b.im1);
        std::array<Box, 4> kids = {Box{b.re1, rm, b.im1, im}, Box{rm, b.re2, b.im1, im},
                                   Box{b.re1, rm, im, b.im2}, Box{rm, b.re2, im, b.im2}};
        int total = 0;
        std::array<int, 4> ws{};
        for (int k = 0; k < 4; ++k)
            total += ws[k] = winding(kids[k]);
        if (total != w)
            throw NumericalError("find_eigenvalues: winding numbers of sub-cells do not add up");
        for (int k = 0; k < 4; ++k)
            search(kids[k], ws[k], depth + 1, out);
    }
};

} // namespace

std::vector<cplx> JostSolver::find_eigenvalues(const Box& box) const
{
    if (!(box.re2 > box.re1) || !(box.im2 > box.im1))
        throw ValidationError("find_eigenvalues: empty box");
    if (box.im1 < opt_.im_floor)
        throw ValidationError("find_eigenvalues: box must satisfy Im lambda >= "
                              + std::to_string(opt_.im_floor));
    return ZeroFinder(*this).find(box);
}

cplx JostSolver::norming_constant(cplx lk, double d_gap) const
{
    Mat2 a = integrate(lk, Side::left);
    Mat2 b = integrate(lk, Side::right);
    Eigen::Vector2cd psi_m = a.col(0) * std::exp(-I * lk * x_m_);
    Eigen::Vector2cd psi_p = b.col(1) * std::exp(I * lk * x_m_);
    cplx bk = psi_p.dot(psi_m) / psi_p.squaredNorm();
    double defect = (psi_m - bk * psi_p).norm() / psi_m.norm();
    if (defect > 1e-6)
        throw NumericalError("norming_constant: Jost columns are not proportional (defect "
                             + std::to_string(defect) + "); not an eigenvalue");
    double r = std::min(0.25 * d_gap, 0.5 * lk.imag());
    // The inverse problem's residue at lambda_k is lambda_k C_k, so C_k = B_k / (lambda_k alpha_breve').
    return bk / (lk * alpha_breve_prime(lk, r, 64));
}

ScatteringData JostSolver::scatter(const Box& box, const LambdaGrid& g) const
{
    auto zeros = find_eigenvalues(box);
    std::vector<DiscretePair> disc;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        double gap = 2.0 * zeros[k].imag();
        for (std::size_t j = 0; j < zeros.size(); ++j)
            if (j != k)
                gap = std::min(gap, std::abs(zeros[k] - zeros[j]));
        disc.emplace_back(zeros[k], norming_constant(zeros[k], gap));
    }
    return ScatteringData(eps(), g.lo, g.hi, reflection(g), std::move(disc), 0.0);
}

Mat2 integrate_jost(const FieldGrid& q, cplx lambda, Side side)
{
    return JostSolver(q).integrate(lambda, side);
}

TransitionEntries transition_matrix(const FieldGrid& q, double lambda)
{
    return JostSolver(q).transition(lambda);
}

std::vector<cplx> reflection(const FieldGrid& q, const LambdaGrid& g)
{
    return JostSolver(q).reflection(g);
}

cplx alpha_breve(const FieldGrid& q, cplx lambda) { return JostSolver(q).alpha_breve(lambda); }

std::vector<cplx> find_eigenvalues(const FieldGrid& q, const Box& box)
{
    return JostSolver(q).find_eigenvalues(box);
}

cplx norming_constant(const FieldGrid& q, cplx lambda_k, double d_gap)
{
    return JostSolver(q).norming_constant(lambda_k, d_gap);
}

ScatteringData scatter(const FieldGrid& q, const Box& box, const LambdaGrid& g)
{
    return JostSolver(q).scatter(box, g);
}

cplx born_reflection(const FieldGrid& q, double lambda)
{
    cplx sum = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        double w = (j == 0 || j + 1 == q.size()) ? 0.5 : 1.0;
        sum += w * std::exp(2.0 * I * lambda * q.x(j)) * q.values[j];
    }
    return -sum * q.dx;
}

} // namespace dnls
