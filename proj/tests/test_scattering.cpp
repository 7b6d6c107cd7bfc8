#include "dnls/scattering.hpp"
#include "dnls/soliton.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace dnls;
using namespace dnls::test;

namespace {

FieldGrid soliton_field(int eps, const Pairs& p, double half = 30.0, std::size_t n = 2048)
{
    return q_sol(eps, p, -half, 2.0 * half / static_cast<double>(n - 1), n, 0.0);
}

const Box box{-3.0, 3.0, 0.05, 3.0};

// Argument principle for alpha_breve along the box boundary.
int winding(const JostSolver& s, const Box& b, int per_side = 200)
{
    std::vector<cplx> corners{{b.re1, b.im1}, {b.re2, b.im1}, {b.re2, b.im2}, {b.re1, b.im2}};
    double total = 0.0;
    cplx prev = s.alpha_breve(corners[0]);
    for (int side = 0; side < 4; ++side)
        for (int k = 1; k <= per_side; ++k) {
            cplx z = corners[side] + (corners[(side + 1) % 4] - corners[side]) * (double(k) / per_side);
            cplx v = s.alpha_breve(z);
            total += std::arg(v / prev);
            prev = v;
        }
    return static_cast<int>(std::lround(total / (2 * pi)));
}

} // namespace

TEST_CASE("zero potential")
{
    FieldGrid z(1, -10.0, 0.05, std::vector<cplx>(401));
    for (cplx l : {cplx(0.3), cplx(-1.0, 0.0), cplx(0.5, 0.7)}) {
        Mat2 n = integrate_jost(z, l, Side::left);
        if (l.imag() == 0.0)
            CHECK((n - Mat2::Identity()).norm() < 1e-14);
        else
            CHECK(std::abs(n(0, 0) - 1.0) < 1e-14);
    }
    auto t = transition_matrix(z, 0.4);
    CHECK(std::abs(t.alpha - 1.0) < 1e-14);
    CHECK(std::abs(t.alpha_breve - 1.0) < 1e-14);
    CHECK(std::abs(t.beta) < 1e-14);
    CHECK(std::abs(t.beta_breve) < 1e-14);
    for (cplx r : reflection(z, {-2.0, 2.0, 11}))
        CHECK(std::abs(r) < 1e-14);
    CHECK(std::abs(alpha_breve(z, {0.3, 0.4}) - 1.0) < 1e-14);
    CHECK(find_eigenvalues(z, box).empty());
    auto d = scatter(z, box, {-2.0, 2.0, 11});
    CHECK(d.discrete().empty());
    CHECK(!d.has_radiation());
}

TEST_CASE("unit determinant and real-axis symmetries (property)")
{
    for (int k = 0; k < 6; ++k) {
        int eps = k % 2 ? 1 : -1;
        FieldGrid q = random_bump(eps, uniform(0.2, 0.8));
        JostSolver s(q);
        for (Side side : {Side::left, Side::right})
            CHECK(std::abs(s.integrate(0.3, side).determinant() - 1.0) < 1e-9);
        double l = uniform(-2.0, 2.0);
        auto t = s.transition(l);
        CHECK(std::abs(t.alpha * t.alpha_breve - t.beta * t.beta_breve - 1.0) < 1e-8);
        CHECK(std::abs(t.alpha_breve - std::conj(t.alpha)) < 1e-8);
        CHECK(std::abs(t.beta_breve - eps * l * std::conj(t.beta)) < 1e-8);
        cplx rho = s.reflection({l, l + 1.0, 2})[0];
        CHECK(std::abs(1.0 - eps * l * std::norm(rho) - 1.0 / std::norm(t.alpha)) < 1e-8);
    }
}

TEST_CASE("lambda = 0 columns in closed form")
{
    for (int eps : {1, -1}) {
        FieldGrid q = make_field(eps, -20.0, 20.0, 801, [](double x) { return 0.6 * std::exp(-x * x) * std::polar(1.0, 0.5 * x); });
        JostSolver s(q);
        for (double x : {-3.0, 0.0, 0.5, 2.0}) {
            Mat2 n = s.integrate_to(0.0, Side::right, x);
            double tail = 0.36 * std::sqrt(pi / 2) * 0.5 * std::erfc(std::sqrt(2.0) * x);
            CHECK(std::abs(n(1, 0)) < 1e-12);
            CHECK(std::abs(n(0, 0) - std::exp(0.5 * I * double(eps) * tail)) < 1e-9);
            CHECK(std::abs(n.determinant() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("lambda = i soliton")
{
    FieldGrid q = soliton_field(1, {{I, 2.0 * I}});
    JostSolver s(q);
    auto t = s.transition(0.7);
    CHECK(std::abs(t.alpha * t.alpha_breve - t.beta * t.beta_breve - 1.0) < 1e-8);
    for (cplx r : s.reflection({-3.0, 3.0, 25}))
        CHECK(std::abs(r) < 1e-6);
    for (cplx l : {cplx(0.5, 0.5), cplx(-1.0, 2.0), cplx(0.1, 0.3)})
        CHECK(std::abs(s.alpha_breve(l) - (l - I) / (l + I)) < 1e-6);
    // alpha_breve(iy) - 1 = -2/(y + 1) exactly
    CHECK(std::abs(s.alpha_breve(50.0 * I) - 49.0 / 51.0) < 1e-6);
    CHECK(std::abs(s.alpha_breve(1e4 * I) - 1.0) < 2.1e-4);
    CHECK(std::abs(s.norming_constant(I, 2.0) - 2.0 * I) < 1e-6);
    auto d = s.scatter(box, {-3.0, 3.0, 61});
    REQUIRE(d.discrete().size() == 1);
    CHECK(std::abs(d.discrete()[0].lambda - I) < 1e-6);
    CHECK(std::abs(d.discrete()[0].c() - 2.0 * I) < 1e-6);
}

TEST_CASE("eigenvalues of one- and two-soliton fields")
{
    FieldGrid q1 = soliton_field(1, {{0.5 + 0.8 * I, 1.0}});
    auto z1 = find_eigenvalues(q1, box);
    REQUIRE(z1.size() == 1);
    CHECK(std::abs(z1[0] - (0.5 + 0.8 * I)) < 1e-6);

    Pairs p{{1.0 + I, 1.0}, {-1.0 + I, 0.5 + 0.3 * I}};
    FieldGrid q2 = soliton_field(-1, p);
    JostSolver s(q2);
    CHECK(winding(s, box) == 2);
    auto d = s.scatter(box, {-3.0, 3.0, 31});
    REQUIRE(d.discrete().size() == 2);
    for (auto& want : p) {
        bool found = false;
        for (auto& got : d.discrete())
            if (std::abs(got.lambda - want.lambda) < 1e-6) {
                found = true;
                CHECK(std::abs(got.c() - want.c()) < 1e-5 * std::abs(want.c()));
            }
        CHECK(found);
    }
}

TEST_CASE("norming constant under a spatial shift")
{
    cplx l = 0.3 + 0.7 * I, c = 1.0 - 0.4 * I;
    double sft = 1.0;
    FieldGrid q = soliton_field(1, {{l, c}});
    FieldGrid qs = make_field(1, q.x0, q.x_end(), q.size(), [&](double x) { return q_sol_at(1, {{l, c}}, x - sft, 0.0); });
    cplx c0 = norming_constant(q, l, 1.4), c1 = norming_constant(qs, l, 1.4);
    CHECK(std::abs(c1 / c0 - std::exp(-2.0 * I * l * sft)) < 1e-6);
}

TEST_CASE("small amplitude: first Born term")
{
    FieldGrid q = make_field(1, -15.0, 15.0, 1201, [](double x) { return 1e-3 * std::exp(-x * x / 2) * std::polar(1.0, 0.4 * x); });
    LambdaGrid g{-1.0, 1.0, 9};
    auto r = reflection(q, g);
    for (std::size_t j = 0; j < g.m; ++j) {
        double l = g.lo + (g.hi - g.lo) * double(j) / double(g.m - 1);
        cplx born = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k)
            born -= (k == 0 || k + 1 == q.size() ? 0.5 : 1.0) * q.dx * std::exp(2.0 * I * l * q.x(k)) * q.values[k];
        CHECK(std::abs(r[j] - born) <= 0.05 * std::abs(born));
    }
}

TEST_CASE("small Gaussian has no eigenvalues and rho in P")
{
    FieldGrid q = make_field(1, -20.0, 20.0, 801, [](double x) { return 0.3 * std::exp(-x * x / 4); });
    JostSolver s(q);
    CHECK(winding(s, box) == 0);
    auto d = s.scatter(box, {-4.0, 4.0, 81});
    CHECK(d.discrete().empty());
    for (std::size_t j = 0; j < d.m(); ++j)
        CHECK(d.transmission(d.node(j)) > 0.0);
}

TEST_CASE("round trip for random reflectionless data (property)")
{
    for (int k = 0; k < 3; ++k) {
        int eps = k % 2 ? 1 : -1;
        Pairs p;
        int n = 1 + k;
        for (int j = 0; j < n; ++j)
            p.emplace_back(cplx(-1.5 + 3.0 * (j + uniform(0.2, 0.8)) / n, uniform(0.5, 1.0)),
                           std::polar(uniform(0.5, 2.0), uniform(-pi, pi)));
        FieldGrid q = soliton_field(eps, p);
        auto d = scatter(q, box, {-3.0, 3.0, 31});
        REQUIRE(d.discrete().size() == p.size());
        for (auto& want : p)
            for (auto& got : d.discrete())
                if (std::abs(got.lambda - want.lambda) < 1e-3) {
                    CHECK(std::abs(got.lambda - want.lambda) < 1e-5);
                    CHECK(std::abs(got.c() - want.c()) < 1e-5 * std::max(1.0, std::abs(want.c())));
                }
        for (cplx r : d.rho_samples())
            CHECK(std::abs(r) < 1e-5);
    }
}
