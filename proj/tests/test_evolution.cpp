#include "dnls/evolution.hpp"
#include "dnls/pde.hpp"
#include "dnls/scattering.hpp"
#include "dnls/soliton.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace dnls;
using namespace dnls::test;

namespace {

ScatteringData sample_data()
{
    std::vector<cplx> rho(41);
    for (auto& r : rho)
        r = std::polar(uniform(0.0, 0.3), uniform(-pi, pi));
    Pairs p{{cplx(uniform(-1.0, 1.0), uniform(0.3, 1.0)), std::polar(uniform(0.5, 2.0), uniform(-pi, pi))}};
    return ScatteringData(1, -2.0, 2.0, rho, p);
}

} // namespace

TEST_CASE("theta by substitution")
{
    CHECK(std::abs(theta(0.0, 1.0, 1.0) - (-2.0)) < 1e-15);
    CHECK(std::abs(theta(-4.0, 1.0, 1.0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(theta(1.0, 0.0, 1.0), ValidationError);
    CHECK(std::abs(t_theta(3.0, 2.0, I) - 2.0 * theta(3.0, 2.0, I)) < 1e-15);
}

TEST_CASE("stationary point of theta")
{
    double x = 3.0, t = 2.0, xi = -x / (4.0 * t), h = 1e-5;
    cplx d = (theta(x, t, xi + h) - theta(x, t, xi - h)) / (2.0 * h);
    CHECK(std::abs(d) < 1e-8);
}

TEST_CASE("evolution of the data")
{
    ScatteringData d = sample_data();
    ScatteringData e0 = evolve(d, 0.0);
    CHECK(e0.rho_samples() == d.rho_samples());
    CHECK(e0.discrete()[0].c() == d.discrete()[0].c());

    ScatteringData e = evolve(d, 1.7);
    CHECK(e.t_stamp() == 1.7);
    for (std::size_t j = 0; j < d.m(); ++j)
        CHECK(std::abs(e.rho_samples()[j]) == doctest::Approx(std::abs(d.rho_samples()[j])).epsilon(1e-14));
    for (double l : {-1.3, 0.2, 0.77})
        CHECK(std::abs(e.rho(l)) == doctest::Approx(std::abs(d.rho(l))).epsilon(1e-12));

    ScatteringData s = evolve(ScatteringData::reflectionless(1, {{I, 2.0 + I}}), pi / 4);
    CHECK(std::abs(s.discrete()[0].c() - (-(2.0 + I))) < 1e-14);
}

TEST_CASE("group property (property)")
{
    for (int k = 0; k < 20; ++k) {
        ScatteringData d = sample_data();
        double s = uniform(-50.0, 50.0), t = uniform(-50.0, 50.0);
        ScatteringData a = evolve(evolve(d, s), t), b = evolve(d, s + t);
        CHECK(a.t_stamp() == doctest::Approx(b.t_stamp()));
        for (std::size_t j = 0; j < d.m(); ++j)
            CHECK(std::abs(a.rho_samples()[j] - b.rho_samples()[j]) < 1e-10);
        cplx la = a.discrete()[0].log_c(), lb = b.discrete()[0].log_c();
        CHECK(std::abs(la.real() - lb.real()) < 1e-10 * std::max(1.0, std::abs(lb.real())));
        CHECK(std::abs(std::remainder(la.imag() - lb.imag(), 2 * pi)) < 1e-9);
        for (std::size_t j = 0; j < a.m(); ++j)
            CHECK(a.transmission(a.node(j)) > 0.0);
    }
}

TEST_CASE("large times stay representable")
{
    ScatteringData d = ScatteringData::reflectionless(1, {{0.5 + 3.0 * I, 1.0}});
    ScatteringData e = evolve(d, 1000.0);
    // |C e^{4i lambda^2 t}| = e^{-8 Re(lambda) Im(lambda) t} = e^{-12000}
    CHECK(e.discrete()[0].log_c().real() == doctest::Approx(-12000.0));
    CHECK(std::isfinite(std::abs(e.discrete()[0].mant)));
}

TEST_CASE("evolved data reconstruct the field at time t")
{
    Pairs p{{0.3 + 0.7 * I, 1.0 - 0.4 * I}, {-0.5 + 0.5 * I, 0.7}};
    auto d = ScatteringData::reflectionless(1, p);
    for (double t : {0.5, -2.0})
        for (double x : {-1.0, 0.3}) {
            cplx a = q_sol_at(1, p, x, t), b = q_sol_at(1, evolve(d, t).discrete(), x, 0.0);
            CHECK(std::abs(a - b) < 1e-10);
        }
}

TEST_CASE("evolution agrees with scattering of the evolved field")
{
    Pairs p{{0.4 + 0.8 * I, 1.0 + 0.5 * I}};
    double t = 0.4;
    FieldGrid qt = q_sol(-1, p, -30.0, 60.0 / 2047, 2048, t);
    auto dt = scatter(qt, {-2.0, 2.0, 0.1, 2.0}, {-1.0, 1.0, 3});
    auto ev = evolve(ScatteringData::reflectionless(-1, p), t);
    REQUIRE(dt.discrete().size() == 1);
    CHECK(std::abs(dt.discrete()[0].c() - ev.discrete()[0].c()) < 1e-6 * std::abs(ev.discrete()[0].c()));

    // radiation: PDE solve of a small datum, then scatter both ends
    FieldGrid q0 = make_field(1, -40.0, 40.0 - 80.0 / 1024, 1024,
                              [](double x) { return 0.3 * std::exp(-x * x / 2) * std::polar(1.0, 0.2 * x); });
    PdeSolver solver(q0.size(), q0.dx, 1);
    FieldGrid q1 = solver.solve(q0, 0.002, {0.5})[0].field;
    LambdaGrid g{-1.0, 1.0, 9};
    auto r0 = reflection(q0, g), r1 = reflection(q1, g);
    for (std::size_t j = 0; j < g.m; ++j) {
        double l = g.lo + (g.hi - g.lo) * double(j) / double(g.m - 1);
        CHECK(std::abs(r1[j] - r0[j] * std::polar(1.0, -4.0 * l * l * 0.5)) < 1e-6);
    }
}
