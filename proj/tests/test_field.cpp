#include "dnls/io.hpp"
#include "dnls/soliton.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace dnls;
using namespace dnls::test;

TEST_CASE("gauges of the zero field")
{
    FieldGrid z(1, -5.0, 0.1, std::vector<cplx>(101));
    CHECK(gauge_forward(z).max_abs() == 0.0);
    CHECK(gauge_inverse(z).max_abs() == 0.0);
}

TEST_CASE("gauge round trip on the lambda = i soliton")
{
    FieldGrid q = q_sol(1, {{I, 2.0 * I}}, -30.0, 60.0 / 2047, 2048, 0.0);
    FieldGrid u = gauge_inverse(q);
    CHECK(sup_diff(gauge_inverse(gauge_forward(u)), u) < 1e-10);
    CHECK(sup_diff(gauge_forward(gauge_inverse(q)), q) < 1e-10);
    for (std::size_t j = 0; j < q.size(); ++j)
        CHECK(std::abs(u.values[j]) == doctest::Approx(std::abs(q.values[j])).epsilon(1e-14));
}

TEST_CASE("left-end phase for total mass 2 pi")
{
    FieldGrid q = q_sol(1, {{I, 2.0 * I}}, -30.0, 60.0 / 4095, 4096, 0.0);
    CHECK(cumulative_mass(q)[0] == doctest::Approx(2.0 * pi).epsilon(1e-8));
    FieldGrid u = gauge_inverse(q);
    CHECK(std::abs(u.values[0] / q.values[0] - 1.0) < 1e-7);
    // in the middle the phase is nontrivial
    CHECK(std::abs(u.values[2048] / q.values[2048] - 1.0) > 0.1);
}

TEST_CASE("gauges are pointwise isometries (property)")
{
    for (int k = 0; k < 20; ++k) {
        int eps = k % 2 ? 1 : -1;
        FieldGrid u = random_bump(eps, uniform(0.1, 1.5));
        FieldGrid q = gauge_forward(u);
        CHECK(sup_diff(gauge_inverse(q), u) < 1e-12);
        for (std::size_t j = 0; j < u.size(); j += 17)
            CHECK(std::abs(q.values[j]) == doctest::Approx(std::abs(u.values[j])).epsilon(1e-14));
    }
}

TEST_CASE("tail integral")
{
    FieldGrid z(1, -5.0, 0.1, std::vector<cplx>(101));
    CHECK(tail_integral(z, 0.0, Weight::abs2) == cplx(0.0));
    double s = 0.3;
    auto pdf = [&](double x) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * pi)); };
    FieldGrid f = make_field(1, -10.0, 10.0, 2001, [&](double x) { return cplx(std::sqrt(pdf(x))); });
    FieldGrid g = make_field(1, -10.0, 10.0, 2001, [&](double x) { return cplx(pdf(x)); });
    CHECK(std::abs(tail_integral(f, -5.0, Weight::abs2) - 1.0) < 1e-6);
    CHECK(std::abs(tail_integral(g, -5.0, Weight::plain) - 1.0) < 1e-6);
    CHECK(tail_integral(f, 10.0, Weight::abs2) == cplx(0.0));
    CHECK_THROWS_AS(tail_integral(f, 11.0, Weight::abs2), ValidationError);
}

TEST_CASE("field validation")
{
    CHECK_THROWS_AS(FieldGrid(1, 0.0, 0.1, std::vector<cplx>(7)), ValidationError);
    CHECK_THROWS_AS(FieldGrid(1, 0.0, 0.0, std::vector<cplx>(10)), ValidationError);
    CHECK_THROWS_AS(FieldGrid(2, 0.0, 0.1, std::vector<cplx>(10)), ValidationError);
    std::vector<cplx> v(10, 0.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(FieldGrid(1, 0.0, 0.1, v), ValidationError);
    FieldGrid flat(1, 0.0, 0.1, std::vector<cplx>(10, 1.0));
    CHECK_THROWS_AS(flat.check_tail(), ValidationError);
    CHECK_THROWS_AS(gauge_forward(flat), ValidationError);
}

TEST_CASE("scattering data validation")
{
    CHECK_NOTHROW(ScatteringData(1, -1.0, 1.0, std::vector<cplx>(5, 0.5), {}));
    // 1 - lambda |rho|^2 = 1 - 1 * 1.44 < 0 at lambda = 1
    CHECK_THROWS_AS(ScatteringData(1, -1.0, 1.0, std::vector<cplx>(5, 1.2), {}), ValidationError);
    // same samples are fine at lambda = 1 for eps = -1 but fail at lambda = -1
    CHECK_THROWS_AS(ScatteringData(-1, -1.0, 1.0, std::vector<cplx>(5, 1.2), {}), ValidationError);
    CHECK_THROWS_AS(ScatteringData::reflectionless(1, {{cplx(0.0, -1.0), 1.0}}), ValidationError);
    CHECK_THROWS_AS(ScatteringData::reflectionless(1, {{I, 1.0}, {I, 2.0}}), ValidationError);
    CHECK(ScatteringData::reflectionless(1, {{I, 1.0}, {1.0 + 0.5 * I, 2.0}}).min_gap() == doctest::Approx(1.0));
}

TEST_CASE("serialization round trips bitwise")
{
    FieldGrid f = random_bump(-1, 0.7);
    FieldGrid g = deserialize_field(serialize(f));
    CHECK(g.eps == f.eps);
    CHECK(g.x0 == f.x0);
    CHECK(g.dx == f.dx);
    CHECK(g.whole_line == f.whole_line);
    CHECK(g.values == f.values);

    std::vector<cplx> rho(31);
    for (std::size_t j = 0; j < rho.size(); ++j)
        rho[j] = std::polar(0.1 * uniform(0.0, 1.0), uniform(-pi, pi));
    ScatteringData d(1, -3.0, 3.0, rho, {{0.5 + 0.8 * I, cplx(0.3, -1.1)}}, 2.5);
    ScatteringData e = deserialize_scattering(serialize(d));
    CHECK(e.eps() == d.eps());
    CHECK(e.lo() == d.lo());
    CHECK(e.hi() == d.hi());
    CHECK(e.t_stamp() == d.t_stamp());
    CHECK(e.rho_samples() == d.rho_samples());
    REQUIRE(e.discrete().size() == 1);
    CHECK(e.discrete()[0].lambda == d.discrete()[0].lambda);
    CHECK(e.discrete()[0].c() == d.discrete()[0].c());
}

TEST_CASE("parse errors")
{
    auto m = validation_message([] { deserialize_field(R"({"x0":0,"dx":1,"re":[],"im":[],"whole_line":true})"); });
    CHECK(m.find("\"eps\"") != std::string::npos);
    CHECK_THROWS_AS(deserialize_field(R"({"eps":2,"x0":0,"dx":1,"re":[0,0,0,0,0,0,0,0],"im":[0,0,0,0,0,0,0,0],"whole_line":true})"),
                    ValidationError);
    m = validation_message(
        [] { deserialize_field(R"({"eps":1,"x0":0,"dx":1,"re":[],"im":[],"whole_line":true,"extra":1})"); });
    CHECK(m.find("extra") != std::string::npos);
    CHECK_THROWS_AS(deserialize_scattering("{not json"), ValidationError);
}
