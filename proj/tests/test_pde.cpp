#include "dnls/io.hpp"
#include "dnls/pde.hpp"
#include "dnls/soliton.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace dnls;
using namespace dnls::test;

namespace {

FieldGrid periodic(int eps, std::size_t n, double len, const auto& g)
{
    double dx = len / static_cast<double>(n);
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = g(-len / 2.0 + dx * static_cast<double>(j));
    return FieldGrid(eps, -len / 2.0, dx, std::move(v), false);
}

// x_j -> -x_j on the periodic grid, then conjugate
FieldGrid reflect_conj(const FieldGrid& q)
{
    FieldGrid r = q;
    const std::size_t n = q.size();
    for (std::size_t j = 0; j < n; ++j)
        r.values[j] = std::conj(q.values[(n - j) % n]);
    return r;
}

std::vector<cplx> dft(const std::vector<cplx>& v, int sign)
{
    const std::size_t n = v.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            out[k] += v[j] * std::polar(1.0, sign * 2.0 * pi * double(j * k % n) / double(n));
    return out;
}

// trigonometric interpolant of periodic samples
double interp_abs(const FieldGrid& q, const std::vector<cplx>& hat, double x)
{
    const auto n = static_cast<long>(q.size());
    const double len = q.dx * double(n);
    cplx s = 0.0;
    for (long k = 0; k < n; ++k) {
        long m = k > n / 2 ? k - n : k;
        if (2 * k == n)
            continue;
        s += hat[k] * std::polar(1.0, 2.0 * pi * double(m) * (x - q.x0) / len);
    }
    return std::abs(s) / double(n);
}

// the largest |q| within +-w of c, by golden section on the interpolant
double peak_near(const FieldGrid& q, const std::vector<cplx>& hat, double c, double w)
{
    double best = c, bv = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
        if (std::abs(q.x(j) - c) <= w && std::abs(q.values[j]) > bv) {
            bv = std::abs(q.values[j]);
            best = q.x(j);
        }
    double a = best - q.dx, b = best + q.dx, g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 60; ++it) {
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        if (interp_abs(q, hat, x1) > interp_abs(q, hat, x2))
            b = x2;
        else
            a = x1;
    }
    return interp_abs(q, hat, 0.5 * (a + b));
}

} // namespace

TEST_CASE("zero field stays zero")
{
    FieldGrid z = periodic(1, 64, 20.0, [](double) { return cplx(0.0); });
    auto st = PdeSolver(64, z.dx, 1).solve(z, 0.01, {0.5, -0.5});
    for (auto& s : st) {
        CHECK(s.field.max_abs() == 0.0);
        CHECK(s.drift() == 0.0);
    }
}

TEST_CASE("snapshot at t = 0 is the initial datum")
{
    FieldGrid q = periodic(-1, 128, 30.0, [](double x) { return 0.5 * std::exp(-x * x) * std::polar(1.0, x); });
    auto st = PdeSolver(128, q.dx, -1).solve(q, 0.01, {0.0, 0.1});
    CHECK(st[0].field.values == q.values);
    CHECK(st[0].t == 0.0);
    CHECK(st[1].t == 0.1);
}

TEST_CASE("tiny amplitude follows the linear Fourier multiplier")
{
    const std::size_t n = 256;
    const double len = 40.0, t = 0.7;
    FieldGrid q = periodic(1, n, len, [](double x) { return 1e-4 * std::exp(-x * x / 2) * std::polar(1.0, 0.8 * x); });
    auto hat = dft(q.values, -1);
    for (std::size_t k = 0; k < n; ++k) {
        auto m = static_cast<long>(k) > static_cast<long>(n / 2) ? static_cast<long>(k) - static_cast<long>(n) : static_cast<long>(k);
        double kk = 2.0 * pi * double(m) / len;
        hat[k] *= std::polar(1.0, -kk * kk * t) / double(n);
    }
    auto want = dft(hat, 1);
    auto got = PdeSolver(n, q.dx, 1).solve(q, 0.001, {t})[0].field;
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        m = std::max(m, std::abs(got.values[j] - want[j]));
    CHECK(m < 1e-6 * q.max_abs());
}

TEST_CASE("one soliton against the closed form")
{
    const cplx lam(0.3, 0.6), c(1.0, 0.2);
    const double t = 5.0;
    FieldGrid q0 = periodic(1, 4096, 100.0, [&](double x) { return one_soliton_closed_form(lam, c, x, 0.0, 1); });
    auto s = PdeSolver(4096, q0.dx, 1).solve(q0, 0.001, {t})[0];
    double m = 0.0;
    for (std::size_t j = 0; j < s.field.size(); ++j)
        m = std::max(m, std::abs(s.field.values[j] - one_soliton_closed_form(lam, c, s.field.x(j), t, 1)));
    CHECK(m <= 1e-5);
    CHECK(s.drift() <= 1e-6);
}

TEST_CASE("time reversal symmetry")
{
    for (int eps : {1, -1}) {
        const std::size_t n = 256;
        FieldGrid q0 = periodic(eps, n, 40.0, [](double x) { return 0.6 * std::exp(-x * x / 3) * std::polar(1.0, 0.3 * x); });
        PdeSolver solver(n, q0.dx, eps);
        FieldGrid q1 = solver.solve(q0, 0.001, {1.0})[0].field;
        // conj(q(-x, -t)) solves the same equation
        FieldGrid back = solver.solve(reflect_conj(q1), 0.001, {1.0})[0].field;
        CHECK(sup_diff(back, reflect_conj(q0)) < 1e-6);
        FieldGrid rev = solver.solve(q0, 0.001, {-1.0})[0].field;
        CHECK(sup_diff(rev, reflect_conj(solver.solve(reflect_conj(q0), 0.001, {1.0})[0].field)) < 1e-6);
    }
}

TEST_CASE("two solitons collide elastically")
{
    const int eps = -1;
    Pairs p{{0.3 + 0.5 * I, 1.0}, {-0.3 + 0.5 * I, 1.0}};
    const std::size_t n = 2048;
    const double len = 80.0, t0 = -4.0;
    FieldGrid q0 = periodic(eps, n, len, [&](double x) { return q_sol_at(eps, p, x, t0); });
    REQUIRE(std::abs(q0.values[0]) < 1e-10);
    auto st = PdeSolver(n, q0.dx, eps).solve(q0, 0.001, {-2.0 * t0});
    const FieldGrid& q1 = st[0].field;
    CHECK(st[0].drift() <= 1e-6);
    auto h0 = dft(q0.values, -1), h1 = dft(q1.values, -1);
    // centres move with -4 Re lambda: -+4.8 before, +-4.8 after
    for (std::size_t k = 0; k < p.size(); ++k) {
        double v = -4.0 * p[k].lambda.real();
        double before = peak_near(q0, h0, v * t0, 3.0), after = peak_near(q1, h1, -v * t0, 3.0);
        CHECK(before > 0.1);
        CHECK(std::abs(after - before) < 1e-4);
    }
}

TEST_CASE("mass drift is enforced")
{
    FieldGrid q = periodic(1, 64, 20.0, [](double x) { return 1.5 * std::exp(-x * x) * std::polar(1.0, 3.0 * x); });
    PdeOptions opt;
    opt.drift_tol = 1e-30;
    CHECK_THROWS_AS(PdeSolver(64, q.dx, 1, opt).solve(q, 0.01, {0.2}), NumericalError);
    CHECK_THROWS_AS(PdeSolver(64, q.dx, 1).solve(q, 0.0, {0.2}), ValidationError);
    CHECK_THROWS_AS(PdeSolver(32, q.dx, 1).solve(q, 0.01, {0.2}), ValidationError);
}

TEST_CASE("trajectory files")
{
    FieldGrid q = periodic(1, 64, 20.0, [](double x) { return 0.3 * std::exp(-x * x); });
    auto st = PdeSolver(64, q.dx, 1).solve(q, 0.01, {0.0, 0.1});
    auto dir = std::filesystem::temp_directory_path() / ("dnls_traj_" + std::to_string(lab_seed()));
    std::filesystem::remove_all(dir);
    write_trajectory(dir.string(), st);
    std::ifstream in(dir / "manifest.json");
    auto m = nlohmann::json::parse(in);
    REQUIRE(m.size() == 2);
    CHECK(m[1]["t"].get<double>() == 0.1);
    for (auto& e : m)
        CHECK(std::filesystem::exists(dir / e["file"].get<std::string>()));
    CHECK(m[0]["drift"].get<double>() == 0.0);
    std::filesystem::remove_all(dir);
}
