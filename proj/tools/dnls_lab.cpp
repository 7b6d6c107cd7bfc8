#include "dnls/asymptotics.hpp"
#include "dnls/evolution.hpp"
#include "dnls/io.hpp"
#include "dnls/parallel.hpp"
#include "dnls/pde.hpp"
#include "dnls/scattering.hpp"
#include "dnls/soliton.hpp"
#include "dnls/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace dnls;

namespace {

struct RunConfig {
    std::string input, out;
    std::vector<double> cone, times, lambda_grid, box, grid;
    double big_m = default_big_m;
    double t_min = default_t_min;
    double dt = 0.0;
    int eps = 0;
    unsigned threads = 0;
    std::string which;
    std::string component;
};

std::vector<double> parse_list(const std::string& s, const char* flag)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    return out;
}

void need_size(const std::vector<double>& v, std::size_t n, const char* flag)
{
    if (v.size() != n)
        throw ValidationError(std::string(flag) + ": expected " + std::to_string(n) + " comma-separated values, got "
                              + std::to_string(v.size()));
}

void emit(const RunConfig& c, const std::string& text)
{
    if (c.out.empty())
        std::cout << text;
    else
        write_file(c.out, text);
}

std::string need_input(const RunConfig& c)
{
    if (c.input.empty())
        throw ValidationError("--input is required");
    return read_file(c.input);
}

FieldGrid load_field(const RunConfig& c)
{
    FieldGrid f = deserialize_field(need_input(c));
    if (c.eps != 0)
        f.eps = c.eps;
    f.validate();
    return f;
}

ScatteringData load_data(const RunConfig& c)
{
    ScatteringData d = deserialize_scattering(need_input(c));
    if (c.eps != 0 && c.eps != d.eps())
        d = ScatteringData(c.eps, d.lo(), d.hi(), d.rho_samples(), d.discrete(), d.t_stamp());
    return d;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_scatter(const RunConfig& c)
{
    FieldGrid q = load_field(c);
    Box box{-3.0, 3.0, 0.05, 3.0};
    LambdaGrid g{-4.0, 4.0, 161};
    if (!c.box.empty()) {
        need_size(c.box, 4, "--box");
        box = {c.box[0], c.box[1], c.box[2], c.box[3]};
    }
    if (!c.lambda_grid.empty()) {
        need_size(c.lambda_grid, 3, "--lambda-grid");
        if (c.lambda_grid[2] < 2 || c.lambda_grid[2] != static_cast<double>(static_cast<std::size_t>(c.lambda_grid[2])))
            throw ValidationError("--lambda-grid: m must be an integer >= 2");
        g = {c.lambda_grid[0], c.lambda_grid[1], static_cast<std::size_t>(c.lambda_grid[2])};
    }
    emit(c, serialize(scatter(q, box, g)) + "\n");
    return 0;
}

int cmd_evolve(const RunConfig& c)
{
    ScatteringData d = load_data(c);
    if (c.times.empty())
        throw ValidationError("evolve: --times is required");
    if (c.times.size() == 1) {
        emit(c, serialize(evolve(d, c.times[0])) + "\n");
        return 0;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (double t : c.times)
        arr.push_back(nlohmann::json::parse(serialize(evolve(d, t))));
    emit(c, arr.dump() + "\n");
    return 0;
}

struct XGrid {
    double x0, dx;
    std::size_t n;
};

XGrid x_grid(const std::vector<double>& g, double lo, double hi, std::size_t n)
{
    if (!g.empty()) {
        need_size(g, 3, "--grid");
        if (g[2] < 2 || g[2] != static_cast<double>(static_cast<std::size_t>(g[2])))
            throw ValidationError("--grid: n must be an integer >= 2");
        lo = g[0];
        hi = g[1];
        n = static_cast<std::size_t>(g[2]);
    }
    if (!(hi > lo))
        throw ValidationError("--grid: need x0 < x1");
    return {lo, (hi - lo) / static_cast<double>(n - 1), n};
}

// Reflectionless field of the discrete data.
int cmd_reconstruct(const RunConfig& c)
{
    ScatteringData d = load_data(c);
    double t = 0.0;
    if (c.times.size() > 1)
        throw ValidationError("reconstruct: --times takes a single value");
    if (!c.times.empty())
        t = c.times[0];
    XGrid g = x_grid(c.grid, -20.0, 20.0, 401);
    FieldGrid q = d.discrete().empty() ? FieldGrid(d.eps(), g.x0, g.dx, std::vector<cplx>(g.n))
                                       : q_sol(d.eps(), d.discrete(), g.x0, g.dx, g.n, t - d.t_stamp());
    std::ostringstream os;
    write_csv(os, q);
    emit(c, os.str());
    return 0;
}

int cmd_asymptote(const RunConfig& c)
{
    if (c.component != "q" && c.component != "u")
        throw ValidationError("asymptote: expected q or u, got '" + c.component + "'");
    ScatteringData d = load_data(c);
    need_size(c.cone, 4, "--cone");
    if (c.times.empty())
        throw ValidationError("asymptote: --times is required");
    std::ostringstream os;
    os << "t,x,re,im,leading_re,leading_im,branch\n";
    for (double t : c.times) {
        if (t == 0.0)
            throw ValidationError("asymptote: t must be nonzero");
        double a = c.cone[2] + c.cone[0] * t, b = c.cone[3] + c.cone[1] * t;
        XGrid g = x_grid(c.grid, std::min(a, b), std::max(a, b), 201);
        for (std::size_t j = 0; j < g.n; ++j) {
            double x = g.x0 + g.dx * static_cast<double>(j);
            ConeFrame f(c.cone[0], c.cone[1], c.cone[2], c.cone[3], x, t);
            AsymptoticProfile p = c.component == "q" ? q_asymptotic(f, d, c.t_min) : u_asymptotic(f, d, c.big_m, c.t_min);
            cplx v = p.value();
            const char* br = p.branch == Branch::inner ? "inner" : p.branch == Branch::outer ? "outer" : "none";
            os << num(t) << ',' << num(x) << ',' << num(v.real()) << ',' << num(v.imag()) << ','
               << num(p.leading.real()) << ',' << num(p.leading.imag()) << ',' << br << '\n';
        }
    }
    emit(c, os.str());
    return 0;
}

int cmd_pde(const RunConfig& c)
{
    FieldGrid q = load_field(c);
    if (c.times.empty())
        throw ValidationError("pde: --times is required");
    if (c.out.empty())
        throw ValidationError("pde: --out <directory> is required");
    double dt = c.dt > 0.0 ? c.dt : default_dt(q.dx);
    PdeSolver solver(q.size(), q.dx, q.eps);
    write_trajectory(c.out, solver.solve(q, dt, c.times));
    return 0;
}

int cmd_phase_shifts(const RunConfig& c)
{
    ScatteringData d = load_data(c);
    nlohmann::json arr = nlohmann::json::array();
    for (auto& s : phase_shifts(d))
        arr.push_back({{"re", s.lambda.real()},
                       {"im", s.lambda.imag()},
                       {"x_minus", s.x_minus},
                       {"x_plus", s.x_plus},
                       {"phi_minus", s.phi_minus},
                       {"phi_plus", s.phi_plus},
                       {"dx", s.dx},
                       {"dphi", s.dphi}});
    emit(c, arr.dump(2) + "\n");
    return 0;
}

int cmd_verify(const RunConfig& c)
{
    auto results = run_checks(c.which, lab_seed());
    std::ostringstream os;
    bool ok = true;
    for (auto& r : results) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "criterion %2d %-20s %s ", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL");
        os << buf << r.detail << '\n';
        ok = ok && r.pass;
    }
    emit(c, os.str());
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dnls_lab: scattering, reconstruction, asymptotics and PDE runs for the derivative NLS"};
    app.require_subcommand(1);
    RunConfig c;
    std::string cone, times, lgrid, box, grid;

    auto common = [&](CLI::App* s) {
        s->add_option("--input", c.input, "input JSON");
        s->add_option("--out", c.out, "output file (directory for pde); stdout when omitted");
        s->add_option("--eps", c.eps, "override eps (+1 or -1)");
        s->add_option("--threads", c.threads, "worker threads (0 = all cores)");
    };

    auto* sc = app.add_subcommand("scatter", "field JSON -> scattering data JSON");
    common(sc);
    sc->add_option("--box", box, "eigenvalue search box re1,re2,im1,im2");
    sc->add_option("--lambda-grid", lgrid, "reflection grid lo,hi,m");

    auto* ev = app.add_subcommand("evolve", "scattering data at the given times");
    common(ev);
    ev->add_option("--times", times, "t1,t2,...");

    auto* rc = app.add_subcommand("reconstruct", "reflectionless field of the discrete data as CSV");
    common(rc);
    rc->add_option("--times", times, "time (single value)");
    rc->add_option("--grid", grid, "x0,x1,n");

    auto* as = app.add_subcommand("asymptote", "long-time asymptotics inside a cone as CSV");
    common(as);
    as->add_option("component", c.component, "q or u")->required();
    as->add_option("--cone", cone, "v1,v2,x1,x2")->required();
    as->add_option("--times", times, "t1,t2,...");
    as->add_option("--grid", grid, "x0,x1,n (default: the cone slice)");
    as->add_option("--bigM", c.big_m, "inner/outer switch for u");
    as->add_option("--tmin", c.t_min, "smallest admissible |t|");

    auto* pd = app.add_subcommand("pde", "direct PDE solve; snapshots and manifest into --out");
    common(pd);
    pd->add_option("--times", times, "t1,t2,...");
    pd->add_option("--dt", c.dt, "time step");

    auto* ps = app.add_subcommand("phase-shifts", "per-soliton position and phase shifts as JSON");
    common(ps);

    auto* vf = app.add_subcommand("verify", "run acceptance checks");
    common(vf);
    vf->add_option("check", c.which, "roundtrip|trace|plancherel|rate|shifts|stability|all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc_ = app.exit(e);
        return rc_ == 0 ? 0 : 1;
    }

    try {
        if (c.eps != 0)
            check_eps(c.eps);
        if (!cone.empty())
            c.cone = parse_list(cone, "--cone");
        if (!times.empty())
            c.times = parse_list(times, "--times");
        if (!lgrid.empty())
            c.lambda_grid = parse_list(lgrid, "--lambda-grid");
        if (!box.empty())
            c.box = parse_list(box, "--box");
        if (!grid.empty())
            c.grid = parse_list(grid, "--grid");
        set_threads(c.threads);

        if (sc->parsed())
            return cmd_scatter(c);
        if (ev->parsed())
            return cmd_evolve(c);
        if (rc->parsed())
            return cmd_reconstruct(c);
        if (as->parsed())
            return cmd_asymptote(c);
        if (pd->parsed())
            return cmd_pde(c);
        if (ps->parsed())
            return cmd_phase_shifts(c);
        return cmd_verify(c);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}
