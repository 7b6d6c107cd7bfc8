#include "dnls/pde.hpp"
#include "dnls/fft.hpp"
#include "dnls/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace dnls {

namespace {

double grid_mass(const std::vector<cplx>& v, double dx)
{
    double m = 0.0;
    for (auto z : v)
        m += std::norm(z);
    return m * dx;
}

} // namespace

double PdeState::mass() const { return grid_mass(field.values, field.dx); }

double PdeState::drift() const { return mass0 > 0.0 ? std::abs(mass() - mass0) / mass0 : 0.0; }

double default_dt(double dx, double safety) { return 0.25 * dx * dx * safety; }

PdeSolver::PdeSolver(std::size_t n, double dx, int eps, PdeOptions opt)
    : n_(n), dx_(dx), eps_(eps), opt_(opt), k_(n), mask_(n, 1.0), fft_(std::make_unique<Fft>(static_cast<int>(n))),
      q_(n), qx_(n), work_(n)
{
    check_eps(eps);
    if (n < 4 || !(dx > 0.0))
        throw ValidationError("pde: need n >= 4 and dx > 0");
    const double dk = 2.0 * pi / (static_cast<double>(n) * dx);
    const double kmax = pi / dx;
    for (std::size_t j = 0; j < n; ++j) {
        auto m = static_cast<long>(j);
        if (m > static_cast<long>(n / 2))
            m -= static_cast<long>(n);
        k_[j] = dk * static_cast<double>(m);
        if (opt_.dealias && std::abs(k_[j]) > 2.0 / 3.0 * kmax)
            mask_[j] = 0.0;
    }
    if (n % 2 == 0)
        k_[n / 2] = 0.0; // Nyquist mode carries no derivative
}

PdeSolver::~PdeSolver() = default;

PdeState PdeSolver::start(const FieldGrid& q0) const
{
    if (q0.size() != n_ || std::abs(q0.dx - dx_) > 1e-14 * dx_ || q0.eps != eps_)
        throw ValidationError("pde: field does not match the solver grid");
    q0.validate();
    return {q0, 0.0, grid_mass(q0.values, q0.dx)};
}

void PdeSolver::nonlinear(const std::vector<cplx>& qhat, std::vector<cplx>& out) const
{
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j)
        work_[j] = I * k_[j] * qhat[j];
    fft_->backward(qhat.data(), q_.data());
    fft_->backward(work_.data(), qx_.data());
    for (std::size_t j = 0; j < n_; ++j) {
        cplx q = q_[j] * inv, qx = qx_[j] * inv;
        double a = std::norm(q);
        work_[j] = -static_cast<double>(eps_) * q * q * std::conj(qx) + 0.5 * I * a * a * q;
    }
    fft_->forward(work_.data(), out.data());
    for (std::size_t j = 0; j < n_; ++j)
        out[j] *= mask_[j];
}

namespace {

struct Stepper {
    const std::vector<double>& k;
    std::vector<cplx> e, e2, k1, k2, k3, k4, tmp;

    Stepper(const std::vector<double>& kk, double h) : k(kk)
    {
        const auto n = k.size();
        e.resize(n);
        e2.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = std::polar(1.0, -k[j] * k[j] * h);
            e2[j] = std::polar(1.0, -0.5 * k[j] * k[j] * h);
        }
        k1 = k2 = k3 = k4 = tmp = std::vector<cplx>(n);
    }
};

} // namespace

void PdeSolver::step(PdeState& s, double dt) const
{
    std::vector<cplx> v(n_);
    fft_->forward(s.field.values.data(), v.data());
    Stepper st(k_, dt);
    const double h = dt;
    nonlinear(v, st.k1);
    for (std::size_t j = 0; j < n_; ++j)
        st.tmp[j] = st.e2[j] * (v[j] + 0.5 * h * st.k1[j]);
    nonlinear(st.tmp, st.k2);
    for (std::size_t j = 0; j < n_; ++j)
        st.tmp[j] = st.e2[j] * v[j] + 0.5 * h * st.k2[j];
    nonlinear(st.tmp, st.k3);
    for (std::size_t j = 0; j < n_; ++j)
        st.tmp[j] = st.e[j] * v[j] + h * st.e2[j] * st.k3[j];
    nonlinear(st.tmp, st.k4);
    for (std::size_t j = 0; j < n_; ++j)
        v[j] = st.e[j] * v[j] + h / 6.0 * (st.e[j] * st.k1[j] + 2.0 * st.e2[j] * (st.k2[j] + st.k3[j]) + st.k4[j]);
    fft_->backward(v.data(), s.field.values.data());
    const double inv = 1.0 / static_cast<double>(n_);
    for (auto& z : s.field.values) {
        z *= inv;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("pde: blow-up (non-finite values) at t = " + std::to_string(s.t + dt));
    }
    s.t += dt;
}

std::vector<PdeState> PdeSolver::solve(const FieldGrid& q0, double dt, const std::vector<double>& samples) const
{
    if (!(dt > 0.0))
        throw ValidationError("pde: dt must be positive");
    PdeState init = start(q0);
    std::map<double, PdeState> done;
    for (int dir : {1, -1}) {
        std::vector<double> ts;
        for (double t : samples)
            if (dir * t > 0.0)
                ts.push_back(t);
        std::sort(ts.begin(), ts.end(), [dir](double a, double b) { return dir * a < dir * b; });
        PdeState s = init;
        for (double target : ts) {
            double span = target - s.t;
            auto steps = static_cast<long>(std::ceil(std::abs(span) / dt - 1e-9));
            if (steps > 0) {
                double h = span / static_cast<double>(steps);
                for (long i = 0; i < steps; ++i)
                    step(s, h);
            }
            s.t = target;
            if (s.drift() > opt_.drift_tol)
                throw NumericalError("pde: relative mass drift " + std::to_string(s.drift()) + " exceeds "
                                     + std::to_string(opt_.drift_tol) + " at t = " + std::to_string(target));
            done.emplace(target, s);
        }
    }
    std::vector<PdeState> out;
    for (double t : samples)
        out.push_back(t == 0.0 ? init : done.at(t));
    return out;
}

PdeState pde_step(const PdeState& s, double dt)
{
    PdeSolver solver(s.field.size(), s.field.dx, s.field.eps);
    PdeState r = s;
    solver.step(r, dt);
    return r;
}

std::vector<PdeState> pde_solve(const FieldGrid& q0, double t_max, double dt, const std::vector<double>& samples)
{
    std::vector<double> ts = samples;
    if (std::find(ts.begin(), ts.end(), t_max) == ts.end())
        ts.push_back(t_max);
    PdeSolver solver(q0.size(), q0.dx, q0.eps);
    auto all = solver.solve(q0, dt, ts);
    if (ts.size() != samples.size())
        all.pop_back();
    return all;
}

void write_trajectory(const std::string& dir, const std::vector<PdeState>& states)
{
    std::filesystem::create_directories(dir);
    nlohmann::json manifest = nlohmann::json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::string name = "snapshot_" + std::to_string(i) + ".csv";
        std::ostringstream os;
        write_csv(os, states[i].field);
        write_file(dir + "/" + name, os.str());
        manifest.push_back({{"file", name}, {"t", states[i].t}, {"mass", states[i].mass()}, {"drift", states[i].drift()}});
    }
    write_file(dir + "/manifest.json", manifest.dump(2) + "\n");
}

} // namespace dnls
