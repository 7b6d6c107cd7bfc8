#pragma once

#include "dnls/field.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dnls {

class Fft;

struct PdeState {
    FieldGrid field;
    double t = 0.0;
    double mass0 = 0.0;

    double mass() const;
    double drift() const;
};

// 0.25 dx^2 * safety
double default_dt(double dx, double safety = 0.5);

struct PdeOptions {
    double drift_tol = 1e-6;
    bool dealias = true;
};

// Integrating-factor RK4 for q_t = i q_xx - eps q^2 conj(q)_x + (i/2)|q|^4 q on the
// periodic box spanned by the grid (period n dx).
class PdeSolver {
public:
    PdeSolver(std::size_t n, double dx, int eps, PdeOptions opt = {});
    ~PdeSolver();

    PdeState start(const FieldGrid& q0) const;
    void step(PdeState& s, double dt) const;
    // Snapshots at the requested times (any sign, any order); t = 0 returns q0 unchanged.
    std::vector<PdeState> solve(const FieldGrid& q0, double dt, const std::vector<double>& samples) const;

private:
    void nonlinear(const std::vector<cplx>& qhat, std::vector<cplx>& out) const;

    std::size_t n_;
    double dx_;
    int eps_;
    PdeOptions opt_;
    std::vector<double> k_;
    std::vector<double> mask_;
    std::unique_ptr<Fft> fft_;
    mutable std::vector<cplx> q_, qx_, work_;
};

PdeState pde_step(const PdeState& s, double dt);
std::vector<PdeState> pde_solve(const FieldGrid& q0, double t_max, double dt, const std::vector<double>& samples);

// snapshot_<i>.csv per state plus manifest.json with t, mass and drift.
void write_trajectory(const std::string& dir, const std::vector<PdeState>& states);

} // namespace dnls
