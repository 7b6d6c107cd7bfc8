#pragma once

#include "dnls/field.hpp"
#include "dnls/soliton.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dnls {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// DNLS_LAB_SEED when set, otherwise a fixed default.
std::uint64_t lab_seed();

// Shared test data.
FieldGrid gaussian_datum(int eps);
Pairs rate_solitons();
FieldGrid rate_datum(double radiation_amplitude);

// Peak of |q_sol| near a guess, refined by parabolic steps.
double soliton_peak(int eps, const Pairs& p, double t, double guess);
// Pair whose one-soliton is centred at x0 with phase phi0 in the phase-shift convention.
DiscretePair soliton_from_shift(cplx lambda, double x0, double phi0);

CheckResult check_closed_form(std::uint64_t seed);
CheckResult check_roundtrip();
CheckResult check_delta(std::uint64_t seed);
CheckResult check_trace();
CheckResult check_plancherel();
CheckResult check_rate();
CheckResult check_shifts();
CheckResult check_dispersive();
CheckResult check_fg();
CheckResult check_stability();
CheckResult check_pde();
CheckResult check_special(std::uint64_t seed);

// Names accepted by `verify`: roundtrip trace plancherel rate shifts stability all.
std::vector<CheckResult> run_checks(const std::string& which, std::uint64_t seed);

} // namespace dnls
