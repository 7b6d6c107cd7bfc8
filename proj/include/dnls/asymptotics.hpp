#pragma once

#include "dnls/delta.hpp"
#include "dnls/field.hpp"
#include "dnls/soliton.hpp"

#include <string>
#include <vector>

namespace dnls {

struct LocalModelConstants {
    double xi = 0.0;
    int eta = 1;
    double kappa = 0.0;
    cplx r_xi, s_xi;
    cplx A12, A21;
    double zeta_scale = 0.0; // |8t|^{1/2}
    cplx p;                  // e^{i eta pi/4} |8 t xi^2|^{1/2}
};

// r_xi, s_xi from delta0 and A12 = beta12(s, r) (eta = +1) or -beta21(r, s) (eta = -1).
LocalModelConstants local_model(const ConeFrame& f, const ScatteringData& d);

struct ACoefficients {
    cplx A12, A21;
};

// Modulus sqrt(eps kappa / xi); argument from the closed formula with the Stieltjes
// integral (1/pi) int_{I^-} log|xi - s| d log(1 - eps s |rho|^2).
ACoefficients A_coefficients(const ConeFrame& f, const ScatteringData& d);
double stieltjes_log_integral(const ConeFrame& f, const ScatteringData& d);

// -4 sum arg(lambda_k - xi) over Re lambda_k in I^- \ I.
double phi_phase(const ConeFrame& f, const Pairs& discrete);

// |t|^{-1/2} for either sign of t.
double time_scale(double t);

struct OuterModel {
    Pairs data;      // modulated reflectionless data D_I
    cplx n11, n12;   // first row of N^sol at lambda = xi
    double phi;
};
OuterModel outer_model(const ConeFrame& f, const ScatteringData& d);

cplx f_correction(const ConeFrame& f, const ScatteringData& d);

enum class Branch { none, outer, inner };

struct AsymptoticProfile {
    double x = 0.0, t = 0.0;
    cplx leading;
    cplx correction;
    std::string remainder_order = "O(t^-3/4)";
    Branch branch = Branch::none;
    bool qsol_zero = false; // g would divide by q_sol = 0; the product form was used

    cplx value() const { return leading + correction; }
};

inline constexpr double default_t_min = 5.0;

AsymptoticProfile q_asymptotic(const ConeFrame& f, const ScatteringData& d, double t_min = default_t_min);

struct DispersiveValue {
    cplx displayed;          // amplitude kappa/xi
    cplx local_model;        // amplitude sqrt(eps kappa/xi)
    double modulus_displayed, modulus_local_model;
    double alpha;            // alpha_+ or alpha_- according to the sign of t
};
DispersiveValue dispersive_no_soliton(const ConeFrame& f, const ScatteringData& d);

struct PhaseShift {
    cplx lambda;
    double x_minus, x_plus, phi_minus, phi_plus;
    double dx, dphi; // dphi reduced to (-pi, pi]
};
// Weights of the pairwise soliton terms: x gets factor / tau * log|ratio|, phi gets factor * arg(ratio).
inline constexpr double pair_x_factor = 1.0;
inline constexpr double pair_phi_factor = 2.0;

std::vector<PhaseShift> phase_shifts(const ScatteringData& d);
// Printed weights: 1/(2 tau) for x and 1 for phi.
std::vector<PhaseShift> phase_shifts(const ScatteringData& d, double x_factor, double phi_factor);

double alpha0(const ConeFrame& f, const ScatteringData& d);

struct FGValues {
    cplx p, F, G;
};
FGValues FG_factors(const ConeFrame& f, const ScatteringData& d);
FGValues FG_at(double kappa, int eta, cplx p);

// First column of the local model at lambda = 0.
struct NpcColumn {
    cplx n11, n21;
};
NpcColumn npc_first_column_at_zero(const ConeFrame& f, const ScatteringData& d);

inline constexpr double default_big_m = 1.0;

AsymptoticProfile u_asymptotic(const ConeFrame& f, const ScatteringData& d, double big_m = default_big_m,
                               double t_min = default_t_min);

enum class TraceKind { breve, plain };
cplx trace_alpha(const ScatteringData& d, cplx lambda, TraceKind kind);

struct PlancherelResult {
    cplx lhs, rhs;
    double defect;
};
PlancherelResult plancherel_check(const ScatteringData& d, double mass);
PlancherelResult plancherel_check(const ScatteringData& d, const FieldGrid& q);

} // namespace dnls
