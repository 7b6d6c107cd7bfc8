#pragma once

#include "dnls/delta.hpp"
#include "dnls/field.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace dnls {

using Pairs = std::vector<DiscretePair>;

struct NormalizationSet {
    std::vector<bool> in_delta;       // indexed like the discrete list
    std::vector<std::size_t> order;   // indices sorted by Re lambda ascending

    bool contains(std::size_t k) const { return in_delta[k]; }
    std::vector<std::size_t> members() const;
    bool operator==(const NormalizationSet&) const = default;
};

// {k : Re lambda_k < xi} for eta = +1 (ties included), its complement for eta = -1.
NormalizationSet choose_normalization(const Pairs& discrete, double xi, int eta);
// Per-pole choice: k joins the set when its unnormalized residue coefficient exceeds 1.
NormalizationSet adaptive_normalization(const Pairs& discrete, double x, double t);

cplx blaschke(cplx lambda, const NormalizationSet& delta, const Pairs& discrete);
// (1/B)'(lambda_k) for k in the set.
cplx blaschke_inv_prime(std::size_t k, const NormalizationSet& delta, const Pairs& discrete);

struct Residue {
    std::size_t k;
    bool upper;     // true for k in the set: the pole at lambda_k sits in the second entry
    cplx log_gamma;
    cplx gamma;
};

std::vector<Residue> residue_coefficients(const Pairs& discrete, const NormalizationSet& delta,
                                          double x, double t);

struct RowSolution {
    std::vector<cplx> points;
    std::vector<std::array<cplx, 2>> row_values;
    cplx moment12 = 0.0;
    double residual = 0.0;
    NormalizationSet delta;
};

RowSolution solve_reflectionless(int eps, const Pairs& discrete, double x, double t,
                                 const std::vector<cplx>& eval_points,
                                 std::optional<NormalizationSet> delta = std::nullopt);

// Both rows of N^sol. The second row is solved from the same system with its own
// normalization at infinity, (i eps conj(q)/2, 1).
std::vector<Eigen::Matrix2cd> solve_reflectionless_matrix(int eps, const Pairs& discrete, double x,
                                                          double t,
                                                          const std::vector<cplx>& eval_points,
                                                          std::optional<NormalizationSet> delta = std::nullopt);

cplx one_soliton_closed_form(cplx lambda, cplx c, double x, double t, int eps);
// int_{-inf}^{y} Q(s)^2 ds in closed form.
double soliton_mass_to(cplx lambda, double y, int eps);

cplx q_sol_at(int eps, const Pairs& discrete, double x, double t);
FieldGrid q_sol(int eps, const Pairs& discrete, double x0, double dx, std::size_t n, double t);

// u_sol via the lambda = 0 values of N^sol:
// N11(0)^{-2} = exp(-i eps int_x^inf |q_sol|^2), int_x^inf u_sol = -N12(0)/N11(0).
struct GaugeAtZero {
    cplx q, u, phase, tail_u;
};
GaugeAtZero u_sol_at(int eps, const Pairs& discrete, double x, double t);

enum class Modulation { tilde, hat };
Pairs modulate_coefficients(const ScatteringData& d, const ConeFrame& frame, Modulation variant);

} // namespace dnls
