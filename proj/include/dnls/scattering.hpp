#pragma once

#include "dnls/field.hpp"
#include "dnls/potential.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dnls {

using Mat2 = Eigen::Matrix2cd;

enum class Side { left, right };

struct JostMatrices {
    cplx lambda;
    Mat2 n_minus, n_plus; // at the matching point
    double x_m = 0.0;
    bool full = true;     // false: only the analytic columns were integrated
    bool ok = true;
};

struct TransitionEntries {
    cplx alpha, beta, alpha_breve, beta_breve;
};

struct Box {
    double re1, re2, im1, im2;
};

struct LambdaGrid {
    double lo, hi;
    std::size_t m;
};

struct JostOptions {
    double rtol = 1e-10;
    double atol = 1e-13;
    double im_floor = 1e-3;
};

// Jost integrations against one field; the interpolant is built once.
class JostSolver {
public:
    explicit JostSolver(const FieldGrid& q, JostOptions opt = {});

    // N^- (left) or N^+ (right) at the matching point. For Im lambda > 0 only the
    // analytic column is integrated (first for left, second for right); the
    // other column is returned as zero.
    Mat2 integrate(cplx lambda, Side side) const;
    // N at an arbitrary x, integrating from the chosen end.
    Mat2 integrate_to(cplx lambda, Side side, double x) const;

    JostMatrices jost(cplx lambda) const;
    TransitionEntries transition(double lambda) const;
    cplx alpha_breve(cplx lambda) const;
    // Cauchy-integral derivative of alpha_breve on a circle of radius r.
    cplx alpha_breve_prime(cplx lambda, double r, int points = 64) const;

    std::vector<cplx> reflection(const LambdaGrid& g) const;
    std::vector<cplx> find_eigenvalues(const Box& box) const;
    cplx norming_constant(cplx lambda_k, double d_gap) const;
    ScatteringData scatter(const Box& box, const LambdaGrid& g) const;

    double x_m() const { return x_m_; }
    int eps() const { return pot_.eps(); }
    const JostOptions& options() const { return opt_; }

private:
    Potential pot_;
    JostOptions opt_;
    double x_m_;
};

Mat2 integrate_jost(const FieldGrid& q, cplx lambda, Side side);
TransitionEntries transition_matrix(const FieldGrid& q, double lambda);
std::vector<cplx> reflection(const FieldGrid& q, const LambdaGrid& g);
cplx alpha_breve(const FieldGrid& q, cplx lambda);
std::vector<cplx> find_eigenvalues(const FieldGrid& q, const Box& box);
cplx norming_constant(const FieldGrid& q, cplx lambda_k, double d_gap);
ScatteringData scatter(const FieldGrid& q, const Box& box, const LambdaGrid& g);

// First Born approximation rho(lambda) ~ -int e^{2i lambda y} q(y) dy.
cplx born_reflection(const FieldGrid& q, double lambda);

} // namespace dnls
