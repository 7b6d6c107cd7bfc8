#pragma once

#include "dnls/types.hpp"

#include <memory>
#include <vector>

namespace dnls {

inline constexpr double default_tail_tolerance = 1e-8;

// Uniformly sampled complex field on [x0, x0 + (n-1) dx].
struct FieldGrid {
    int eps = 1;
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<cplx> values;
    bool whole_line = true;

    FieldGrid() = default;
    FieldGrid(int eps_, double x0_, double dx_, std::vector<cplx> v, bool whole = true);

    std::size_t size() const { return values.size(); }
    double x(std::size_t j) const { return x0 + dx * static_cast<double>(j); }
    double x_end() const { return x(values.size() - 1); }
    double max_abs() const;

    // Throws ValidationError when the invariants fail.
    void validate() const;
    // Throws ValidationError when the end samples exceed tol * max|values|.
    void check_tail(double tol = default_tail_tolerance) const;
};

FieldGrid make_field(int eps, double x0, double x1, std::size_t n, const auto& f)
{
    double dx = (x1 - x0) / static_cast<double>(n - 1);
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = f(x0 + dx * static_cast<double>(j));
    return FieldGrid(eps, x0, dx, std::move(v));
}

// Right-to-left cumulative trapezoid of |f|^2: out[j] = int_{x_j}^{x_end} |f|^2.
std::vector<double> cumulative_mass(const FieldGrid& f);

FieldGrid gauge_forward(const FieldGrid& u);
FieldGrid gauge_inverse(const FieldGrid& q);

enum class Weight { abs2, plain };

cplx tail_integral(const FieldGrid& f, double x, Weight w);

// (lambda_k, C_k). C is stored as mant * exp(log_scale) so that C e^{-4i lambda^2 t}
// stays representable for large |t|.
struct DiscretePair {
    cplx lambda;
    cplx mant{1.0, 0.0};
    double log_scale = 0.0;

    DiscretePair() = default;
    DiscretePair(cplx lam, cplx c) : lambda(lam), mant(c) {}
    static DiscretePair from_log(cplx lam, cplx log_c);

    cplx c() const { return mant * std::exp(log_scale); }
    cplx log_c() const { return std::log(mant) + log_scale; }
};

class Spline;

// Reflection coefficient samples on lo + j h, j < m, plus the discrete spectrum.
class ScatteringData {
public:
    ScatteringData() = default;
    ScatteringData(int eps, double lo, double hi, std::vector<cplx> rho,
                   std::vector<DiscretePair> discrete, double t_stamp = 0.0);

    // Reflectionless data; rho is zero on a trivial grid.
    static ScatteringData reflectionless(int eps, std::vector<DiscretePair> discrete);

    int eps() const { return eps_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t m() const { return rho_.size(); }
    double h() const { return (hi_ - lo_) / static_cast<double>(rho_.size() - 1); }
    double node(std::size_t j) const { return lo_ + h() * static_cast<double>(j); }
    double t_stamp() const { return t_stamp_; }
    const std::vector<cplx>& rho_samples() const { return rho_; }
    const std::vector<DiscretePair>& discrete() const { return discrete_; }
    bool has_radiation() const;

    // Cubic interpolant; zero outside [lo, hi].
    cplx rho(double lambda) const;
    // 1 - eps lambda |rho|^2
    double transmission(double lambda) const;

    double min_gap() const;

private:
    int eps_ = 1;
    double lo_ = -1.0, hi_ = 1.0;
    std::vector<cplx> rho_;
    std::vector<DiscretePair> discrete_;
    double t_stamp_ = 0.0;
    std::shared_ptr<const Spline> spline_;
};

// Natural cubic spline of complex samples on a uniform grid.
class Spline {
public:
    Spline(double lo, double h, std::vector<cplx> y);
    cplx operator()(double x) const;

private:
    double lo_, h_;
    std::vector<cplx> y_, m_;
};

} // namespace dnls
