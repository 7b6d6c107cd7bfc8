#pragma once

#include "dnls/field.hpp"
#include "dnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dnls::test {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(lab_seed());
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline double sup_diff(const FieldGrid& a, const FieldGrid& b)
{
    double m = 0.0;
    for (std::size_t j = 0; j < std::min(a.size(), b.size()); ++j)
        m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Smooth random field with Gaussian envelope.
inline FieldGrid random_bump(int eps, double amp, double half = 20.0, std::size_t n = 801)
{
    double c = uniform(-2.0, 2.0), w = uniform(0.7, 1.5), k = uniform(-1.0, 1.0);
    cplx a = std::polar(amp, uniform(-pi, pi));
    return make_field(eps, -half, half, n, [&](double x) {
        double y = (x - c) / w;
        return a * std::exp(-y * y) * std::polar(1.0, k * x);
    });
}

// Message of the ValidationError thrown by f, empty when nothing is thrown.
template <class F>
std::string validation_message(F f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

} // namespace dnls::test
