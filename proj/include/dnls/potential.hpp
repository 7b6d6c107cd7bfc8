#pragma once

#include "dnls/field.hpp"

#include <vector>

namespace dnls {

// Band-limited interpolant of a sampled field: FFT zero-padding onto a finer
// grid followed by local 8-point Lagrange interpolation. Zero outside the grid.
class Potential {
public:
    explicit Potential(const FieldGrid& q, int refine = 4);

    cplx operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int eps() const { return eps_; }

private:
    int eps_;
    double lo_, hi_, hf_;
    std::vector<cplx> fine_;
};

} // namespace dnls
