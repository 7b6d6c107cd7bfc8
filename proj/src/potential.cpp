#include "dnls/potential.hpp"

#include "dnls/fft.hpp"

#include <cmath>

namespace dnls {

Potential::Potential(const FieldGrid& q, int refine)
    : eps_(q.eps), lo_(q.x0), hi_(q.x_end()), hf_(q.dx / refine)
{
    const int n = static_cast<int>(q.size());
    const int nf = n * refine;
    std::vector<cplx> spec(n), big(nf, 0.0);
    fine_.assign(nf, 0.0);
    Fft coarse(n), fine(nf);
    coarse.forward(q.values.data(), spec.data());
    const int half = n / 2;
    for (int k = 0; k < n; ++k) {
        if (n % 2 == 0 && k == half) {
            big[half] += 0.5 * spec[k];
            big[nf - half] += 0.5 * spec[k];
        } else if (k < half || (n % 2 == 1 && k == half)) {
            big[k] = spec[k];
        } else {
            big[nf - (n - k)] = spec[k];
        }
    }
    fine.backward(big.data(), fine_.data());
    for (auto& v : fine_)
        v /= static_cast<double>(n);
}

cplx Potential::operator()(double x) const
{
    if (x < lo_ || x > hi_)
        return 0.0;
    const int nf = static_cast<int>(fine_.size());
    double s = (x - lo_) / hf_;
    int i = static_cast<int>(std::floor(s));
    double t = s - i;
    if (t == 0.0)
        return fine_[((i % nf) + nf) % nf];
    cplx acc = 0.0;
    for (int k = -3; k <= 4; ++k) {
        double w = 1.0;
        for (int m = -3; m <= 4; ++m)
            if (m != k)
                w *= (t - m) / static_cast<double>(k - m);
        acc += w * fine_[(((i + k) % nf) + nf) % nf];
    }
    return acc;
}

} // namespace dnls
