#pragma once

#include "dnls/types.hpp"

#include <vector>

namespace dnls {

// Unnormalized complex DFT of a fixed length, out of place. Plan creation is serialized.
class Fft {
public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }
    void forward(const cplx* in, cplx* out) const;
    void backward(const cplx* in, cplx* out) const;

private:
    int n_;
    void* fwd_;
    void* bwd_;
};

} // namespace dnls
