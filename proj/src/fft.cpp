#include "dnls/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace dnls {

namespace {
std::mutex plan_mutex;

fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }
}

Fft::Fft(int n) : n_(n)
{
    std::vector<cplx> a(n), b(n);
    std::lock_guard lock(plan_mutex);
    fwd_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft::~Fft()
{
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(in), as_fftw(out));
}

void Fft::backward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(in), as_fftw(out));
}

} // namespace dnls
