#include "iontide/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

#ifdef IONTIDE_FFTW_THREADS
#include <omp.h>
#endif

namespace iontide {

namespace {

// The FFTW planner is not reentrant; scenario sweeps plan from worker threads.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void init_threading(std::size_t n) {
#ifdef IONTIDE_FFTW_THREADS
    static std::once_flag once;
    std::call_once(once, [] { fftw_init_threads(); });
    // Threading pays off only on large grids.
    fftw_plan_with_nthreads(n >= (1u << 20) ? omp_get_max_threads() : 1);
#else
    (void)n;
#endif
}

} // namespace

SpectralTransform::SpectralTransform(std::size_t n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("transform size must be a power of two");
    buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buffer_) throw std::bad_alloc();

    std::lock_guard<std::mutex> lock(planner_mutex());
    init_threading(n);
    auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
    plan_forward_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inverse_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_forward_ || !plan_inverse_) {
        fftw_free(buffer_);
        throw std::runtime_error("fftw plan creation failed");
    }
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
    fftw_free(buffer_);
}

void SpectralTransform::forward() {
    fftw_execute(static_cast<fftw_plan>(plan_forward_));
}

void SpectralTransform::inverse() {
    fftw_execute(static_cast<fftw_plan>(plan_inverse_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) buffer_[i] *= scale;
}

} // namespace iontide
