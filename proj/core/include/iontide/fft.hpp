#pragma once

#include <complex>
#include <cstddef>

namespace iontide {

/// In-place complex FFT working buffer (power-of-two sizes).
/// forward() is unnormalized, inverse() carries the 1/N factor, so the pair
/// is an identity and the propagator stays unitary to roundoff.
class SpectralTransform {
public:
    explicit SpectralTransform(std::size_t n);
    ~SpectralTransform();
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    std::size_t size() const { return n_; }
    std::complex<double>* data() { return buffer_; }
    const std::complex<double>* data() const { return buffer_; }

    void forward();
    void inverse();

private:
    std::size_t n_;
    std::complex<double>* buffer_;
    void* plan_forward_;
    void* plan_inverse_;
};

} // namespace iontide
