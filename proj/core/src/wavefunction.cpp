#include "iontide/wavefunction.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/fft.hpp"
#include "iontide/propagator.hpp"
#include "iontide/trap.hpp"

namespace iontide {

using constants::hbar;
using constants::pi;
using constants::two_pi;

GridSpec GridSpec::make(double z_min, double z_max, std::size_t points, double dt,
                        std::size_t steps) {
    if (!(z_max > z_min)) throw DomainError("grid needs z_max > z_min");
    if (points < 16 || (points & (points - 1)) != 0)
        throw DomainError("grid points must be a power of two >= 16");
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
    return GridSpec{z_min, z_max, points, dt, steps};
}

GridSpec GridSpec::with_time(double duration, std::size_t steps) const {
    if (!(duration > 0.0) || steps == 0) throw DomainError("invalid time axis");
    GridSpec g = *this;
    g.steps = steps;
    g.dt = duration / static_cast<double>(steps);
    return g;
}

double GridSpec::wavenumber(std::size_t i) const {
    const double span = z_max - z_min;
    const auto n = static_cast<std::ptrdiff_t>(points);
    auto j = static_cast<std::ptrdiff_t>(i);
    if (j > n / 2 - 1) j -= n;
    return two_pi * static_cast<double>(j) / span;
}

double Wavefunction::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s * grid.dz();
}

void Wavefunction::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw NumericalError("cannot normalize a zero wavefunction");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : amplitudes) a *= scale;
}

double Wavefunction::mean_position() const {
    double s = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        s += grid.z(i) * std::norm(amplitudes[i]);
    return s * grid.dz() / norm();
}

double Wavefunction::variance_position() const {
    const double mean = mean_position();
    double s = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        const double d = grid.z(i) - mean;
        s += d * d * std::norm(amplitudes[i]);
    }
    return s * grid.dz() / norm();
}

MomentumStats Wavefunction::momentum_stats() const {
    SpectralTransform fft(grid.points);
    std::memcpy(fft.data(), amplitudes.data(), grid.points * sizeof(std::complex<double>));
    fft.forward();
    double w_total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double w = std::norm(fft.data()[i]);
        const double p = hbar * grid.wavenumber(i);
        w_total += w;
        mean += w * p;
        second += w * p * p;
    }
    mean /= w_total;
    second /= w_total;
    return MomentumStats{mean, second - mean * mean};
}

double Wavefunction::potential_energy(const PotentialSpec& well, const IonSpecies& species) const {
    double s = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        s += potential_value(well, species, grid.z(i)) * std::norm(amplitudes[i]);
    return s * grid.dz() / norm();
}

double Wavefunction::kinetic_energy(const IonSpecies& species) const {
    SpectralTransform fft(grid.points);
    std::memcpy(fft.data(), amplitudes.data(), grid.points * sizeof(std::complex<double>));
    fft.forward();
    double w_total = 0.0, t = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double w = std::norm(fft.data()[i]);
        const double k = grid.wavenumber(i);
        w_total += w;
        t += w * hbar * hbar * k * k / (2.0 * species.mass);
    }
    return t / w_total;
}

double Wavefunction::energy(const PotentialSpec& well, const IonSpecies& species) const {
    return kinetic_energy(species) + potential_energy(well, species);
}

std::complex<double> Wavefunction::overlap(const Wavefunction& other) const {
    if (other.amplitudes.size() != amplitudes.size())
        throw DomainError("overlap requires matching grids");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        s += std::conj(amplitudes[i]) * other.amplitudes[i];
    return s * grid.dz();
}

double Wavefunction::edge_weight(double fraction) const {
    const auto n = amplitudes.size();
    const auto edge = static_cast<std::size_t>(fraction * static_cast<double>(n));
    double s = 0.0;
    for (std::size_t i = 0; i < edge; ++i)
        s += std::norm(amplitudes[i]) + std::norm(amplitudes[n - 1 - i]);
    return s * grid.dz();
}

namespace {

void require_margin(const GridSpec& grid, double center, double sigma, double margin_sigmas) {
    if (center - margin_sigmas * sigma < grid.z_min || center + margin_sigmas * sigma > grid.z_max)
        throw GeometryError("wavepacket does not fit in the grid with the required margin");
}

// Pure Gaussian packet  psi(z) = N exp(-A (z-mean)^2 / (4 a0^2) + i p (z-mean)/hbar).
// Re(A) > 0 sets the width, Im(A) the position-momentum correlation.
Wavefunction gaussian_packet(const GridSpec& grid, double a0, std::complex<double> A,
                             double mean_z, double mean_p) {
    Wavefunction psi{grid, std::vector<std::complex<double>>(grid.points)};
    const std::complex<double> i_unit(0.0, 1.0);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double u = grid.z(i) - mean_z;
        psi.amplitudes[i] =
            std::exp(-A * u * u / (4.0 * a0 * a0) + i_unit * mean_p * u / hbar);
    }
    psi.normalize();
    return psi;
}

} // namespace

Wavefunction make_ground_state(const GridSpec& grid, const PotentialSpec& well,
                               const IonSpecies& species) {
    const double a0 = ground_state_extent(species, well.omega0());
    require_margin(grid, well.center, a0, 5.0);
    if (well.is_harmonic()) {
        return gaussian_packet(grid, a0, 1.0, well.center, 0.0);
    }
    return relax_ground_state(grid, well, species);
}

Wavefunction make_coherent_state(const GridSpec& grid, const PotentialSpec& well,
                                 const IonSpecies& species, std::complex<double> alpha) {
    const double a0 = ground_state_extent(species, well.omega0());
    const double mean_z = well.center + 2.0 * a0 * alpha.real();
    const double mean_p = hbar / a0 * alpha.imag();
    require_margin(grid, mean_z, a0, 5.0);
    return gaussian_packet(grid, a0, 1.0, mean_z, mean_p);
}

Wavefunction make_squeezed_state(const GridSpec& grid, const PotentialSpec& well,
                                 const IonSpecies& species, double r, double phi) {
    const double a0 = ground_state_extent(species, well.omega0());
    // Quadrature moments of the squeezed vacuum in units of the vacuum ones:
    //   Var(xi)   = cosh 2r - sinh 2r cos phi          (xi = z/a0)
    //   Cov(xi,k) = -sinh 2r sin phi / 2
    // and the minimum-uncertainty Gaussian with those moments has
    //   A = (1 - 2i Cov) / Var(xi).
    const double var_xi = std::cosh(2.0 * r) - std::sinh(2.0 * r) * std::cos(phi);
    const double cov = -0.5 * std::sinh(2.0 * r) * std::sin(phi);
    const std::complex<double> A(1.0 / var_xi, -2.0 * cov / var_xi);
    // margin against the broadened quadrature: the state breathes to a0 e^r
    require_margin(grid, well.center, a0 * std::exp(std::abs(r)), 5.0);
    return gaussian_packet(grid, a0, A, well.center, 0.0);
}

void write_wavefunction_csv(const Wavefunction& psi, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "z,re_psi,im_psi\n";
    out << "m,1/sqrt(m),1/sqrt(m)\n";
    out.precision(17);
    for (std::size_t i = 0; i < psi.grid.points; ++i) {
        out << psi.grid.z(i) << ',' << psi.amplitudes[i].real() << ','
            << psi.amplitudes[i].imag() << '\n';
    }
}

namespace {
constexpr char snapshot_magic[8] = {'I', 'T', 'W', 'F', '0', '0', '0', '1'};
}

void write_wavefunction_snapshot(const Wavefunction& psi, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out.write(snapshot_magic, sizeof(snapshot_magic));
    const auto u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    const auto f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    u64(psi.grid.points);
    f64(psi.grid.z_min);
    f64(psi.grid.z_max);
    f64(psi.grid.dt);
    u64(psi.grid.steps);
    for (const auto& a : psi.amplitudes) {
        f64(a.real());
        f64(a.imag());
    }
}

Wavefunction read_wavefunction_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, snapshot_magic, 8) != 0)
        throw std::runtime_error("not a wavefunction snapshot: " + path.string());
    const auto u64 = [&] {
        std::uint64_t v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    const auto f64 = [&] {
        double v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    const std::uint64_t points = u64();
    const double z_min = f64();
    const double z_max = f64();
    const double dt = f64();
    const std::uint64_t steps = u64();
    GridSpec grid = GridSpec::make(z_min, z_max, points, dt, steps);
    Wavefunction psi{grid, std::vector<std::complex<double>>(points)};
    for (auto& a : psi.amplitudes) {
        const double re = f64();
        const double im = f64();
        a = {re, im};
    }
    if (!in) throw std::runtime_error("truncated snapshot: " + path.string());
    return psi;
}

} // namespace iontide
