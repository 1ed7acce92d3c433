#pragma once

// Uniform periodic grids, Fourier analysis and the spectral operators built
// on it: differentiation, band-limited interpolation, 2/3-rule dealiasing and
// rectangle-rule quadrature.

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace geoflow {

class PeriodicGrid {
public:
    /// Throws Error(InvalidArgument) unless n is even, n >= 8 and length > 0.
    PeriodicGrid(std::size_t n, double length = 2.0 * std::numbers::pi);

    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }
    double point(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }
    std::vector<double> points() const;

    /// Angular wavenumber 2*pi*k/length of the integer mode k.
    double angular(int k) const noexcept { return 2.0 * std::numbers::pi * k / length_; }

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
    std::size_t n_;
    double length_;
};

PeriodicGrid make_grid(std::size_t n, double length = 2.0 * std::numbers::pi);

class GridField {
public:
    explicit GridField(PeriodicGrid grid);  // zeros
    GridField(PeriodicGrid grid, std::vector<double> values);

    static GridField constant(const PeriodicGrid& grid, double value);
    static GridField sample(const PeriodicGrid& grid, const std::function<double(double)>& f);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& data() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }

    double max_abs() const noexcept;
    bool all_finite() const noexcept;

    GridField& operator+=(const GridField& other);
    GridField& operator-=(const GridField& other);
    GridField& operator*=(double s) noexcept;
    GridField& operator+=(double s) noexcept;

    friend GridField operator+(GridField a, const GridField& b) { return a += b; }
    friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
    friend GridField operator*(GridField a, double s) { return a *= s; }
    friend GridField operator*(double s, GridField a) { return a *= s; }
    friend GridField operator-(GridField a) { return a *= -1.0; }

    /// Pointwise product (no filtering).
    friend GridField hadamard(const GridField& a, const GridField& b);

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

/// Fourier coefficients c_k = (1/n) sum_j f_j exp(-i k 2pi x_j / L), stored in
/// transform order; at(k) accepts k in [-n/2, n/2).
class Spectrum {
public:
    Spectrum(PeriodicGrid grid, std::vector<std::complex<double>> coefficients);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    std::complex<double> at(int k) const;
    std::complex<double>& at(int k);

    /// Wavenumber held in storage slot i.
    int wavenumber(std::size_t i) const noexcept;

    std::span<const std::complex<double>> raw() const noexcept { return coeffs_; }
    std::span<std::complex<double>> raw() noexcept { return coeffs_; }

private:
    std::size_t slot(int k) const;

    PeriodicGrid grid_;
    std::vector<std::complex<double>> coeffs_;
};

Spectrum analyze(const GridField& field);
/// Real part of the inverse transform.
GridField synthesize(const Spectrum& spec);

/// Derivative of the trigonometric interpolant; the k = -n/2 mode is dropped
/// for odd orders.
GridField spectral_derivative(const GridField& field, unsigned order);

/// Multiplies every coefficient by symbol(k), k the integer wavenumber.
GridField apply_multiplier(const GridField& field,
                           const std::function<std::complex<double>(int)>& symbol);

/// Zeroes every mode with |k| > n/3.
Spectrum dealias(Spectrum spec);
GridField dealias(const GridField& field);

/// Pointwise product followed by 2/3 filtering when `filter` is set.
GridField product(const GridField& a, const GridField& b, bool filter = true);

/// Band-limited interpolant with the Nyquist mode taken as a cosine; targets
/// are reduced modulo the grid length.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const GridField& field);

    double operator()(double x) const;
    std::vector<double> operator()(std::span<const double> xs) const;

private:
    PeriodicGrid grid_;
    std::vector<std::complex<double>> positive_;  // c_0 .. c_{n/2-1}
    double nyquist_;
};

std::vector<double> trig_interpolate(const GridField& field, std::span<const double> targets);

/// g(x) = f(x - shift), exact for band-limited f.
GridField translate(const GridField& field, double shift);

/// Rectangle rule sum_j f_j * h, exact for trigonometric polynomials of
/// degree < n.
double integrate(const GridField& field);
double mean(const GridField& field);

/// Throws Error(GridMismatch) when the two grids differ.
void require_same_grid(const GridField& a, const GridField& b, const char* op);

}  // namespace geoflow
