#include "geoflow/spectral.hpp"

#include "geoflow/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace geoflow {

namespace {

using cplx = std::complex<double>;

// FFTW's planner is not reentrant; execution through the new-array interface
// is. Plans live for the whole process.
struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

const PlanPair& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int len = static_cast<int>(n);
    PlanPair p{fftw_plan_dft_1d(len, in, out, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(len, in, out, FFTW_BACKWARD, flags)};
    return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::vector<cplx>& in, std::vector<cplx>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t n, double length) : n_(n), length_(length) {
    if (n < 8) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 8, got " + std::to_string(n));
    if (n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "grid size must be even, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw Error(ErrorCode::InvalidArgument, "grid length must be positive and finite");
}

std::vector<double> PeriodicGrid::points() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = point(j);
    return xs;
}

PeriodicGrid make_grid(std::size_t n, double length) { return PeriodicGrid(n, length); }

// ---------------------------------------------------------------------------

GridField::GridField(PeriodicGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridField::GridField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw Error(ErrorCode::InvalidArgument,
                    "field has " + std::to_string(values_.size()) + " values for a grid of " +
                        std::to_string(grid_.size()));
    if (!all_finite()) throw Error(ErrorCode::InvalidArgument, "field values must be finite");
}

GridField GridField::constant(const PeriodicGrid& grid, double value) {
    return GridField(grid, std::vector<double>(grid.size(), value));
}

GridField GridField::sample(const PeriodicGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.point(j));
    return GridField(grid, std::move(v));
}

double GridField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridField& GridField::operator+=(const GridField& other) {
    require_same_grid(*this, other, "addition");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

GridField& GridField::operator-=(const GridField& other) {
    require_same_grid(*this, other, "subtraction");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

GridField& GridField::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

GridField& GridField::operator+=(double s) noexcept {
    for (double& v : values_) v += s;
    return *this;
}

GridField hadamard(const GridField& a, const GridField& b) {
    require_same_grid(a, b, "product");
    GridField out = a;
    for (std::size_t j = 0; j < out.values_.size(); ++j) out.values_[j] *= b.values_[j];
    return out;
}

void require_same_grid(const GridField& a, const GridField& b, const char* op) {
    if (!(a.grid() == b.grid()))
        throw Error(ErrorCode::GridMismatch, std::string(op) + ": operands live on different grids (n=" +
                                                 std::to_string(a.grid().size()) + " vs n=" +
                                                 std::to_string(b.grid().size()) + ")");
}

// ---------------------------------------------------------------------------

Spectrum::Spectrum(PeriodicGrid grid, std::vector<std::complex<double>> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != grid_.size())
        throw Error(ErrorCode::InvalidArgument, "spectrum size does not match grid");
}

std::size_t Spectrum::slot(int k) const {
    const int n = static_cast<int>(coeffs_.size());
    if (k < -n / 2 || k >= n / 2)
        throw Error(ErrorCode::OutOfRange, "wavenumber " + std::to_string(k) + " outside [-n/2, n/2)");
    return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

std::complex<double> Spectrum::at(int k) const { return coeffs_[slot(k)]; }
std::complex<double>& Spectrum::at(int k) { return coeffs_[slot(k)]; }

int Spectrum::wavenumber(std::size_t i) const noexcept {
    const int n = static_cast<int>(coeffs_.size());
    const int k = static_cast<int>(i);
    return k < n / 2 ? k : k - n;
}

Spectrum analyze(const GridField& field) {
    const std::size_t n = field.size();
    std::vector<cplx> in(field.values().begin(), field.values().end());
    std::vector<cplx> out(n);
    execute(plans_for(n).forward, in, out);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= scale;
    return Spectrum(field.grid(), std::move(out));
}

GridField synthesize(const Spectrum& spec) {
    const std::size_t n = spec.size();
    std::vector<cplx> in(spec.raw().begin(), spec.raw().end());
    std::vector<cplx> out(n);
    execute(plans_for(n).backward, in, out);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = out[j].real();
    return GridField(spec.grid(), std::move(v));
}

GridField apply_multiplier(const GridField& field, const std::function<std::complex<double>(int)>& symbol) {
    Spectrum s = analyze(field);
    auto raw = s.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] *= symbol(s.wavenumber(i));
    return synthesize(s);
}

GridField spectral_derivative(const GridField& field, unsigned order) {
    if (order == 0) return field;
    const PeriodicGrid& g = field.grid();
    const int nyquist = -static_cast<int>(g.size() / 2);
    return apply_multiplier(field, [&](int k) -> cplx {
        if (order % 2 == 1 && k == nyquist) return 0.0;
        return std::pow(cplx(0.0, g.angular(k)), static_cast<int>(order));
    });
}

Spectrum dealias(Spectrum spec) {
    const int n = static_cast<int>(spec.size());
    auto raw = spec.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        // |k| > n/3 without rounding: 3|k| > n
        if (3 * std::abs(spec.wavenumber(i)) > n) raw[i] = 0.0;
    }
    return spec;
}

GridField dealias(const GridField& field) { return synthesize(dealias(analyze(field))); }

GridField product(const GridField& a, const GridField& b, bool filter) {
    GridField p = hadamard(a, b);
    return filter ? dealias(p) : p;
}

// ---------------------------------------------------------------------------

TrigInterpolant::TrigInterpolant(const GridField& field) : grid_(field.grid()) {
    const Spectrum s = analyze(field);
    const int half = static_cast<int>(grid_.size() / 2);
    positive_.resize(static_cast<std::size_t>(half));
    for (int k = 0; k < half; ++k) positive_[static_cast<std::size_t>(k)] = s.at(k);
    nyquist_ = s.at(-half).real();
}

double TrigInterpolant::operator()(double x) const {
    const double theta = 2.0 * std::numbers::pi * x / grid_.length();
    const cplx step = std::polar(1.0, theta);
    double acc = positive_[0].real();
    cplx w = 1.0;
    for (std::size_t k = 1; k < positive_.size(); ++k) {
        // Re-anchor the power recurrence periodically to bound drift.
        w = (k % 64 == 0) ? std::polar(1.0, theta * static_cast<double>(k)) : w * step;
        acc += 2.0 * (positive_[k] * w).real();
    }
    acc += nyquist_ * std::cos(theta * static_cast<double>(positive_.size()));
    return acc;
}

std::vector<double> TrigInterpolant::operator()(std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
    return out;
}

std::vector<double> trig_interpolate(const GridField& field, std::span<const double> targets) {
    return TrigInterpolant(field)(targets);
}

GridField translate(const GridField& field, double shift) {
    const PeriodicGrid& g = field.grid();
    const int nyquist = -static_cast<int>(g.size() / 2);
    return apply_multiplier(field, [&](int k) -> cplx {
        const double phase = g.angular(k) * shift;
        if (k == nyquist) return std::cos(phase);
        return std::polar(1.0, -phase);
    });
}

double integrate(const GridField& field) {
    double s = 0.0;
    for (double v : field.values()) s += v;
    return s * field.grid().spacing();
}

double mean(const GridField& field) { return integrate(field) / field.grid().length(); }

}  // namespace geoflow
