#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "lpv/derivative_source.hpp"
#include "lpv/shape.hpp"
#include "lpv/wave_grid.hpp"

namespace lpv {

/// Default relative threshold below which a PV denominator counts as zero.
inline constexpr double kDefaultSingularityEps = 1e-8;

enum class PvStatus { valid, singular, boundary };

std::string_view to_string(PvStatus status);
PvStatus pv_status_from_string(std::string_view name);

/// A phase velocity with its status. Only valid samples carry a value.
struct PvSample {
    PvStatus status = PvStatus::singular;
    std::optional<double> value;

    bool valid() const noexcept { return status == PvStatus::valid; }

    static PvSample ok(double v) { return {PvStatus::valid, v}; }
    static PvSample singular() { return {PvStatus::singular, std::nullopt}; }
};

/// Attribute traced through space-time: the level d^order psi / dx^order = value.
/// With `extremum` set the start point must also be a maximum (next derivative < 0)
/// or minimum (> 0); only meaningful for order 1 with value 0.
struct AttributeLabel {
    enum class Extremum { none, maximum, minimum };

    int order = 0;
    double value = 0.0;
    Extremum extremum = Extremum::none;
};

/// N-th order phase velocity
///   v_N = -(d^(N+1) psi / dt dx^N) / (d^(N+1) psi / dx^(N+1))
/// at one point. Singular when |denominator| <= eps * source.denominatorScale(N+1);
/// boundary when the source's stencils are one-sided there.
PvSample pv_point(const DerivativeSource& source, int order, double x, double t,
                  double eps = kDefaultSingularityEps);

/// Per-point v_N on the source lattice with a status mask.
class PvField {
public:
    PvField(int order, const GridGeometry& geometry);

    int order() const noexcept { return order_; }
    const GridGeometry& geometry() const noexcept { return geometry_; }

    PvStatus status(int i, int j) const noexcept { return mask_[index(i, j)]; }
    std::optional<double> value(int i, int j) const noexcept {
        if (mask_[index(i, j)] != PvStatus::valid) return std::nullopt;
        return values_[index(i, j)];
    }
    void set(int i, int j, PvStatus status, double v = 0.0) noexcept {
        mask_[index(i, j)] = status;
        values_[index(i, j)] = status == PvStatus::valid ? v : 0.0;
    }

    std::size_t count(PvStatus status) const noexcept;

private:
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(geometry_.nx) + static_cast<std::size_t>(i);
    }

    int order_;
    GridGeometry geometry_;
    std::vector<double> values_;
    std::vector<PvStatus> mask_;
};

/// v_N over a whole grid; the singularity scale is max |d^(N+1) psi / dx^(N+1)| over the grid.
/// Singular takes precedence over boundary. Throws SizingError like grid_partial.
PvField pv_field(const WaveGrid& grid, int order, int accuracy = 4, double eps = kDefaultSingularityEps);

/// Header `# wavegrid ... order=<N>`, then nt rows of nx `v,status` pairs; the value
/// field is empty unless the status is valid.
void write_pvfield_csv(std::ostream& out, const PvField& field);
PvField read_pvfield_csv(std::istream& in);

/// Closed-form PV spectrum of psi(phi) exp(-lambda t), phi = t - x/a:
///   v_N = a (1 - lambda psi^(N)(phi) / psi^(N+1)(phi)),
/// singular when |psi^(N+1)(phi)| <= eps.
PvSample damped_spectrum(double phi, double a, double lambda, const Shape& shape, int order,
                         double eps = kDefaultSingularityEps);

struct KinkSpectrum {
    PvSample v0, v1, v2;
};

/// Arctan-kink spectrum in its published closed form
///   v0 = a (1 + lambda (1 + phi^2) atan(phi))
///   v1 = a (1 - lambda (1 + phi^2) / (2 phi))
///   v2 = a (1 - lambda (phi^3 + phi) / (3 phi^2 - 1)).
/// These follow from damped_spectrum with the sign of lambda flipped, i.e. they
/// describe the growing kink atan(t - x/a) exp(+lambda t). v1 is singular at
/// phi = 0, v2 at phi = +-1/sqrt(3) (threshold eps on psi'' and psi''').
KinkSpectrum kink_spectrum(double phi, double a, double lambda, double eps = kDefaultSingularityEps);

}  // namespace lpv
