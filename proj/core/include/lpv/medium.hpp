#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpv {

/// Refractive-index profile n(x) of a 1-D inhomogeneous medium, with its
/// x-derivatives and the optical path integral of n.
///
/// Profile families:
///   constant  n(x) = n0
///   linear    n(x) = n0 + slope * x
///   tanh      n(x) = n0 + dn * (1 + tanh((x - center) / width)) / 2, rising from n0 to n0 + dn
///   table     natural cubic spline through (x, n) pairs, linear beyond the ends
class MediumProfile {
public:
    enum class Kind { constant, linear, tanh, table };

    static MediumProfile constant(double n0, double c = 1.0);
    static MediumProfile linear(double n0, double slope, double c = 1.0);
    static MediumProfile tanh(double n0, double dn, double center, double width, double c = 1.0);
    static MediumProfile table(std::vector<std::pair<double, double>> points, double c = 1.0);

    /// `{"type":"tanh","n0":..,"dn":..,"center":..,"width":..}`, `{"type":"table","points":[[x,n],..]}`,
    /// `{"type":"constant","n":..}` or `{"type":"linear","n0":..,"slope":..}`; optional `"c"` and
    /// `"k_origin"`. Throws ConfigError.
    static MediumProfile from_json(std::string_view text);
    std::string to_json() const;

    Kind kind() const noexcept { return kind_; }
    /// Reference speed (vacuum light speed in the optical reading).
    double c() const noexcept { return c_; }
    /// Lower limit of the phase integral k(x) = (xi / c) * kIntegral(kOrigin, x).
    double kOrigin() const noexcept { return kOrigin_; }
    void setKOrigin(double x) noexcept { kOrigin_ = x; }

    double n(double x) const { return derivative(x, 0); }
    /// d^order n / dx^order; arbitrary order for the analytic families, zero past 3 for tables.
    double derivative(double x, int order) const;
    /// n'(x) / n(x).
    double logDerivative(double x) const;

    /// Integral of n over [a, b] by adaptive Gauss-Kronrod quadrature, absolute tolerance 1e-12.
    /// Throws NumericError when the tolerance is not reached.
    double kIntegral(double a, double b) const;

    /// Smallest n on [a, b] sampled at `samples` evenly spaced points.
    double minN(double a, double b, int samples = 1001) const;

    static constexpr double kQuadratureTolerance = 1e-12;

private:
    MediumProfile() = default;

    Kind kind_ = Kind::constant;
    double c_ = 1.0;
    double kOrigin_ = 0.0;
    double n0_ = 1.0;
    double slope_ = 0.0;  // linear slope or tanh step height
    double center_ = 0.0;
    double width_ = 1.0;
    // table: knots, values and spline second derivatives
    std::vector<double> xs_, ns_, m_;
};

}  // namespace lpv
