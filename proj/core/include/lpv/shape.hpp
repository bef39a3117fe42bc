#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpv {

enum class ShapeKind {
    gaussian,       ///< exp(-u^2)
    sech2,          ///< sech^2(u)
    arctan,         ///< atan(u), the kink
    raisedCosine,   ///< (1 + cos(pi u)) / 2 on |u| < 1, zero outside; C^1 at the edges
    sinusoid,       ///< cos(u)
    exponential,    ///< exp(u); psi'/psi'' is the constant `width`
};

std::string_view to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(std::string_view name);

/// One-argument wave profile psi(phi) = amplitude * f((phi - center) / width)
/// with exact derivatives up to maxOrder.
class Shape {
public:
    static constexpr int kDefaultMaxOrder = 8;

    Shape(ShapeKind kind, double amplitude = 1.0, double width = 1.0, double center = 0.0,
          int maxOrder = kDefaultMaxOrder);

    static Shape gaussian() { return Shape(ShapeKind::gaussian); }
    static Shape sech2() { return Shape(ShapeKind::sech2); }
    static Shape kink() { return Shape(ShapeKind::arctan); }
    static Shape raisedCosine(double halfWidth = 1.0) { return Shape(ShapeKind::raisedCosine, 1.0, halfWidth); }
    static Shape sinusoid() { return Shape(ShapeKind::sinusoid); }
    static Shape exponential(double lambdaRatio) { return Shape(ShapeKind::exponential, 1.0, lambdaRatio); }

    ShapeKind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    double width() const noexcept { return width_; }
    double center() const noexcept { return center_; }
    int maxOrder() const noexcept { return maxOrder_; }

    /// Writes psi^(0..order)(phi) into out[0..order]. Throws CapabilityError past maxOrder.
    void derivatives(double phi, int order, std::span<double> out) const;
    std::vector<double> derivatives(double phi, int order) const;
    double derivative(double phi, int n) const;
    double operator()(double phi) const { return derivative(phi, 0); }

private:
    ShapeKind kind_;
    double amplitude_;
    double width_;
    double center_;
    int maxOrder_;
};

}  // namespace lpv
