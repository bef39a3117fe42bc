#pragma once

namespace lpv {

/// Anything that can report mixed partials d^(orderT+orderX) psi / dt^orderT dx^orderX
/// at an arbitrary space-time point.
class DerivativeSource {
public:
    virtual ~DerivativeSource() = default;

    virtual double partial(int orderT, int orderX, double x, double t) const = 0;

    /// Highest total derivative order available.
    virtual int maxOrder() const = 0;

    /// Magnitude that the relative singularity threshold is scaled by when the
    /// denominator d^(orderX) psi / dx^(orderX) is tested. Point sources use 1.
    virtual double denominatorScale(int /*orderX*/) const { return 1.0; }

    /// Absolute magnitude at or below which that denominator is indistinguishable
    /// from rounding noise. Exact sources use 0.
    virtual double denominatorFloor(int /*orderX*/) const { return 0.0; }

    /// False outside the region where the source is defined.
    virtual bool contains(double /*x*/, double /*t*/) const { return true; }

    /// False where derivatives up to `totalOrder` come from boundary-biased stencils.
    virtual bool interior(double /*x*/, double /*t*/, int /*totalOrder*/) const { return true; }
};

}  // namespace lpv
