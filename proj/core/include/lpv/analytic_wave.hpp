#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "lpv/derivative_source.hpp"
#include "lpv/medium.hpp"
#include "lpv/shape.hpp"
#include "lpv/wave_grid.hpp"

namespace lpv {

/// psi(t - direction * x / a); direction +1 moves right, -1 left.
struct Translational {
    double a = 1.0;
    int direction = 1;
};

/// psi(t - x / a) * exp(-lambda t). Negative lambda amplifies.
struct DampedTranslational {
    double a = 1.0;
    double lambda = 0.0;
};

/// psi(xi t - k(x)) with k(x) = (xi / c) * integral of n from the profile's kOrigin to x.
struct InhomogeneousMode {
    double xi = 1.0;
    std::shared_ptr<const MediumProfile> medium;
};

using Frame = std::variant<Translational, DampedTranslational, InhomogeneousMode>;

/// Closed-form wave: a sum of shapes, each carried by a frame, with exact
/// mixed partials assembled by the chain rule.
class AnalyticWave final : public DerivativeSource {
public:
    struct Component {
        Shape shape;
        Frame frame;
    };

    AnalyticWave(Shape shape, Frame frame);
    explicit AnalyticWave(std::vector<Component> components);

    const std::vector<Component>& components() const noexcept { return components_; }

    /// Phase argument phi of component `index` at (x, t).
    double phase(double x, double t, std::size_t index = 0) const;

    double value(double x, double t) const { return partial(0, 0, x, t); }

    /// Exact mixed partial; throws CapabilityError when orderT + orderX > maxOrder().
    double partial(int orderT, int orderX, double x, double t) const override;
    int maxOrder() const override { return maxOrder_; }

    WaveGrid sample(const GridGeometry& geometry) const;

    /// Superposition of two waves.
    friend AnalyticWave operator+(const AnalyticWave& lhs, const AnalyticWave& rhs);

private:
    std::vector<Component> components_;
    int maxOrder_ = 0;
};

/// Free function spelling of AnalyticWave::partial.
inline double analytic_partial(const AnalyticWave& wave, double x, double t, int orderT, int orderX) {
    return wave.partial(orderT, orderX, x, t);
}

}  // namespace lpv
