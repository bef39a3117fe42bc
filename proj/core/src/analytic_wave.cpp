#include "lpv/analytic_wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lpv/errors.hpp"

namespace lpv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kMaxChainOrder = 24;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void validate_frame(const Frame& frame) {
    std::visit(overloaded{
                   [](const Translational& f) {
                       if (!(f.a > 0.0)) throw ConfigError("translational frame: a must be positive");
                       if (f.direction != 1 && f.direction != -1)
                           throw ConfigError("translational frame: direction must be +1 or -1");
                   },
                   [](const DampedTranslational& f) {
                       if (!(f.a > 0.0)) throw ConfigError("damped frame: a must be positive");
                       if (!std::isfinite(f.lambda)) throw ConfigError("damped frame: lambda must be finite");
                   },
                   [](const InhomogeneousMode& f) {
                       if (!(f.xi != 0.0) || !std::isfinite(f.xi)) throw ConfigError("medium mode: xi must be nonzero");
                       if (!f.medium) throw ConfigError("medium mode: missing medium profile");
                   },
               },
               frame);
}

// d^q/dx^q g(phi(x)) = sum_k g^(k)(phi) * B_{q,k}(phi', phi'', ...), partial Bell polynomials.
// `inner[j]` holds phi^(j+1)(x); `outer[k]` holds g^(k)(phi).
double faa_di_bruno(int q, const double* inner, const double* outer) {
    if (q == 0) return outer[0];
    std::array<std::array<double, kMaxChainOrder + 1>, kMaxChainOrder + 1> bell{};
    bell[0][0] = 1.0;
    for (int n = 1; n <= q; ++n)
        for (int k = 1; k <= n; ++k) {
            double s = 0.0;
            for (int i = 1; i <= n - k + 1; ++i) s += binomial(n - 1, i - 1) * inner[i - 1] * bell[static_cast<size_t>(n - i)][static_cast<size_t>(k - 1)];
            bell[static_cast<size_t>(n)][static_cast<size_t>(k)] = s;
        }
    double total = 0.0;
    for (int k = 1; k <= q; ++k) total += outer[k] * bell[static_cast<size_t>(q)][static_cast<size_t>(k)];
    return total;
}

}  // namespace

AnalyticWave::AnalyticWave(Shape shape, Frame frame) : AnalyticWave(std::vector<Component>{{std::move(shape), std::move(frame)}}) {}

AnalyticWave::AnalyticWave(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw ConfigError("analytic wave: no components");
    maxOrder_ = kMaxChainOrder;
    for (const auto& c : components_) {
        validate_frame(c.frame);
        maxOrder_ = std::min(maxOrder_, c.shape.maxOrder());
    }
}

double AnalyticWave::phase(double x, double t, std::size_t index) const {
    const auto& comp = components_.at(index);
    return std::visit(overloaded{
                          [&](const Translational& f) { return t - f.direction * x / f.a; },
                          [&](const DampedTranslational& f) { return t - x / f.a; },
                          [&](const InhomogeneousMode& f) {
                              const auto& m = *f.medium;
                              return f.xi * t - f.xi / m.c() * m.kIntegral(m.kOrigin(), x);
                          },
                      },
                      comp.frame);
}

double AnalyticWave::partial(int orderT, int orderX, double x, double t) const {
    if (orderT < 0 || orderX < 0) throw PreconditionError("analytic wave: negative derivative order");
    const int total = orderT + orderX;
    if (total > maxOrder_)
        throw CapabilityError("analytic wave provides mixed partials up to total order " + std::to_string(maxOrder_) +
                              ", requested " + std::to_string(total));
    std::array<double, kMaxChainOrder + 1> d{};
    double sum = 0.0;
    for (std::size_t idx = 0; idx < components_.size(); ++idx) {
        const auto& comp = components_[idx];
        const double phi = phase(x, t, idx);
        comp.shape.derivatives(phi, total, std::span<double>(d.data(), static_cast<size_t>(total + 1)));
        sum += std::visit(
            overloaded{
                [&](const Translational& f) {
                    // d/dt -> d/dphi, d/dx -> -(direction/a) d/dphi
                    return std::pow(-f.direction / f.a, orderX) * d[static_cast<size_t>(total)];
                },
                [&](const DampedTranslational& f) {
                    // Leibniz over psi(phi) * exp(-lambda t) in t.
                    double s = 0.0;
                    for (int k = 0; k <= orderT; ++k)
                        s += binomial(orderT, k) * std::pow(-f.lambda, orderT - k) * d[static_cast<size_t>(orderX + k)];
                    return std::pow(-1.0 / f.a, orderX) * std::exp(-f.lambda * t) * s;
                },
                [&](const InhomogeneousMode& f) {
                    // phi_x = -(xi/c) n(x), phi^(j) = -(xi/c) n^(j-1)(x)
                    const auto& m = *f.medium;
                    const double kappa = f.xi / m.c();
                    std::array<double, kMaxChainOrder + 1> inner{};
                    for (int j = 0; j < orderX; ++j) inner[static_cast<size_t>(j)] = -kappa * m.derivative(x, j);
                    std::array<double, kMaxChainOrder + 1> outer{};
                    const double xiPow = std::pow(f.xi, orderT);
                    for (int k = 0; k <= orderX; ++k) outer[static_cast<size_t>(k)] = xiPow * d[static_cast<size_t>(orderT + k)];
                    return faa_di_bruno(orderX, inner.data(), outer.data());
                },
            },
            comp.frame);
    }
    return sum;
}

WaveGrid AnalyticWave::sample(const GridGeometry& geometry) const {
    return WaveGrid::sample(geometry, [this](double x, double t) { return value(x, t); });
}

AnalyticWave operator+(const AnalyticWave& lhs, const AnalyticWave& rhs) {
    auto comps = lhs.components_;
    comps.insert(comps.end(), rhs.components_.begin(), rhs.components_.end());
    return AnalyticWave(std::move(comps));
}

}  // namespace lpv
