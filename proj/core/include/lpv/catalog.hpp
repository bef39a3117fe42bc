#pragma once

#include <memory>
#include <variant>

#include "lpv/analytic_wave.hpp"
#include "lpv/medium.hpp"
#include "lpv/pv.hpp"
#include "lpv/shape.hpp"
#include "lpv/wave_grid.hpp"

namespace lpv {

// --- wave families ---------------------------------------------------------

/// psi(t - x/a) (direction +1) or psi(t + x/a) (direction -1); solves the free wave equation.
AnalyticWave free_wave(const Shape& shape, double a, int direction = 1);
/// psi(t - x/a) exp(-lambda t); solves the damped equation. lambda < 0 gives growth.
AnalyticWave damped_wave(const Shape& shape, double a, double lambda);
/// psi(xi t - k(x)) in the given medium.
AnalyticWave inhom_mode(const Shape& shape, double xi, const MediumProfile& profile);

// --- field equations -------------------------------------------------------

/// (1/a^2) psi_tt - psi_xx = 0
struct FreeEquation {
    double a = 1.0;
};
/// (1/a^2) psi_tt - psi_xx + (2 lambda / a^2) psi_t + (lambda^2 / a^2) psi = 0
struct DampedEquation {
    double a = 1.0;
    double lambda = 0.0;
};
/// (n^2(x)/c^2) psi_tt - psi_xx + (n'/n) psi_x = 0
struct MediumEquation {
    std::shared_ptr<const MediumProfile> medium;
};

using Equation = std::variant<FreeEquation, DampedEquation, MediumEquation>;

/// Pointwise residual of `equation` on a sampled field using stencils of the
/// given accuracy. Interior flags follow the derivative grids.
WaveGrid pde_residual(const WaveGrid& grid, const Equation& equation, int accuracy = 4);

/// Largest interior |residual|.
double residual_norm(const WaveGrid& residual);

// --- inhomogeneous media ---------------------------------------------------

/// Mode parameters: xi is the time component of the translation vector,
/// Lambda = psi'/psi'' at the traced start point.
struct ModeSpec {
    double xi = 1.0;
    double Lambda = 0.0;
};

/// How the second-order medium PV is evaluated.
enum class SecondOrderForm {
    /// c / (n - 3 (c/xi) (psi''/psi''') ln'n + (c^2/xi^2) (n''/n^2) (psi'/psi''')), the published form.
    published,
    /// The published form times (1 - (c/xi) (ln'n / n) (psi''/psi''')), which is what the
    /// chain rule on psi(xi t - k(x)) actually yields. The two agree when n' = 0.
    chainRule,
};

/// Closed-form local PV of order 0, 1 or 2 for psi(xi t - k(x)) at position x and phase phi:
///   v0 = c / n
///   v1 = c / (n - (c/xi) (psi'/psi'') ln'n)
///   v2 see SecondOrderForm.
/// Singular when the shape ratio is undefined (|psi^(order+1)| <= eps) or the
/// denominator magnitude is <= eps. Throws CapabilityError for order > 2.
PvSample medium_pv(const MediumProfile& profile, const ModeSpec& mode, const Shape& shape, int order, double x,
                   double phi, double eps = kDefaultSingularityEps,
                   SecondOrderForm form = SecondOrderForm::published);

}  // namespace lpv
