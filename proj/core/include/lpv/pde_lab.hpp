#pragma once

#include <functional>
#include <string>

#include "lpv/analytic_wave.hpp"
#include "lpv/catalog.hpp"
#include "lpv/tracer.hpp"
#include "lpv/wave_grid.hpp"

namespace lpv {

enum class BoundaryKind {
    periodic,  ///< x in [xMin, xMax) wraps; xMax is not stored
    outgoing,  ///< first-order characteristic extrapolation at both ends (approximate)
};

std::string_view to_string(BoundaryKind kind);

/// Finite-difference solve of one of the catalog field equations.
struct SolverConfig {
    Equation equation = FreeEquation{};
    double xMin = -10.0;
    double xMax = 10.0;
    double t0 = 0.0;
    double tEnd = 1.0;
    double dx = 0.01;
    double dt = 0.005;
    std::function<double(double)> initialValue;  ///< psi(x, t0)
    std::function<double(double)> initialRate;   ///< d psi / dt (x, t0)
    BoundaryKind boundary = BoundaryKind::periodic;
};

/// Upper bound on the Courant number accepted by solve().
inline constexpr double kMaxCourant = 0.9;

/// a dt / dx for free and damped equations, (c / min n) dt / dx for media.
double courant_number(const SolverConfig& config);

/// Lattice the solver writes to.
GridGeometry solver_geometry(const SolverConfig& config);

/// Second-order leapfrog in t with centered second-order differences in x. The
/// damping term is centered at the midpoint; the first step comes from a Taylor
/// expansion using psi_t(x, t0) and psi_tt from the equation. Returns the whole
/// space-time history. Throws ConfigError when the Courant bound is violated or
/// the domain does not divide into whole cells.
WaveGrid solve(const SolverConfig& config);

/// Initial data taken from an analytic solution at t0.
void set_initial_from(SolverConfig& config, const AnalyticWave& wave);

struct EndToEndOptions {
    int accuracy = 4;
    double eps = kDefaultSingularityEps;
    double traceTol = kGridTraceTolerance;
    /// Field comparison only where |denominator| >= fieldFloor * max |denominator|.
    double fieldFloor = 1e-2;
    /// Relative speed tolerance that decides `passed`.
    double tolerance = 1e-2;
    /// Half-width of the search window used to locate the label at the start time.
    double searchHalfWidth = 0.5;
    /// Trace start and end times; default: 10% and 90% of the solve window.
    std::optional<double> traceStart, traceEnd;
};

/// Result of solve -> pv_field -> trace, checked against an analytic reference.
struct EndToEndReport {
    int order = 0;
    double solverResidual = 0.0;     ///< interior max |pde_residual| of the numeric field
    std::size_t fieldCompared = 0;   ///< valid PV nodes above the denominator floor
    double fieldMaxRelError = 0.0;   ///< vs the reference PV at those nodes
    double meanSpeed = 0.0;          ///< (x_end - x_start) / (t_end - t_start) of the trace
    double referenceMeanSpeed = 0.0; ///< same quantity along the trace from the reference PV
    double maxSpeedDeviation = 0.0;  ///< max |v_numeric - v_reference| along the trace
    double maxRelSpeedDeviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    AttributeTrace trace;
    WaveGrid field;

    std::string to_json() const;
};

/// Solves `config`, evaluates the order-`label.order` PV field and traces the label
/// starting near xStartGuess. `reference` is the closed-form solution the config was
/// initialized from; its PVs are the oracle.
EndToEndReport end_to_end_check(const SolverConfig& config, const AnalyticWave& reference,
                                const AttributeLabel& label, double xStartGuess, const EndToEndOptions& options = {});

}  // namespace lpv
