#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpv/catalog.hpp"
#include "lpv/derivative_source.hpp"
#include "lpv/errors.hpp"
#include "lpv/pv.hpp"

namespace lpv {

enum class TraceStatus { completed, hitSingularity, leftDomain };

std::string_view to_string(TraceStatus status);

struct TracePoint {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;              ///< v_N at the accepted point
    double levelResidual = 0.0;  ///< |d^N psi/dx^N - label value|
};

struct StepControl {
    double step = 0.0;
    int steps = 0;
    int correctionIterations = 0;     ///< Newton/bisection iterations over the whole trace
    int maxIterationsPerStep = 0;
    int bisectionFallbacks = 0;
};

/// Trajectory x(t) of a labelled attribute. t is strictly monotone in the
/// direction of integration.
struct AttributeTrace {
    int order = 0;
    std::vector<TracePoint> points;
    TraceStatus status = TraceStatus::completed;
    StepControl stepControl;
    std::string message;  ///< why a trace stopped early
};

struct TraceOptions {
    double eps = kDefaultSingularityEps;
    /// Restore the level condition after every RK4 step. Off gives the bare RK4 trajectory.
    bool correct = true;
    int maxCorrectionIterations = 25;
    /// Stop as soon as the trace crosses this position; the crossing time is solved
    /// from the level condition at x = xStop.
    std::optional<double> xStop;
};

/// Default level tolerances.
inline constexpr double kAnalyticTraceTolerance = 1e-9;
inline constexpr double kGridTraceTolerance = 1e-6;

/// Integrates dx/dt = v_N(x, t) from (x0, t0) to tEnd with fixed-step RK4 as
/// predictor and a safeguarded Newton correction (bisection fallback) of
/// d^N psi/dx^N = label.value in x at fixed t as corrector.
///
/// Throws PreconditionError when the label does not hold at the start within
/// `tol`, the start is singular, or an extremum check fails. Singular stages or a
/// corrector that does not converge end the trace with hitSingularity; leaving
/// the source's interior ends it with leftDomain.
AttributeTrace trace_attribute(const DerivativeSource& source, const AttributeLabel& label, double x0, double t0,
                               double tEnd, double step, double tol, const TraceOptions& options = {});

/// Position in [xLo, xHi] where the label holds at time t (bisection on a sign
/// change, then Newton polish). Throws PreconditionError without a sign change.
double locate_attribute(const DerivativeSource& source, const AttributeLabel& label, double t, double xLo,
                        double xHi, double tol);

/// Columns `t,x,v,levelResidual`.
void write_trace_csv(std::ostream& out, const AttributeTrace& trace);

// --- global transit --------------------------------------------------------

struct GlobalTransit {
    enum class Method { odeTrace, quadratureFormula };

    double x0 = 0.0, x1 = 0.0;
    double t0 = 0.0, t1 = 0.0;
    double gamma = 0.0;  ///< c (t1 - t0) / (x1 - x0)
    Method method = Method::quadratureFormula;
};

std::string_view to_string(GlobalTransit::Method method);

/// `{"x0":..,"x1":..,"t0":..,"t1":..,"gamma":..,"method":..}`
std::string to_json(const GlobalTransit& transit);

/// A trace that stopped before reaching its target.
class IncompleteTraceError : public NumericError {
public:
    IncompleteTraceError(const std::string& what, TraceStatus status) : NumericError(what), status_(status) {}
    TraceStatus status() const noexcept { return status_; }

private:
    TraceStatus status_;
};

/// gamma = [integral of n over [x0, x1] - Lambda (c/xi) ln(n(x1)/n(x0))] / (x1 - x0), with t0 = 0.
GlobalTransit transit_gamma_quadrature(const MediumProfile& profile, const ModeSpec& mode, double x0, double x1);

/// Traces the first-order attribute of psi(xi t - k(x)) from x0 (phase phi0 there)
/// until it reaches x1 and reads gamma off the elapsed time. mode.Lambda must equal
/// psi'/psi'' of `shape` at phi0. Throws IncompleteTraceError if x1 is not reached.
GlobalTransit transit_gamma_trace(const MediumProfile& profile, const ModeSpec& mode, const Shape& shape, double x0,
                                  double phi0, double x1, double step, double tol = kAnalyticTraceTolerance,
                                  const TraceOptions& options = {});

struct SeparationRow {
    double xi = 0.0;
    double gamma = 0.0;
    double correction = 0.0;  ///< gamma - mean n
};

struct SeparationTable {
    double x0 = 0.0, x1 = 0.0;
    double Lambda = 0.0;
    double meanN = 0.0;
    std::vector<SeparationRow> rows;
};

/// gamma(xi) for each xi via the quadrature formula. Throws PreconditionError on
/// an empty list or a zero xi.
SeparationTable dynamic_separation_scan(const MediumProfile& profile, double x0, double x1,
                                        std::span<const double> xiValues, double Lambda);
/// Same, with Lambda = psi'/psi'' of `shape` at phi0.
SeparationTable dynamic_separation_scan(const MediumProfile& profile, const Shape& shape, double phi0, double x0,
                                        double x1, std::span<const double> xiValues);

}  // namespace lpv
