#include "lpv/pde_lab.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "lpv/errors.hpp"
#include "lpv/grid_probe.hpp"

namespace lpv {

std::string_view to_string(BoundaryKind kind) { return kind == BoundaryKind::periodic ? "periodic" : "outgoing"; }

namespace {

int whole_cells(double length, double h, const char* what) {
    const double cells = length / h;
    const double rounded = std::round(cells);
    if (!(rounded >= 1.0) || std::fabs(cells - rounded) > 1e-9 * std::max(1.0, cells))
        throw ConfigError(std::string("solver: ") + what + " is not a whole number of steps");
    return static_cast<int>(rounded);
}

// A(x) psi_tt + B psi_t + C psi = psi_xx - D(x) psi_x, plus the characteristic speed at x.
struct Coefficients {
    std::vector<double> A, D, speed;
    double B = 0.0, C = 0.0;
};

Coefficients coefficients(const SolverConfig& cfg, const GridGeometry& g) {
    Coefficients k;
    const auto nx = static_cast<size_t>(g.nx);
    k.A.assign(nx, 0.0);
    k.D.assign(nx, 0.0);
    k.speed.assign(nx, 0.0);
    if (const auto* eq = std::get_if<FreeEquation>(&cfg.equation)) {
        std::fill(k.A.begin(), k.A.end(), 1.0 / (eq->a * eq->a));
        std::fill(k.speed.begin(), k.speed.end(), eq->a);
    } else if (const auto* eq = std::get_if<DampedEquation>(&cfg.equation)) {
        const double ia2 = 1.0 / (eq->a * eq->a);
        std::fill(k.A.begin(), k.A.end(), ia2);
        std::fill(k.speed.begin(), k.speed.end(), eq->a);
        k.B = 2.0 * eq->lambda * ia2;
        k.C = eq->lambda * eq->lambda * ia2;
    } else {
        const auto& me = std::get<MediumEquation>(cfg.equation);
        if (!me.medium) throw ConfigError("solver: medium equation without profile");
        const auto& m = *me.medium;
        for (size_t i = 0; i < nx; ++i) {
            const double x = g.x(static_cast<int>(i));
            const double n = m.n(x);
            if (!(n > 0.0)) throw ConfigError("solver: n(x) must be positive on the domain");
            k.A[i] = n * n / (m.c() * m.c());
            k.D[i] = m.logDerivative(x);
            k.speed[i] = m.c() / n;
        }
    }
    return k;
}

}  // namespace

GridGeometry solver_geometry(const SolverConfig& cfg) {
    if (!(cfg.dx > 0.0) || !(cfg.dt > 0.0)) throw ConfigError("solver: dx and dt must be positive");
    if (!(cfg.xMax > cfg.xMin) || !(cfg.tEnd > cfg.t0)) throw ConfigError("solver: empty domain");
    GridGeometry g;
    g.x0 = cfg.xMin;
    g.dx = cfg.dx;
    const int cells = whole_cells(cfg.xMax - cfg.xMin, cfg.dx, "x range");
    g.nx = cfg.boundary == BoundaryKind::periodic ? cells : cells + 1;
    g.t0 = cfg.t0;
    g.dt = cfg.dt;
    g.nt = whole_cells(cfg.tEnd - cfg.t0, cfg.dt, "t range") + 1;
    g.validate();
    if (g.nx < 3) throw ConfigError("solver: need at least 3 spatial points");
    return g;
}

double courant_number(const SolverConfig& cfg) {
    const GridGeometry g = solver_geometry(cfg);
    const Coefficients k = coefficients(cfg, g);
    return *std::max_element(k.speed.begin(), k.speed.end()) * cfg.dt / cfg.dx;
}

WaveGrid solve(const SolverConfig& cfg) {
    const GridGeometry g = solver_geometry(cfg);
    const Coefficients k = coefficients(cfg, g);
    const double courant = *std::max_element(k.speed.begin(), k.speed.end()) * cfg.dt / cfg.dx;
    if (courant > kMaxCourant + 1e-12)
        throw ConfigError("solver: Courant number " + format_double(courant) + " exceeds the stability bound " +
                          format_double(kMaxCourant));
    if (!cfg.initialValue) throw ConfigError("solver: missing initial value sampler");

    const int nx = g.nx;
    const bool periodic = cfg.boundary == BoundaryKind::periodic;
    const double dx = g.dx, dt = g.dt;
    WaveGrid out(g);

    std::vector<double> prev(static_cast<size_t>(nx)), cur(static_cast<size_t>(nx)), next(static_cast<size_t>(nx));
    std::vector<double> rate(static_cast<size_t>(nx), 0.0);
    for (int i = 0; i < nx; ++i) {
        cur[static_cast<size_t>(i)] = cfg.initialValue(g.x(i));
        if (cfg.initialRate) rate[static_cast<size_t>(i)] = cfg.initialRate(g.x(i));
        if (!std::isfinite(cur[static_cast<size_t>(i)]) || !std::isfinite(rate[static_cast<size_t>(i)]))
            throw ConfigError("solver: initial data must be finite");
    }

    // L u = u_xx - D u_x with second-order centered differences.
    auto spatial = [&](const std::vector<double>& u, int i) {
        const int im = periodic ? (i - 1 + nx) % nx : i - 1;
        const int ip = periodic ? (i + 1) % nx : i + 1;
        const double ui = u[static_cast<size_t>(i)], um = u[static_cast<size_t>(im)], up = u[static_cast<size_t>(ip)];
        return (up - 2.0 * ui + um) / (dx * dx) - k.D[static_cast<size_t>(i)] * (up - um) / (2.0 * dx);
    };
    const int lo = periodic ? 0 : 1;
    const int hi = periodic ? nx - 1 : nx - 2;
    auto outgoing = [&](const std::vector<double>& u, std::vector<double>& un) {
        if (periodic) return;
        const double sl = k.speed.front() * dt / dx;
        const double sr = k.speed.back() * dt / dx;
        un[0] = u[0] + sl * (u[1] - u[0]);
        un[static_cast<size_t>(nx - 1)] = u[static_cast<size_t>(nx - 1)] - sr * (u[static_cast<size_t>(nx - 1)] - u[static_cast<size_t>(nx - 2)]);
    };

    for (int i = 0; i < nx; ++i) out(i, 0) = cur[static_cast<size_t>(i)];

    // Taylor start: u1 = u0 + dt u_t + dt^2/2 u_tt with u_tt from the equation.
    for (int i = lo; i <= hi; ++i) {
        const size_t s = static_cast<size_t>(i);
        const double utt = (spatial(cur, i) - k.B * rate[s] - k.C * cur[s]) / k.A[s];
        next[s] = cur[s] + dt * rate[s] + 0.5 * dt * dt * utt;
    }
    outgoing(cur, next);
    prev.swap(cur);
    cur.swap(next);
    for (int i = 0; i < nx; ++i) out(i, 1) = cur[static_cast<size_t>(i)];

    for (int j = 2; j < g.nt; ++j) {
        for (int i = lo; i <= hi; ++i) {
            const size_t s = static_cast<size_t>(i);
            const double a = k.A[s] / (dt * dt);
            const double b = k.B / (2.0 * dt);
            next[s] = (spatial(cur, i) - k.C * cur[s] + a * (2.0 * cur[s] - prev[s]) + b * prev[s]) / (a + b);
        }
        outgoing(cur, next);
        prev.swap(cur);
        cur.swap(next);
        for (int i = 0; i < nx; ++i) out(i, j) = cur[static_cast<size_t>(i)];
    }
    return out;
}

void set_initial_from(SolverConfig& config, const AnalyticWave& wave) {
    const double t0 = config.t0;
    config.initialValue = [wave, t0](double x) { return wave.partial(0, 0, x, t0); };
    config.initialRate = [wave, t0](double x) { return wave.partial(1, 0, x, t0); };
}

std::string EndToEndReport::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order;
    j["solver_residual"] = solverResidual;
    j["field_compared"] = fieldCompared;
    j["field_max_rel_error"] = fieldMaxRelError;
    j["mean_speed"] = meanSpeed;
    j["reference_mean_speed"] = referenceMeanSpeed;
    j["max_speed_deviation"] = maxSpeedDeviation;
    j["max_rel_speed_deviation"] = maxRelSpeedDeviation;
    j["tolerance"] = tolerance;
    j["trace_status"] = std::string(lpv::to_string(trace.status));
    j["trace_points"] = trace.points.size();
    j["passed"] = passed;
    return j.dump(2);
}

EndToEndReport end_to_end_check(const SolverConfig& config, const AnalyticWave& reference,
                                const AttributeLabel& label, double xStartGuess, const EndToEndOptions& options) {
    EndToEndReport report;
    report.order = label.order;
    report.tolerance = options.tolerance;
    report.field = solve(config);
    const auto& g = report.field.geometry();
    report.solverResidual = residual_norm(pde_residual(report.field, config.equation, options.accuracy));

    const int order = label.order;
    const PvField pv = pv_field(report.field, order, options.accuracy, options.eps);
    const GridProbe probe(report.field, options.accuracy);
    const WaveGrid& den = probe.partialGrid(0, order + 1);
    const double floor = options.fieldFloor * den.maxAbs();
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto v = pv.value(i, j);
            if (!v || std::fabs(den(i, j)) < floor) continue;
            const PvSample ref = pv_point(reference, order, g.x(i), g.t(j), options.eps);
            if (!ref.valid()) continue;
            ++report.fieldCompared;
            report.fieldMaxRelError =
                std::max(report.fieldMaxRelError, std::fabs(*v - *ref.value) / std::max(std::fabs(*ref.value), 1e-300));
        }

    const double span = g.tEnd() - g.t0;
    const double tStart = options.traceStart.value_or(g.t0 + 0.1 * span);
    const double tStop = options.traceEnd.value_or(g.t0 + 0.9 * span);
    const double xs = locate_attribute(probe, label, tStart, xStartGuess - options.searchHalfWidth,
                                       xStartGuess + options.searchHalfWidth, options.traceTol);
    TraceOptions topts;
    topts.eps = options.eps;
    report.trace = trace_attribute(probe, label, xs, tStart, tStop, g.dt, options.traceTol, topts);

    const auto& pts = report.trace.points;
    double refIntegral = 0.0, prevRef = 0.0, prevT = 0.0;
    bool havePrev = false;
    for (const auto& p : pts) {
        const PvSample ref = pv_point(reference, order, p.x, p.t, options.eps);
        if (!ref.valid()) continue;
        const double dev = std::fabs(p.v - *ref.value);
        report.maxSpeedDeviation = std::max(report.maxSpeedDeviation, dev);
        report.maxRelSpeedDeviation = std::max(report.maxRelSpeedDeviation, dev / std::fabs(*ref.value));
        if (havePrev) refIntegral += 0.5 * (prevRef + *ref.value) * (p.t - prevT);
        prevRef = *ref.value;
        prevT = p.t;
        havePrev = true;
    }
    const double dtTrace = pts.empty() ? 0.0 : pts.back().t - pts.front().t;
    if (dtTrace != 0.0) {
        report.meanSpeed = (pts.back().x - pts.front().x) / dtTrace;
        report.referenceMeanSpeed = refIntegral / dtTrace;
    }
    report.passed = report.trace.status == TraceStatus::completed && pts.size() > 1 &&
                    report.maxRelSpeedDeviation <= options.tolerance;
    return report;
}

}  // namespace lpv
