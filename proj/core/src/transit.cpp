#include <cmath>
#include <json.hpp>

#include "lpv/tracer.hpp"

namespace lpv {

std::string_view to_string(GlobalTransit::Method method) {
    return method == GlobalTransit::Method::odeTrace ? "odeTrace" : "quadratureFormula";
}

std::string to_json(const GlobalTransit& transit) {
    nlohmann::ordered_json j;
    j["x0"] = transit.x0;
    j["x1"] = transit.x1;
    j["t0"] = transit.t0;
    j["t1"] = transit.t1;
    j["gamma"] = transit.gamma;
    j["method"] = std::string(to_string(transit.method));
    return j.dump(2);
}

namespace {

void check_interval(const MediumProfile& profile, double x0, double x1) {
    if (!(x1 > x0)) throw PreconditionError("transit: x1 must exceed x0");
    if (!(profile.minN(x0, x1) > 0.0)) throw PreconditionError("transit: n must be positive on [x0, x1]");
}

}  // namespace

GlobalTransit transit_gamma_quadrature(const MediumProfile& profile, const ModeSpec& mode, double x0, double x1) {
    check_interval(profile, x0, x1);
    if (!(mode.xi != 0.0)) throw PreconditionError("transit: xi must be nonzero");
    const double c = profile.c();
    const double path = profile.kIntegral(x0, x1);
    const double ct = path - mode.Lambda * (c / mode.xi) * std::log(profile.n(x1) / profile.n(x0));
    GlobalTransit g;
    g.x0 = x0;
    g.x1 = x1;
    g.t0 = 0.0;
    g.t1 = ct / c;
    g.gamma = ct / (x1 - x0);
    g.method = GlobalTransit::Method::quadratureFormula;
    return g;
}

GlobalTransit transit_gamma_trace(const MediumProfile& profile, const ModeSpec& mode, const Shape& shape, double x0,
                                  double phi0, double x1, double step, double tol, const TraceOptions& options) {
    check_interval(profile, x0, x1);
    if (!(mode.xi != 0.0)) throw PreconditionError("transit: xi must be nonzero");
    const auto d = shape.derivatives(phi0, 2);
    const double shapeLambda = d[1] / d[2];
    if (!(std::fabs(shapeLambda - mode.Lambda) <= 1e-9 * std::max(1.0, std::fabs(mode.Lambda))))
        throw PreconditionError("transit: mode Lambda " + format_double(mode.Lambda) +
                                " differs from psi'/psi'' = " + format_double(shapeLambda) + " at phi0");

    const AnalyticWave wave = inhom_mode(shape, mode.xi, profile);
    const double c = profile.c();
    const double t0 = (phi0 + mode.xi / c * profile.kIntegral(profile.kOrigin(), x0)) / mode.xi;
    const AttributeLabel label{1, wave.partial(0, 1, x0, t0)};

    TraceOptions opts = options;
    opts.xStop = x1;
    // Generous horizon; the trace stops at x1.
    double nMax = 0.0;
    for (int i = 0; i <= 100; ++i) nMax = std::max(nMax, profile.n(x0 + (x1 - x0) * i / 100.0));
    const double tEnd = t0 + 1e3 * nMax * (x1 - x0) / c;

    const AttributeTrace trace = trace_attribute(wave, label, x0, t0, tEnd, step, tol, opts);
    const auto& last = trace.points.back();
    if (trace.status != TraceStatus::completed || last.x != x1)
        throw IncompleteTraceError("transit: trace stopped at x=" + format_double(last.x) + " before x1 (" +
                                       std::string(to_string(trace.status)) + ": " + trace.message + ")",
                                   trace.status);
    GlobalTransit g;
    g.x0 = x0;
    g.x1 = x1;
    g.t0 = t0;
    g.t1 = last.t;
    g.gamma = c * (g.t1 - g.t0) / (x1 - x0);
    g.method = GlobalTransit::Method::odeTrace;
    return g;
}

SeparationTable dynamic_separation_scan(const MediumProfile& profile, double x0, double x1,
                                        std::span<const double> xiValues, double Lambda) {
    if (xiValues.empty()) throw PreconditionError("separation scan: no xi values");
    check_interval(profile, x0, x1);
    SeparationTable table;
    table.x0 = x0;
    table.x1 = x1;
    table.Lambda = Lambda;
    table.meanN = profile.kIntegral(x0, x1) / (x1 - x0);
    for (double xi : xiValues) {
        if (!(xi != 0.0)) throw PreconditionError("separation scan: xi must be nonzero");
        const GlobalTransit g = transit_gamma_quadrature(profile, ModeSpec{xi, Lambda}, x0, x1);
        table.rows.push_back({xi, g.gamma, g.gamma - table.meanN});
    }
    return table;
}

SeparationTable dynamic_separation_scan(const MediumProfile& profile, const Shape& shape, double phi0, double x0,
                                        double x1, std::span<const double> xiValues) {
    const auto d = shape.derivatives(phi0, 2);
    if (d[2] == 0.0) throw PreconditionError("separation scan: psi'' vanishes at phi0");
    return dynamic_separation_scan(profile, x0, x1, xiValues, d[1] / d[2]);
}

}  // namespace lpv
