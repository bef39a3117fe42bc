#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "lpv/catalog.hpp"
#include "lpv/config.hpp"
#include "lpv/errors.hpp"
#include "lpv/grid_probe.hpp"
#include "lpv/pde_lab.hpp"
#include "lpv/pv.hpp"
#include "lpv/relativity.hpp"
#include "lpv/tracer.hpp"

namespace lpv::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Relative trace/quadrature agreement that confirms a transit finding.
constexpr double kTransitAgreement = 1e-4;

std::string num(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

Json geometry_json(const GridGeometry& g) {
    return {{"x0", g.x0}, {"dx", g.dx}, {"nx", g.nx}, {"t0", g.t0}, {"dt", g.dt}, {"nt", g.nt}};
}

GridGeometry geometry_from(const Json& j) {
    GridGeometry g{j.at("x0").get<double>(), j.at("dx").get<double>(), j.at("nx").get<int>(),
                   j.at("t0").get<double>(), j.at("dt").get<double>(), j.at("nt").get<int>()};
    g.validate();
    return g;
}

WaveGrid read_grid_file(const RunContext& ctx, const std::string& name) {
    const auto path = ctx.resolvePath(name);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    return read_wavegrid_csv(in);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string grid_csv(const WaveGrid& grid) {
    std::ostringstream s;
    write_wavegrid_csv(s, grid);
    return s.str();
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// --- analyze ----------------------------------------------------------------

void analyze_order(RunContext& ctx, const WaveGrid& grid, int order, Json& summary, std::string& plot) {
    const auto& tol = ctx.tolerances();
    const PvField field = pv_field(grid, order, tol.accuracy, tol.eps);
    const auto& g = field.geometry();
    std::ostringstream csv, lng;
    write_pvfield_csv(csv, field);
    lng << "x,t,v,status\n";
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto v = field.value(i, j);
            if (v) lo = std::min(lo, *v), hi = std::max(hi, *v);
            lng << num(g.x(i)) << ',' << num(g.t(j)) << ',' << num(v.value_or(kNaN)) << ','
                << to_string(field.status(i, j)) << '\n';
        }
        lng << '\n';
    }
    const std::string base = "pv_order" + std::to_string(order);
    ctx.emit(base + ".csv", csv.str());
    ctx.emit(base + "_long.csv", lng.str());
    Json o;
    o["order"] = order;
    o["valid"] = field.count(PvStatus::valid);
    o["singular"] = field.count(PvStatus::singular);
    o["boundary"] = field.count(PvStatus::boundary);
    o["min"] = field.count(PvStatus::valid) ? lo : kNaN;
    o["max"] = field.count(PvStatus::valid) ? hi : kNaN;
    summary["orders"].push_back(o);
    plot += "set title 'v_" + std::to_string(order) + "'\nsplot " + quoted(base + "_long.csv") +
            " using 2:1:3 with pm3d notitle\npause -1\n";
}

// --- trace ------------------------------------------------------------------

AttributeLabel::Extremum extremum_from(const Json& j) {
    const std::string e = j.value("extremum", std::string("none"));
    if (e == "none") return AttributeLabel::Extremum::none;
    if (e == "maximum") return AttributeLabel::Extremum::maximum;
    if (e == "minimum") return AttributeLabel::Extremum::minimum;
    throw ConfigError("unknown extremum '" + e + "'");
}

double max_residual(const AttributeTrace& tr) {
    double r = 0.0;
    for (const auto& p : tr.points) r = std::max(r, p.levelResidual);
    return r;
}

// --- separation scan --------------------------------------------------------

std::vector<double> number_list(const Json& j) {
    if (j.is_number()) return {j.get<double>()};
    return j.get<std::vector<double>>();
}

double max_n(const MediumProfile& profile, double x0, double x1) {
    double m = 0.0;
    for (int i = 0; i <= 1000; ++i) m = std::max(m, profile.n(x0 + (x1 - x0) * i / 1000.0));
    return m;
}

}  // namespace

void run_analyze(RunContext& ctx) {
    const Json& s = ctx.spec();
    const bool sampled = !s.contains("input");
    const WaveGrid grid = sampled ? wave_from_json(ctx.resolveText(s.at("wave"))).sample(geometry_from(s.at("grid")))
                                  : read_grid_file(ctx, s.at("input").get<std::string>());
    if (sampled) ctx.emit("wavegrid.csv", grid_csv(grid));
    Json summary;
    summary["geometry"] = geometry_json(grid.geometry());
    summary["orders"] = Json::array();
    std::string plot = "set view map\nset pm3d map\n";
    for (int order : s.value("orders", std::vector<int>{0, 1})) analyze_order(ctx, grid, order, summary, plot);
    ctx.emit("summary.json", dump(summary));
    ctx.emit("plot.gp", gnuplot_script("phase velocity fields", "t", "x", plot));
}

void run_trace(RunContext& ctx) {
    const Json& s = ctx.spec();
    const AnalyticWave wave = wave_from_json(ctx.resolveText(s.at("wave")));
    const Json src = s.value("source", Json{{"type", "analytic"}});
    const std::string type = src.value("type", std::string("analytic"));
    std::unique_ptr<GridProbe> probe;
    if (type == "grid") {
        WaveGrid grid = src.contains("input") ? read_grid_file(ctx, src.at("input").get<std::string>())
                                              : wave.sample(geometry_from(src.at("grid")));
        probe = std::make_unique<GridProbe>(std::move(grid), ctx.tolerances().accuracy);
    } else if (type != "analytic") {
        throw ConfigError("unknown trace source '" + type + "'");
    }
    const DerivativeSource& source = probe ? static_cast<const DerivativeSource&>(*probe) : wave;
    const double tol = ctx.tolerances().traceTol.value_or(
        s.value("tol", probe ? kGridTraceTolerance : kAnalyticTraceTolerance));
    const double step = s.at("step").get<double>();
    const double tEnd = s.at("t_end").get<double>();
    ctx.recordSetting("trace_tol", tol);
    ctx.recordSetting("step", step);

    TraceOptions opts;
    opts.eps = ctx.tolerances().eps;
    Json summary;
    summary["source"] = type;
    summary["traces"] = Json::array();
    std::string plot;
    int k = 0;
    for (const Json& t : s.at("traces")) {
        const std::string name = t.value("name", "trace" + std::to_string(k++));
        AttributeLabel label;
        label.order = t.at("order").get<int>();
        label.extremum = extremum_from(t);
        const double t0 = t.value("t0", 0.0);
        double x0 = 0.0;
        if (t.contains("locate")) {
            label.value = t.at("value").get<double>();
            const auto range = t.at("locate").get<std::vector<double>>();
            if (range.size() != 2) throw ConfigError("trace '" + name + "': locate needs [lo, hi]");
            x0 = locate_attribute(source, label, t0, range[0], range[1], tol);
        } else {
            x0 = t.at("x0").get<double>();
            label.value = t.contains("value") ? t.at("value").get<double>() : source.partial(0, label.order, x0, t0);
        }
        const AttributeTrace tr = trace_attribute(source, label, x0, t0, tEnd, step, tol, opts);
        std::ostringstream csv;
        write_trace_csv(csv, tr);
        ctx.emit("trace_" + name + ".csv", csv.str());
        const auto& first = tr.points.front();
        const auto& last = tr.points.back();
        Json e;
        e["name"] = name;
        e["order"] = label.order;
        e["value"] = label.value;
        e["x0"] = x0;
        e["t0"] = t0;
        e["status"] = std::string(to_string(tr.status));
        e["message"] = tr.message;
        e["points"] = tr.points.size();
        e["t_end"] = last.t;
        e["x_end"] = last.x;
        e["v_start"] = first.v;
        e["v_end"] = last.v;
        e["mean_velocity"] = last.t != first.t ? (last.x - first.x) / (last.t - first.t) : kNaN;
        e["max_level_residual"] = max_residual(tr);
        e["steps"] = tr.stepControl.steps;
        e["correction_iterations"] = tr.stepControl.correctionIterations;
        e["bisection_fallbacks"] = tr.stepControl.bisectionFallbacks;
        summary["traces"].push_back(e);
        plot += std::string(plot.empty() ? "plot " : ", \\\n     ") + quoted("trace_" + name + ".csv") +
                " using 1:2 with lines title " + quoted(name);
    }
    ctx.emit("summary.json", dump(summary));
    ctx.emit("plot.gp", gnuplot_script("attribute isoclines", "t", "x", plot + "\npause -1\n"));
}

void run_transit(RunContext& ctx) {
    const Json& s = ctx.spec();
    const MediumProfile profile = MediumProfile::from_json(ctx.resolveText(s.at("medium")));
    const ModeSpec mode{s.at("mode").at("xi").get<double>(), s.at("mode").at("Lambda").get<double>()};
    const double x0 = s.at("x0").get<double>(), x1 = s.at("x1").get<double>();
    const double phi0 = s.value("phi0", 0.0);
    const double step = s.value("step", 1e-3);
    const double tol = ctx.tolerances().traceTol.value_or(s.value("tol", kAnalyticTraceTolerance));
    const Shape shape = s.contains("shape") ? shape_from_json(s.at("shape").dump()) : Shape::exponential(mode.Lambda);
    ctx.recordSetting("trace_tol", tol);
    ctx.recordSetting("step", step);

    const GlobalTransit q = transit_gamma_quadrature(profile, mode, x0, x1);
    ctx.emit("transit_quadrature.json", to_json(q) + "\n");
    Json summary;
    summary["gamma_quadrature"] = q.gamma;
    TraceOptions opts;
    opts.eps = ctx.tolerances().eps;
    try {
        const GlobalTransit t = transit_gamma_trace(profile, mode, shape, x0, phi0, x1, step, tol, opts);
        ctx.emit("transit_trace.json", to_json(t) + "\n");
        summary["gamma_trace"] = t.gamma;
        summary["relative_difference"] = std::fabs(t.gamma - q.gamma) / std::fabs(q.gamma);
        summary["agree"] = std::fabs(t.gamma - q.gamma) <= kTransitAgreement * std::fabs(q.gamma);
        ctx.emit("summary.json", dump(summary));
    } catch (const IncompleteTraceError& e) {
        summary["gamma_trace"] = nullptr;
        summary["trace_status"] = std::string(to_string(e.status()));
        ctx.emit("summary.json", dump(summary));
        throw;
    }
}

void run_separation_scan(RunContext& ctx) {
    const Json& s = ctx.spec();
    const Json mediumJson = ctx.resolve(s.at("medium"));
    const MediumProfile profile = MediumProfile::from_json(mediumJson.dump());
    const double x0 = s.at("x0").get<double>(), x1 = s.at("x1").get<double>();
    const auto lambdas = number_list(s.at("Lambda"));
    const auto xis = number_list(s.at("xi"));
    const bool confirm = s.contains("confirm");
    const Json conf = s.value("confirm", Json::object());
    const double phi0 = conf.value("phi0", 0.0);
    const double step = conf.value("step", 1e-3);
    const double tol = ctx.tolerances().traceTol.value_or(conf.value("tol", kAnalyticTraceTolerance));
    if (confirm) {
        ctx.recordSetting("trace_tol", tol);
        ctx.recordSetting("step", step);
    }
    ctx.recordSetting("transit_agreement", kTransitAgreement);

    const double c = profile.c();
    const double minN = profile.minN(x0, x1);
    Json summary;
    summary["medium"] = mediumJson;
    summary["x0"] = x0;
    summary["x1"] = x1;
    summary["c"] = c;
    summary["min_n"] = minN;
    summary["max_n_sampled"] = max_n(profile, x0, x1);
    summary["fits"] = Json::array();
    summary["findings"] = Json::array();
    summary["unconfirmed"] = Json::array();

    std::ostringstream csv;
    csv << "Lambda,xi,gamma_quadrature,correction,gamma_trace,trace_status,relative_difference\n";
    std::string plot;
    for (double Lambda : lambdas) {
        const SeparationTable table = dynamic_separation_scan(profile, x0, x1, xis, Lambda);
        summary["mean_n"] = table.meanN;
        double sxy = 0.0, sxx = 0.0;
        for (const auto& r : table.rows) sxy += r.correction / r.xi, sxx += 1.0 / (r.xi * r.xi);
        Json fit;
        fit["Lambda"] = Lambda;
        fit["K_fitted"] = sxy / sxx;
        fit["K_formula"] = -Lambda * c * std::log(profile.n(x1) / profile.n(x0)) / (x1 - x0);
        summary["fits"].push_back(fit);
        for (const auto& r : table.rows) {
            double gt = kNaN;
            std::string status = "skipped";
            if (confirm) {
                try {
                    TraceOptions opts;
                    opts.eps = ctx.tolerances().eps;
                    gt = transit_gamma_trace(profile, {r.xi, Lambda}, Shape::exponential(Lambda), x0, phi0, x1, step,
                                             tol, opts)
                             .gamma;
                    status = "completed";
                } catch (const IncompleteTraceError& e) {
                    status = std::string(to_string(e.status()));
                }
            }
            const double rel = std::fabs(gt - r.gamma) / std::fabs(r.gamma);
            csv << num(Lambda) << ',' << num(r.xi) << ',' << num(r.gamma) << ',' << num(r.correction) << ','
                << num(gt) << ',' << status << ',' << num(rel) << '\n';
            if (r.gamma < 1.0) {
                Json f{{"Lambda", Lambda}, {"xi", r.xi}, {"gamma_quadrature", r.gamma},
                       {"gamma_trace", std::isfinite(gt) ? Json(gt) : Json(nullptr)}, {"trace_status", status}};
                if (status == "completed" && rel <= kTransitAgreement && minN > 1.0)
                    summary["findings"].push_back(f);
                else
                    summary["unconfirmed"].push_back(f);
            }
        }
        plot += std::string(plot.empty() ? "plot " : ", \\\n     ") + "'< grep ^" + num(Lambda) +
                ", separation.csv' using 2:3 with linespoints title 'Lambda=" + num(Lambda) + "'";
    }
    ctx.emit("separation.csv", csv.str());
    ctx.emit("summary.json", dump(summary));
    ctx.emit("plot.gp", gnuplot_script("transit gamma against xi", "xi", "gamma",
                                       "set logscale x\n" + plot + ", \\\n     1 title 'gamma = 1'\npause -1\n"));
}

void run_simulate(RunContext& ctx) {
    const Json& s = ctx.spec();
    const SolverSetup setup = solver_from_json(ctx.resolveText(s.at("solver")));
    const WaveGrid field = solve(setup.config);
    Json summary;
    summary["geometry"] = geometry_json(field.geometry());
    summary["courant"] = courant_number(setup.config);
    summary["boundary"] = std::string(to_string(setup.config.boundary));
    summary["residual_max_norm"] = residual_norm(pde_residual(field, setup.config.equation, ctx.tolerances().accuracy));
    if (setup.reference) {
        const auto& g = field.geometry();
        double err = 0.0;
        for (int j = 0; j < g.nt; ++j)
            for (int i = 0; i < g.nx; ++i)
                err = std::max(err, std::fabs(field(i, j) - setup.reference->partial(0, 0, g.x(i), g.t(j))));
        summary["max_abs_error_vs_reference"] = err;
    }
    if (s.value("write_field", true)) ctx.emit("field.csv", grid_csv(field));
    ctx.emit("summary.json", dump(summary));
}

void run_end_to_end(RunContext& ctx) {
    const Json& s = ctx.spec();
    const SolverSetup setup = solver_from_json(ctx.resolveText(s.at("solver")));
    if (!setup.reference) throw ConfigError("end-to-end: initial data must come from an analytic wave");
    AttributeLabel label;
    label.order = s.at("label").at("order").get<int>();
    label.value = s.at("label").value("value", 0.0);
    EndToEndOptions opts;
    opts.accuracy = ctx.tolerances().accuracy;
    opts.eps = ctx.tolerances().eps;
    opts.traceTol = ctx.tolerances().traceTol.value_or(kGridTraceTolerance);
    opts.tolerance = s.value("tolerance", opts.tolerance);
    opts.fieldFloor = s.value("field_floor", opts.fieldFloor);
    if (s.contains("trace_start")) opts.traceStart = s.at("trace_start").get<double>();
    if (s.contains("trace_end")) opts.traceEnd = s.at("trace_end").get<double>();
    ctx.recordSetting("trace_tol", opts.traceTol);
    ctx.recordSetting("speed_tolerance", opts.tolerance);
    ctx.recordSetting("field_floor", opts.fieldFloor);

    const EndToEndReport report = end_to_end_check(setup.config, *setup.reference, label, s.at("x_start").get<double>(), opts);
    ctx.emit("report.json", report.to_json() + "\n");
    std::ostringstream csv;
    write_trace_csv(csv, report.trace);
    ctx.emit("trace.csv", csv.str());
    ctx.emit("plot.gp", gnuplot_script("traced attribute on the solver field", "t", "v",
                                       "plot 'trace.csv' using 1:3 with lines title 'v along trace'\npause -1\n"));
    if (!report.passed)
        throw NumericError("end-to-end: mean speed " + format_double(report.meanSpeed) + " misses the reference " +
                           format_double(report.referenceMeanSpeed) + " by more than " + format_double(report.tolerance));
}

void run_lorentz(RunContext& ctx, const LorentzFlags& flags) {
    if (!ctx.hasSpec()) {
        if (!flags.v || !flags.V) throw ConfigError("lorentz: --v and --V are required without --config");
        if (flags.order != 0 && flags.order != 1) throw ConfigError("lorentz: --order must be 0 or 1");
        const Boost b(*flags.V, flags.c);
        const SignConvention conv = sign_convention_from_string(flags.signConvention);
        Json r;
        r["order"] = flags.order;
        r["v"] = *flags.v;
        r["V"] = b.V;
        r["c"] = b.c;
        if (flags.order == 1) r["sign_convention"] = std::string(to_string(conv));
        r["v_prime"] = flags.order == 0 ? boost_v0(*flags.v, b) : boost_v1_freewave(*flags.v, b, conv);
        std::cout << r.dump() << '\n';
        ctx.emit("lorentz.json", dump(r));
        return;
    }
    const Json& s = ctx.spec();
    const AnalyticWave wave = wave_from_json(ctx.resolveText(s.at("wave")));
    const Boost b(s.at("boost").at("V").get<double>(), s.at("boost").value("c", 1.0));
    const SignConvention conv = sign_convention_from_string(s.value("sign_convention", std::string("paper")));
    const double eps = ctx.tolerances().eps;
    const BoostedSource primed(wave, b);
    std::ostringstream csv;
    csv << "x,t,x_prime,t_prime,v0,v0_addition,v0_transform,v1,v1_general,v1_freewave\n";
    double worstV0 = 0.0;
    for (const Json& p : s.at("points")) {
        const double x = p.at(0).get<double>(), t = p.at(1).get<double>();
        double xp, tp;
        primed.toPrimed(x, t, xp, tp);
        const PvSample v0 = pv_point(wave, 0, x, t, eps);
        const PvSample v0t = pv_point(primed, 0, xp, tp, eps);
        const double v0a = v0.valid() ? boost_v0(*v0.value, b) : kNaN;
        if (v0.valid() && v0t.valid()) worstV0 = std::max(worstV0, std::fabs(v0a - *v0t.value));
        const PvSample v1 = pv_point(wave, 1, x, t, eps);
        const PvSample v1g = boost_v1_general(wave, x, t, b, eps);
        const double v1f = v1.valid() ? boost_v1_freewave(*v1.value, b, conv) : kNaN;
        csv << num(x) << ',' << num(t) << ',' << num(xp) << ',' << num(tp) << ',' << num(v0.value.value_or(kNaN))
            << ',' << num(v0a) << ',' << num(v0t.value.value_or(kNaN)) << ',' << num(v1.value.value_or(kNaN)) << ','
            << num(v1g.value.value_or(kNaN)) << ',' << num(v1f) << '\n';
    }
    ctx.emit("lorentz.csv", csv.str());
    Json summary;
    summary["V"] = b.V;
    summary["c"] = b.c;
    summary["sign_convention"] = std::string(to_string(conv));
    summary["max_v0_difference"] = worstV0;
    ctx.emit("summary.json", dump(summary));
}

}  // namespace lpv::cli
