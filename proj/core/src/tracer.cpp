#include "lpv/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lpv {

std::string_view to_string(TraceStatus status) {
    switch (status) {
        case TraceStatus::completed: return "completed";
        case TraceStatus::hitSingularity: return "hitSingularity";
        case TraceStatus::leftDomain: return "leftDomain";
    }
    return "?";
}

namespace {

struct Velocity {
    bool ok = false;
    TraceStatus failure = TraceStatus::completed;
    double v = 0.0;
};

Velocity velocity(const DerivativeSource& src, int order, double x, double t, double eps) {
    if (!std::isfinite(x) || !src.contains(x, t) || !src.interior(x, t, order + 1))
        return {false, TraceStatus::leftDomain, 0.0};
    const PvSample s = pv_point(src, order, x, t, eps);
    if (s.status == PvStatus::singular) return {false, TraceStatus::hitSingularity, 0.0};
    if (s.status == PvStatus::boundary) return {false, TraceStatus::leftDomain, 0.0};
    return {true, TraceStatus::completed, *s.value};
}

struct Bracket {
    bool set = false;
    double lo = 0.0, flo = 0.0, hi = 0.0, fhi = 0.0;

    void update(double a, double fa, double b, double fb) {
        if (a > b) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
        if ((fa < 0.0) == (fb < 0.0)) return;
        if (!set || (b - a) < (hi - lo)) {
            set = true;
            lo = a, flo = fa, hi = b, fhi = fb;
        }
    }
    void narrow(double x, double fx) {
        if (!set || x <= lo || x >= hi) return;
        if ((fx < 0.0) == (flo < 0.0)) lo = x, flo = fx;
        else hi = x, fhi = fx;
    }
    bool inside(double x) const { return x > lo && x < hi; }
};

struct Correction {
    bool ok = false;
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool bisected = false;
};

// Restores d^N psi/dx^N = level at fixed t starting from xGuess; never moves
// further than maxJump from the guess.
Correction correct_level(const DerivativeSource& src, int order, double level, double t, double xGuess,
                         double maxJump, double tol, int maxIterations) {
    auto f = [&](double x) { return src.partial(0, order, x, t) - level; };
    auto admissible = [&](double x) {
        return std::isfinite(x) && std::fabs(x - xGuess) <= maxJump && src.contains(x, t);
    };
    const double target = 0.01 * tol;
    Correction c;
    double x = xGuess;
    double fx = f(x);
    Bracket br;
    for (int it = 0; it < maxIterations; ++it) {
        if (std::fabs(fx) <= target) break;
        ++c.iterations;
        const double fp = src.partial(0, order + 1, x, t);
        double xn = x - fx / fp;
        if (!admissible(xn) || (br.set && !br.inside(xn))) {
            if (!br.set) {
                // Expand symmetrically around the guess until the level is bracketed.
                for (double w = maxJump / 64.0; w <= maxJump && !br.set; w *= 2.0) {
                    for (double cand : {x - w, x + w}) {
                        if (!admissible(cand)) continue;
                        br.update(x, fx, cand, f(cand));
                    }
                }
            }
            if (!br.set) break;
            xn = 0.5 * (br.lo + br.hi);
            c.bisected = true;
        }
        const double fn = f(xn);
        br.update(x, fx, xn, fn);
        br.narrow(xn, fn);
        x = xn;
        fx = fn;
    }
    c.x = x;
    c.residual = std::fabs(fx);
    c.ok = c.residual <= tol;
    return c;
}

// Time in [ta, tb] where the level set crosses x = xs.
double crossing_time(const DerivativeSource& src, int order, double level, double xs, const TracePoint& a,
                     const TracePoint& b, double tol) {
    auto g = [&](double t) { return src.partial(0, order, xs, t) - level; };
    double lo = a.t, hi = b.t;
    double glo = g(lo), ghi = g(hi);
    if ((glo < 0.0) != (ghi < 0.0)) {
        double t = lo - glo * (hi - lo) / (ghi - glo);
        for (int it = 0; it < 60; ++it) {
            const double gt = g(t);
            if (std::fabs(gt) <= 0.01 * tol) return t;
            if ((gt < 0.0) == (glo < 0.0)) lo = t, glo = gt;
            else hi = t, ghi = gt;
            const double d = src.partial(1, order, xs, t);
            double tn = t - gt / d;
            if (!std::isfinite(tn) || tn <= std::min(lo, hi) || tn >= std::max(lo, hi)) tn = 0.5 * (lo + hi);
            t = tn;
        }
        return t;
    }
    // Level not bracketed in t at xs: invert the cubic Hermite interpolant of x(t).
    const double h = b.t - a.t;
    auto xh = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * a.x + (s3 - 2 * s2 + s) * h * a.v + (-2 * s3 + 3 * s2) * b.x +
               (s3 - s2) * h * b.v;
    };
    double sl = 0.0, sh = 1.0;
    const bool rising = b.x > a.x;
    for (int it = 0; it < 100; ++it) {
        const double sm = 0.5 * (sl + sh);
        if ((xh(sm) < xs) == rising) sl = sm;
        else sh = sm;
    }
    return a.t + 0.5 * (sl + sh) * h;
}

}  // namespace

AttributeTrace trace_attribute(const DerivativeSource& source, const AttributeLabel& label, double x0, double t0,
                               double tEnd, double step, double tol, const TraceOptions& options) {
    const int order = label.order;
    if (order < 0) throw PreconditionError("trace: negative label order");
    if (!(step > 0.0)) throw PreconditionError("trace: step must be positive");
    if (!(tol > 0.0)) throw PreconditionError("trace: tolerance must be positive");
    if (tEnd == t0) throw PreconditionError("trace: tEnd equals t0");
    if (!source.contains(x0, t0)) throw PreconditionError("trace: start point outside the source domain");

    const double startResidual = std::fabs(source.partial(0, order, x0, t0) - label.value);
    if (startResidual > tol)
        throw PreconditionError("trace: label level mismatch " + format_double(startResidual) +
                                " at the start exceeds tol " + format_double(tol));
    if (label.extremum != AttributeLabel::Extremum::none) {
        const double curvature = source.partial(0, order + 1, x0, t0);
        const bool isMax = curvature < 0.0;
        if ((label.extremum == AttributeLabel::Extremum::maximum) != isMax || curvature == 0.0)
            throw PreconditionError("trace: start point fails the extremum check");
    }
    const Velocity start = velocity(source, order, x0, t0, options.eps);
    if (!start.ok)
        throw PreconditionError(start.failure == TraceStatus::hitSingularity
                                    ? "trace: start point is singular"
                                    : "trace: start point lies outside the interior of the source");

    AttributeTrace trace;
    trace.order = order;
    trace.stepControl.step = step;
    trace.points.push_back({t0, x0, start.v, startResidual});

    const double dir = tEnd > t0 ? 1.0 : -1.0;
    const double span = std::fabs(tEnd - t0);
    double t = t0, x = x0, v = start.v;

    auto stop = [&](TraceStatus status, std::string msg) {
        trace.status = status;
        trace.message = std::move(msg);
    };

    while (true) {
        const double remaining = std::fabs(tEnd - t);
        if (remaining <= 1e-12 * std::max(span, step)) {
            stop(TraceStatus::completed, "");
            break;
        }
        const double h = dir * std::min(step, remaining);
        const double tn = std::fabs(remaining - std::fabs(h)) <= 1e-12 * span ? tEnd : t + h;

        const Velocity k2 = velocity(source, order, x + 0.5 * h * v, t + 0.5 * h, options.eps);
        if (!k2.ok) { stop(k2.failure, "RK4 stage 2"); break; }
        const Velocity k3 = velocity(source, order, x + 0.5 * h * k2.v, t + 0.5 * h, options.eps);
        if (!k3.ok) { stop(k3.failure, "RK4 stage 3"); break; }
        const Velocity k4 = velocity(source, order, x + h * k3.v, tn, options.eps);
        if (!k4.ok) { stop(k4.failure, "RK4 stage 4"); break; }
        const double xp = x + h / 6.0 * (v + 2.0 * k2.v + 2.0 * k3.v + k4.v);

        double xn = xp;
        if (options.correct) {
            if (!source.contains(xp, tn)) { stop(TraceStatus::leftDomain, "predictor left the domain"); break; }
            const double maxJump = 4.0 * std::fabs(xp - x) + std::fabs(h);
            const Correction c =
                correct_level(source, order, label.value, tn, xp, maxJump, tol, options.maxCorrectionIterations);
            trace.stepControl.correctionIterations += c.iterations;
            trace.stepControl.maxIterationsPerStep = std::max(trace.stepControl.maxIterationsPerStep, c.iterations);
            if (c.bisected) ++trace.stepControl.bisectionFallbacks;
            if (!c.ok) { stop(TraceStatus::hitSingularity, "level correction did not converge"); break; }
            xn = c.x;
        }
        const Velocity vn = velocity(source, order, xn, tn, options.eps);
        if (!vn.ok) { stop(vn.failure, "accepted point"); break; }
        const TracePoint next{tn, xn, vn.v, std::fabs(source.partial(0, order, xn, tn) - label.value)};
        ++trace.stepControl.steps;

        if (options.xStop && (x - *options.xStop) * (xn - *options.xStop) <= 0.0 && xn != x) {
            const double xs = *options.xStop;
            const double tc = crossing_time(source, order, label.value, xs, trace.points.back(), next, tol);
            const Velocity vc = velocity(source, order, xs, tc, options.eps);
            trace.points.push_back({tc, xs, vc.ok ? vc.v : next.v,
                                    std::fabs(source.partial(0, order, xs, tc) - label.value)});
            stop(TraceStatus::completed, "reached xStop");
            break;
        }
        trace.points.push_back(next);
        t = tn;
        x = xn;
        v = vn.v;
        if (t == tEnd) {
            stop(TraceStatus::completed, "");
            break;
        }
    }
    return trace;
}

double locate_attribute(const DerivativeSource& source, const AttributeLabel& label, double t, double xLo,
                        double xHi, double tol) {
    auto f = [&](double x) { return source.partial(0, label.order, x, t) - label.value; };
    double flo = f(xLo), fhi = f(xHi);
    if (flo == 0.0) return xLo;
    if (fhi == 0.0) return xHi;
    if ((flo < 0.0) == (fhi < 0.0)) throw PreconditionError("locate_attribute: label not bracketed in [xLo, xHi]");
    double lo = xLo, hi = xHi;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) <= 1e-3 * tol) return mid;
        if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
        else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 10; ++it) {
        const double fx = f(x);
        if (std::fabs(fx) <= 1e-3 * tol) break;
        const double xn = x - fx / source.partial(0, label.order + 1, x, t);
        if (!std::isfinite(xn) || xn < xLo || xn > xHi) break;
        x = xn;
    }
    return x;
}

void write_trace_csv(std::ostream& out, const AttributeTrace& trace) {
    out << "t,x,v,levelResidual\n";
    for (const auto& p : trace.points)
        out << format_double(p.t) << ',' << format_double(p.x) << ',' << format_double(p.v) << ','
            << format_double(p.levelResidual) << '\n';
}

}  // namespace lpv
