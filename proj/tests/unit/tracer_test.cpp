#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gen.hpp"
#include "lpv/catalog.hpp"
#include "lpv/grid_probe.hpp"
#include "lpv/tracer.hpp"

using namespace lpv;

namespace {

constexpr double kTol = kAnalyticTraceTolerance;

double max_residual(const AttributeTrace& tr) {
    double worst = 0.0;
    for (const auto& p : tr.points) worst = std::max(worst, p.levelResidual);
    return worst;
}

// Largest value of psi'' for the arctan kink, reached at phi = -1/sqrt(3).
const double kKinkCurvatureMax = 3.0 * std::sqrt(3.0) / 8.0;

}  // namespace

TEST(Trace, FreeGaussianPeak) {
    const auto wave = free_wave(Shape::gaussian(), 2.0);
    const AttributeLabel peak{1, 0.0, AttributeLabel::Extremum::maximum};
    const auto tr = trace_attribute(wave, peak, 0.0, 0.0, 1.0, 0.01, kTol);
    ASSERT_EQ(tr.status, TraceStatus::completed);
    EXPECT_EQ(tr.points.back().t, 1.0);
    EXPECT_NEAR(tr.points.back().x, 2.0, 1e-6);
    EXPECT_EQ(tr.stepControl.steps, 100);
}

TEST(Trace, DampedPeakMovesAtA) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.1);
    const auto tr = trace_attribute(wave, {1, 0.0}, 0.0, 0.0, 5.0, 0.05, kTol);
    ASSERT_EQ(tr.status, TraceStatus::completed);
    for (const auto& p : tr.points) {
        EXPECT_NEAR(p.v, 1.0, 1e-6);
        EXPECT_NEAR(p.x, p.t, 1e-6);
    }
}

TEST(Trace, ExtremumCheck) {
    const auto wave = free_wave(Shape::gaussian(), 1.0);
    EXPECT_THROW(trace_attribute(wave, {1, 0.0, AttributeLabel::Extremum::minimum}, 0.0, 0.0, 1.0, 0.01, kTol),
                 PreconditionError);
}

TEST(Trace, Preconditions) {
    const auto wave = free_wave(Shape::gaussian(), 1.0);
    // Level mismatch.
    EXPECT_THROW(trace_attribute(wave, {0, 0.5}, 0.0, 0.0, 1.0, 0.01, kTol), PreconditionError);
    // Inflection: psi'' = 0 under an order-1 label.
    const double xi = 1.0 / std::numbers::sqrt2;
    const double level = wave.partial(0, 1, -xi, 0.0);
    EXPECT_THROW(trace_attribute(wave, {1, level}, -xi, 0.0, 1.0, 0.01, kTol), PreconditionError);
    EXPECT_THROW(trace_attribute(wave, {1, 0.0}, 0.0, 0.0, 1.0, 0.0, kTol), PreconditionError);
    EXPECT_THROW(trace_attribute(wave, {1, 0.0}, 0.0, 0.0, 0.0, 0.01, kTol), PreconditionError);
    EXPECT_THROW(trace_attribute(wave, {-1, 0.0}, 0.0, 0.0, 1.0, 0.01, kTol), PreconditionError);
}

TEST(Trace, ZeroOrderLinesAreStraight) {
    test::Gen gen(41);
    for (int k = 0; k < 20; ++k) {
        const int dir = gen.sign();
        const double speed = gen.uniform(0.3, 3.0);
        const double a = dir * speed;
        const auto wave = free_wave(Shape::sech2(), speed, dir);
        const double x0 = gen.uniform(0.3, 2.0) * gen.sign();
        const double t0 = gen.uniform(-1, 1);
        const double t1 = t0 + gen.uniform(0.5, 2.0) * gen.sign();
        const auto tr = trace_attribute(wave, {0, wave.partial(0, 0, x0, t0)}, x0, t0, t1, 0.02, kTol);
        ASSERT_EQ(tr.status, TraceStatus::completed);
        for (const auto& p : tr.points) EXPECT_NEAR(p.x, x0 + a * (p.t - t0), 1e-8);
    }
}

TEST(Trace, LevelIsConservedProperty) {
    test::Gen gen(42);
    for (int k = 0; k < 30; ++k) {
        const Shape shape = gen.coin() ? Shape::gaussian() : Shape::sech2();
        const double a = gen.uniform(0.5, 2.0);
        const double lambda = gen.uniform(-0.2, 0.2);
        const auto wave = damped_wave(shape, a, lambda);
        const int order = gen.integer(0, 2);
        const double x0 = gen.uniform(-2.0, 2.0);
        const auto start = pv_point(wave, order, x0, 0.0);
        if (!start.valid()) continue;
        const auto tr = trace_attribute(wave, {order, wave.partial(0, order, x0, 0.0)}, x0, 0.0, 1.0, 0.01, kTol);
        EXPECT_LE(max_residual(tr), kTol) << k;
        for (std::size_t i = 1; i < tr.points.size(); ++i) EXPECT_GT(tr.points[i].t, tr.points[i - 1].t);
    }
}

TEST(Trace, Reversible) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.1);
    const double x0 = -1.5;
    const AttributeLabel label{1, wave.partial(0, 1, x0, 0.0)};
    const auto fwd = trace_attribute(wave, label, x0, 0.0, 1.0, 0.01, kTol);
    ASSERT_EQ(fwd.status, TraceStatus::completed);
    const auto& end = fwd.points.back();
    const auto back = trace_attribute(wave, label, end.x, end.t, 0.0, 0.01, kTol);
    ASSERT_EQ(back.status, TraceStatus::completed);
    EXPECT_EQ(back.points.back().t, 0.0);
    EXPECT_NEAR(back.points.back().x, x0, 10 * kTol);
}

TEST(Trace, DampedKinkTurningPoint) {
    // psi'' e^{-lambda t} = L for the damped kink; the branch ends where
    // L e^{lambda t} reaches the largest curvature of the kink.
    const double lambda = 0.3;
    const auto wave = damped_wave(Shape::kink(), 1.0, lambda);
    const double x0 = 2.0;
    const AttributeLabel label{2, wave.partial(0, 2, x0, 0.0)};
    const double turn = std::log(kKinkCurvatureMax / label.value) / lambda;
    const auto tr = trace_attribute(wave, label, x0, 0.0, turn + 1.0, 0.01, kTol);
    EXPECT_EQ(tr.status, TraceStatus::hitSingularity);
    EXPECT_LT(tr.points.back().t, turn);
    EXPECT_GT(tr.points.back().t, turn - 0.05);
    EXPECT_LE(max_residual(tr), kTol);
}

TEST(Trace, GrowingKinkCompletes) {
    const auto wave = damped_wave(Shape::kink(), 1.0, -0.3);
    const double x0 = 2.0;
    const auto tr = trace_attribute(wave, {2, wave.partial(0, 2, x0, 0.0)}, x0, 0.0, 3.0, 0.01, kTol);
    ASSERT_EQ(tr.status, TraceStatus::completed);
    EXPECT_LE(max_residual(tr), kTol);
    // The level set runs ahead of the kink as it grows.
    for (const auto& p : tr.points) EXPECT_GT(p.v, 1.0);
}

TEST(Trace, GridPeakAndLeavingTheLattice) {
    const GridGeometry g{-2.0, 0.02, 201, 0.0, 0.02, 101};
    GridProbe probe(free_wave(Shape::gaussian(), 1.5).sample(g));
    const AttributeLabel peak{1, 0.0};
    const double x0 = 0.15, t0 = 0.1;
    const auto tr = trace_attribute(probe, peak, x0, t0, 1.0, 0.02, kGridTraceTolerance);
    ASSERT_EQ(tr.status, TraceStatus::completed);
    EXPECT_NEAR(tr.points.back().x, 1.5, 1e-4);
    const auto out = trace_attribute(probe, peak, x0, t0, 1.9, 0.02, kGridTraceTolerance);
    EXPECT_EQ(out.status, TraceStatus::leftDomain);
}

TEST(Trace, LocateAttribute) {
    const auto wave = free_wave(Shape::gaussian(), 1.0);
    EXPECT_NEAR(locate_attribute(wave, {1, 0.0}, 0.5, 0.0, 1.2, kTol), 0.5, 1e-10);
    EXPECT_THROW(locate_attribute(wave, {1, 0.0}, 0.5, 1.0, 2.0, kTol), PreconditionError);
}

TEST(Trace, CsvColumns) {
    const auto tr = trace_attribute(free_wave(Shape::gaussian(), 1.0), {1, 0.0}, 0.0, 0.0, 0.1, 0.05, kTol);
    std::stringstream ss;
    write_trace_csv(ss, tr);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "t,x,v,levelResidual");
    int rows = 0;
    for (std::string line; std::getline(ss, line);) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST(Transit, ConstantMedium) {
    const auto profile = MediumProfile::constant(1.5);
    const ModeSpec mode{2.0, 0.7};
    EXPECT_NEAR(transit_gamma_quadrature(profile, mode, 0.0, 2.0).gamma, 1.5, 1e-14);
    const auto tr = transit_gamma_trace(profile, mode, Shape::exponential(0.7), 0.0, 0.0, 2.0, 0.01);
    EXPECT_NEAR(tr.gamma, 1.5, 1e-8);
    EXPECT_EQ(tr.method, GlobalTransit::Method::odeTrace);
}

TEST(Transit, ZeroLambdaIsMeanIndex) {
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.5, 0.3);
    const auto g = transit_gamma_quadrature(profile, {1.0, 0.0}, 0.0, 1.0);
    EXPECT_NEAR(g.gamma, profile.kIntegral(0.0, 1.0), 1e-14);
}

TEST(Transit, TraceMatchesQuadrature) {
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.5, 0.3);
    for (double xi : {1.0, 2.0, 5.0}) {
        const double Lambda = 0.8;
        const ModeSpec mode{xi, Lambda};
        const auto q = transit_gamma_quadrature(profile, mode, 0.0, 1.0);
        const auto t = transit_gamma_trace(profile, mode, Shape::exponential(Lambda), 0.0, 0.0, 1.0, 1e-3);
        EXPECT_NEAR(t.gamma, q.gamma, 1e-6) << xi;
    }
}

TEST(Transit, UncorrectedTraceIsFourthOrder) {
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.5, 0.3);
    const ModeSpec mode{2.0, 0.8};
    const double exact = transit_gamma_quadrature(profile, mode, 0.0, 1.0).gamma;
    TraceOptions bare;
    bare.correct = false;
    auto err = [&](double h) {
        return std::fabs(
            transit_gamma_trace(profile, mode, Shape::exponential(0.8), 0.0, 0.0, 1.0, h, 1.0, bare).gamma - exact);
    };
    const double coarse = err(0.02), fine = err(0.01);
    EXPECT_GE(coarse / fine, 16.0 / 1.5);
}

TEST(Transit, LambdaMustMatchShape) {
    const auto profile = MediumProfile::constant(1.5);
    EXPECT_THROW(transit_gamma_trace(profile, {1.0, 0.5}, Shape::exponential(0.7), 0.0, 0.0, 1.0, 0.01),
                 PreconditionError);
    EXPECT_THROW(transit_gamma_quadrature(profile, {0.0, 0.5}, 0.0, 1.0), PreconditionError);
    EXPECT_THROW(transit_gamma_quadrature(profile, {1.0, 0.5}, 1.0, 0.0), PreconditionError);
}

TEST(Transit, VanishingDenominatorIsIncomplete) {
    // n - Lambda (c/xi) n'/n changes sign inside a steep step.
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.5, 0.1);
    const ModeSpec mode{1.0, 2.0};
    try {
        transit_gamma_trace(profile, mode, Shape::exponential(2.0), 0.0, 0.0, 1.0, 1e-3);
        FAIL() << "expected IncompleteTraceError";
    } catch (const IncompleteTraceError& e) {
        EXPECT_NE(e.status(), TraceStatus::completed);
    }
}

TEST(Separation, ScalesAsInverseXi) {
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.5, 0.3);
    const std::vector<double> xis{0.5, 1.0, 2.0, 4.0, 1e9};
    const auto table = dynamic_separation_scan(profile, 0.0, 1.0, xis, 0.8);
    ASSERT_EQ(table.rows.size(), xis.size());
    const double k = table.rows[0].correction * xis[0];
    EXPECT_LT(k, 0.0);
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) EXPECT_NEAR(table.rows[i].correction * xis[i], k, 1e-12);
    for (const auto& r : table.rows) {
        EXPECT_NEAR(r.gamma - table.meanN, r.correction, 1e-15);
    }
    EXPECT_NEAR(table.rows.back().gamma, table.meanN, 1e-9);
}

TEST(Separation, ConstantMediumHasNone) {
    const std::vector<double> xis{0.5, 3.0};
    const auto table = dynamic_separation_scan(MediumProfile::constant(1.3), Shape::exponential(0.5), 0.0, 0.0, 2.0, xis);
    EXPECT_EQ(table.Lambda, 0.5);
    for (const auto& r : table.rows) EXPECT_NEAR(r.correction, 0.0, 1e-14);
}

TEST(Separation, Errors) {
    const auto profile = MediumProfile::constant(1.3);
    EXPECT_THROW(dynamic_separation_scan(profile, 0.0, 1.0, std::vector<double>{}, 0.5), PreconditionError);
    EXPECT_THROW(dynamic_separation_scan(profile, 0.0, 1.0, std::vector<double>{1.0, 0.0}, 0.5), PreconditionError);
    EXPECT_THROW(dynamic_separation_scan(profile, Shape::kink(), 0.0, 0.0, 1.0, std::vector<double>{1.0}),
                 PreconditionError);
}

TEST(Transit, JsonRecord) {
    const auto g = transit_gamma_quadrature(MediumProfile::constant(1.5), {1.0, 0.0}, 0.0, 1.0);
    const std::string j = to_json(g);
    EXPECT_NE(j.find("\"method\": \"quadratureFormula\""), std::string::npos);
    EXPECT_NE(j.find("\"gamma\": 1.5"), std::string::npos);
}
