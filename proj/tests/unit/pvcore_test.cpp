#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gen.hpp"
#include "lpv/catalog.hpp"
#include "lpv/errors.hpp"
#include "lpv/grid_probe.hpp"
#include "lpv/pv.hpp"

using namespace lpv;

namespace {

Shape random_shape(test::Gen& gen) {
    const ShapeKind kinds[] = {ShapeKind::gaussian, ShapeKind::sech2, ShapeKind::arctan, ShapeKind::sinusoid};
    return Shape(kinds[gen.integer(0, 3)], gen.uniform(0.5, 2.0), gen.uniform(0.5, 1.5), gen.uniform(-0.5, 0.5));
}

}  // namespace

TEST(PvPoint, TranslationalIsA) {
    const auto w = free_wave(Shape::gaussian(), 2.0);
    for (int n = 0; n <= 5; ++n) {
        const auto s = pv_point(w, n, 0.3, 0.7);
        ASSERT_TRUE(s.valid());
        EXPECT_NEAR(*s.value, 2.0, 1e-14);
    }
}

TEST(PvPoint, DampedFlank) {
    // phi = t - x/a = 1 at x = 0, t = 1
    const auto s = pv_point(damped_wave(Shape::gaussian(), 1.0, 0.1), 0, 0.0, 1.0);
    ASSERT_TRUE(s.valid());
    EXPECT_NEAR(*s.value, 1.05, 1e-14);
}

TEST(PvPoint, DampedPeakIsSingular) {
    const auto s = pv_point(damped_wave(Shape::gaussian(), 1.0, 0.1), 0, 0.0, 0.0);
    EXPECT_EQ(s.status, PvStatus::singular);
    EXPECT_FALSE(s.value.has_value());
}

TEST(PvPoint, CapabilityError) {
    const auto w = free_wave(Shape(ShapeKind::gaussian, 1, 1, 0, 3), 1.0);
    EXPECT_NO_THROW(pv_point(w, 2, 0.1, 0.0));
    EXPECT_THROW(pv_point(w, 3, 0.1, 0.0), CapabilityError);
}

TEST(PvPoint, OrderCollapseProperty) {
    test::Gen gen(21);
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
        const double a = std::array{0.5, 1.0, 2.0}[static_cast<size_t>(gen.integer(0, 2))];
        const auto w = free_wave(random_shape(gen), a, gen.coin() ? 1 : -1);
        const int n = gen.integer(0, 6);
        const auto s = pv_point(w, n, gen.uniform(-2, 2), gen.uniform(-2, 2));
        if (!s.valid()) continue;
        ++checked;
        // A left-moving wave psi(t + x/a) has v = -a.
        const double want = std::get<Translational>(w.components()[0].frame).direction * a;
        EXPECT_LT(test::rel_err(*s.value, want), 1e-9);
    }
    EXPECT_GT(checked, 300);
}

TEST(PvPoint, DampedMatchesClosedForm) {
    test::Gen gen(22);
    for (int k = 0; k < 500; ++k) {
        const Shape shape = random_shape(gen);
        const double a = gen.uniform(0.3, 3.0), lambda = gen.uniform(-1.0, 1.0);
        const int n = gen.integer(0, 3);
        const double x = gen.uniform(-2, 2), t = gen.uniform(-2, 2);
        const auto s = pv_point(damped_wave(shape, a, lambda), n, x, t);
        const auto c = damped_spectrum(t - x / a, a, lambda, shape, n);
        if (!s.valid() || !c.valid()) continue;
        EXPECT_LT(test::rel_err(*s.value, *c.value), 1e-9);
    }
}

TEST(PvPoint, MaskSoundnessAnalytic) {
    // |den| = |psi''| e^{-lambda t} / a^2 near the inflection phi = 1/sqrt(2) of exp(-phi^2).
    const auto w = damped_wave(Shape::gaussian(), 1.0, 0.1);
    const double phi0 = 1.0 / std::numbers::sqrt2;
    for (double d : {-1e-6, -1e-9, -1e-10, 0.0, 1e-10, 1e-9, 1e-6}) {
        const double x = -(phi0 + d);
        const double den = w.partial(0, 2, x, 0.0);
        const auto s = pv_point(w, 1, x, 0.0);
        EXPECT_EQ(s.valid(), std::fabs(den) > kDefaultSingularityEps) << d;
    }
}

TEST(PvPoint, HistoricalRemark) {
    // cos(xi t - k x) with constant n: zero-order PV is xi / k = c / n.
    const double n = 1.4, c = 3.0, xi = 2.5;
    const auto w = inhom_mode(Shape::sinusoid(), xi, MediumProfile::constant(n, c));
    test::Gen gen(23);
    for (int k = 0; k < 50; ++k) {
        const auto s = pv_point(w, 0, gen.uniform(-3, 3), gen.uniform(-3, 3));
        if (!s.valid()) continue;
        EXPECT_NEAR(*s.value, xi / (xi * n / c), 1e-12);
    }
}

TEST(PvField, SinusoidIsOne) {
    const GridGeometry g{0.0, 0.005, 61, 0.0, 0.005, 61};
    const auto grid = WaveGrid::sample(g, [](double x, double t) { return std::sin(t - x); });
    const auto f = pv_field(grid, 0, 4);
    std::size_t valid = 0;
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (auto v = f.value(i, j)) {
                ++valid;
                EXPECT_NEAR(*v, 1.0, 1e-6);
            }
    EXPECT_GT(valid, 2500u);
    EXPECT_GT(f.count(PvStatus::boundary), 0u);
}

TEST(PvField, ConstantIsSingular) {
    const GridGeometry g{0.0, 0.1, 12, 0.0, 0.1, 12};
    const auto f = pv_field(WaveGrid::sample(g, [](double, double) { return 2.0; }), 1, 4);
    EXPECT_EQ(f.count(PvStatus::singular), g.size());
}

TEST(PvField, KinkTurningPointSingularities) {
    // phi = t - x = (j - i + 60) h on this lattice; psi''' vanishes at phi = +-20 h.
    const double h = 1.0 / std::sqrt(3.0) / 20.0;
    const GridGeometry g{-60 * h, h, 161, 0.0, h, 41};
    const auto grid = damped_wave(Shape::kink(), 1.0, 0.1).sample(g);
    const auto f = pv_field(grid, 2, 4, 1e-4);
    int flagged = 0;
    for (int j = 2; j < g.nt - 2; ++j)
        for (int i = 3; i < g.nx - 3; ++i) {
            if (std::abs(j - i + 60) == 20) {
                EXPECT_EQ(f.status(i, j), PvStatus::singular) << i << ',' << j;
                ++flagged;
            } else {
                EXPECT_NE(f.status(i, j), PvStatus::singular) << i << ',' << j;
            }
        }
    EXPECT_GT(flagged, 40);
}

TEST(PvField, MatchesAnalyticWithinTruncationBudget) {
    // Budget at each node: (|dnum| + |v| |dden|) / |den| with dnum, dden the
    // observed max stencil errors of the numerator and denominator grids.
    const auto wave = damped_wave(Shape::sech2(), 0.8, 0.2);
    const GridGeometry g{-1.0, 0.01, 201, 0.0, 0.01, 101};
    const auto grid = wave.sample(g);
    for (int order = 0; order <= 2; ++order) {
        const auto num = grid_partial(grid, {1, order, 4});
        const auto den = grid_partial(grid, {0, order + 1, 4});
        double dnum = 0.0, dden = 0.0;
        for (int j = 0; j < g.nt; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (num.interior(i, j) && den.interior(i, j)) {
                    dnum = std::max(dnum, std::fabs(num(i, j) - wave.partial(1, order, g.x(i), g.t(j))));
                    dden = std::max(dden, std::fabs(den(i, j) - wave.partial(0, order + 1, g.x(i), g.t(j))));
                }
        const auto field = pv_field(grid, order, 4);
        int checked = 0;
        for (int j = 0; j < g.nt; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const auto v = field.value(i, j);
                const auto ref = pv_point(wave, order, g.x(i), g.t(j));
                if (!v || !ref.valid()) continue;
                const double budget = (dnum + std::fabs(*ref.value) * dden) / std::fabs(den(i, j));
                EXPECT_LE(std::fabs(*v - *ref.value), 10.0 * budget) << order << " at " << i << ',' << j;
                ++checked;
            }
        EXPECT_GT(checked, 10000);
    }
}

TEST(PvField, MaskSoundnessGrid) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.1);
    const GridGeometry g{-1.0, 0.02, 101, 0.0, 0.02, 51};
    const auto grid = wave.sample(g);
    const double eps = 1e-3;
    const auto den = grid_partial(grid, {0, 1, 4});
    const double threshold = eps * den.maxAbs();
    const auto field = pv_field(grid, 0, 4, eps);
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const bool small = std::fabs(den(i, j)) <= threshold;
            EXPECT_EQ(field.status(i, j) == PvStatus::singular, small);
        }
}

TEST(PvField, CsvRoundTrip) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.1);
    const GridGeometry g{-1.0, 0.05, 41, 0.0, 0.05, 21};
    const auto field = pv_field(wave.sample(g), 0, 4);
    std::stringstream ss;
    write_pvfield_csv(ss, field);
    const auto back = read_pvfield_csv(ss);
    EXPECT_EQ(back.order(), 0);
    EXPECT_EQ(back.geometry(), g);
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < g.nx; ++i) {
            ASSERT_EQ(back.status(i, j), field.status(i, j));
            ASSERT_EQ(back.value(i, j), field.value(i, j));
        }
}

TEST(GridProbe, BoundaryAndOutside) {
    const auto wave = free_wave(Shape::gaussian(), 1.0);
    const GridGeometry g{-1.0, 0.01, 201, 0.0, 0.01, 101};
    const GridProbe probe(wave.sample(g));
    EXPECT_EQ(pv_point(probe, 1, g.x0 + 0.005, 0.5).status, PvStatus::boundary);
    const auto inner = pv_point(probe, 1, 0.5, 0.5);
    ASSERT_TRUE(inner.valid());
    EXPECT_NEAR(*inner.value, 1.0, 1e-6);
    EXPECT_THROW(probe.partial(0, 1, 2.0, 0.5), PreconditionError);
    EXPECT_FALSE(probe.contains(2.0, 0.5));
}

TEST(GridProbe, NodesAreExact) {
    const auto wave = free_wave(Shape::sech2(), 1.3);
    const GridGeometry g{-1.0, 0.02, 101, 0.0, 0.02, 51};
    const auto grid = wave.sample(g);
    const GridProbe probe(grid);
    const auto dx = grid_partial(grid, {0, 1, 4});
    for (int j = 5; j < g.nt; j += 7)
        for (int i = 5; i < g.nx; i += 11) EXPECT_EQ(probe.partial(0, 1, g.x(i), g.t(j)), dx(i, j));
}

TEST(DampedSpectrum, PeakTracesAtA) {
    const auto s = damped_spectrum(0.0, 1.3, 0.4, Shape::gaussian(), 1);
    ASSERT_TRUE(s.valid());
    EXPECT_DOUBLE_EQ(*s.value, 1.3);
}

TEST(DampedSpectrum, AscendingFlankIsSlower) {
    // exp(-phi^2) rises for phi < 0
    for (double phi : {-2.0, -1.0, -0.3}) {
        const auto s = damped_spectrum(phi, 1.0, 0.1, Shape::gaussian(), 0);
        ASSERT_TRUE(s.valid());
        EXPECT_LT(*s.value, 1.0);
    }
}

TEST(DampedSpectrum, SignFlipIsAmplification) {
    test::Gen gen(24);
    for (int k = 0; k < 100; ++k) {
        const Shape shape = random_shape(gen);
        const double a = gen.uniform(0.5, 2), lambda = gen.uniform(0.05, 1), x = gen.uniform(-1, 1),
                     t = gen.uniform(-1, 1);
        const int n = gen.integer(0, 3);
        const auto grow = pv_point(damped_wave(shape, a, -lambda), n, x, t);
        const auto c = damped_spectrum(t - x / a, a, -lambda, shape, n);
        if (!grow.valid() || !c.valid()) continue;
        EXPECT_LT(test::rel_err(*grow.value, *c.value), 1e-9);
    }
}

TEST(KinkSpectrum, Examples) {
    const auto s = kink_spectrum(1.0, 1.0, 0.1);
    EXPECT_NEAR(*s.v0.value, 1.0 + 0.1 * 2.0 * std::numbers::pi / 4.0, 1e-15);
    EXPECT_NEAR(*s.v0.value, 1.15708, 1e-5);
    EXPECT_NEAR(*s.v1.value, 0.9, 1e-15);
    EXPECT_NEAR(*s.v2.value, 0.9, 1e-15);

    const auto z = kink_spectrum(0.0, 1.7, 0.3);
    EXPECT_EQ(*z.v0.value, 1.7);
    EXPECT_EQ(z.v1.status, PvStatus::singular);
    EXPECT_EQ(*z.v2.value, 1.7);
}

TEST(KinkSpectrum, UndampedIsA) {
    test::Gen gen(25);
    for (int k = 0; k < 100; ++k) {
        const double phi = gen.uniform(-4, 4);
        const auto s = kink_spectrum(phi, 2.0, 0.0);
        EXPECT_EQ(*s.v0.value, 2.0);
        EXPECT_EQ(*s.v1.value, 2.0);
        EXPECT_EQ(*s.v2.value, 2.0);
    }
}

TEST(KinkSpectrum, SingularLoci) {
    const double r = 1.0 / std::sqrt(3.0);
    EXPECT_EQ(kink_spectrum(r, 1.0, 0.1).v2.status, PvStatus::singular);
    EXPECT_EQ(kink_spectrum(-r, 1.0, 0.1).v2.status, PvStatus::singular);
    EXPECT_TRUE(kink_spectrum(r + 1e-6, 1.0, 0.1).v2.valid());
    EXPECT_TRUE(kink_spectrum(1e-6, 1.0, 0.1).v1.valid());
}

TEST(KinkSpectrum, MatchesGrowingKinkPv) {
    // The printed spectrum belongs to atan(phi) e^{+lambda t}.
    test::Gen gen(26);
    for (int k = 0; k < 200; ++k) {
        const double a = gen.uniform(0.5, 2), lambda = gen.uniform(-0.5, 0.5);
        const double x = gen.uniform(-2, 2), t = gen.uniform(-2, 2);
        const auto wave = damped_wave(Shape::kink(), a, -lambda);
        const auto s = kink_spectrum(t - x / a, a, lambda);
        const PvSample* closed[] = {&s.v0, &s.v1, &s.v2};
        for (int n = 0; n <= 2; ++n) {
            const auto p = pv_point(wave, n, x, t);
            if (!p.valid() || !closed[n]->valid()) continue;
            EXPECT_LT(test::rel_err(*p.value, *closed[n]->value), 1e-9) << n;
        }
    }
}
