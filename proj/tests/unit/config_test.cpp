#include <gtest/gtest.h>

#include "lpv/catalog.hpp"
#include "lpv/config.hpp"
#include "lpv/errors.hpp"

using namespace lpv;

TEST(Config, ShapeDefaults) {
    const Shape s = shape_from_json(R"({"type":"sech2"})");
    EXPECT_EQ(s.kind(), ShapeKind::sech2);
    EXPECT_EQ(s.derivative(0.0, 0), 1.0);
    const Shape w = shape_from_json(R"({"type":"gaussian","amplitude":2,"width":0.5,"center":1})");
    EXPECT_EQ(w.derivative(1.0, 0), 2.0);
    EXPECT_THROW(shape_from_json(R"({"type":"blob"})"), ConfigError);
    EXPECT_THROW(shape_from_json(R"({"width":1})"), ConfigError);
}

TEST(Config, WaveFrames) {
    const auto free = wave_from_json(R"({"shape":{"type":"gaussian"},"frame":{"type":"translational","a":2}})");
    EXPECT_EQ(free.partial(0, 0, 2.0, 1.0), 1.0);
    const auto damped =
        wave_from_json(R"({"shape":{"type":"gaussian"},"frame":{"type":"damped","a":1,"lambda":0.1}})");
    EXPECT_NEAR(damped.partial(1, 0, 0.0, 0.0), -0.1, 1e-15);
    const auto mode = wave_from_json(
        R"({"shape":{"type":"gaussian"},"frame":{"type":"medium","xi":1,"medium":{"type":"constant","n":1.5}}})");
    const auto ref = inhom_mode(Shape::gaussian(), 1.0, MediumProfile::constant(1.5));
    EXPECT_EQ(mode.partial(0, 1, 0.3, 0.2), ref.partial(0, 1, 0.3, 0.2));
}

TEST(Config, Superposition) {
    const auto w = wave_from_json(R"({"components":[
        {"shape":{"type":"gaussian"},"frame":{"type":"translational","a":1}},
        {"shape":{"type":"gaussian"},"frame":{"type":"translational","a":1,"direction":-1}}]})");
    EXPECT_EQ(w.partial(0, 0, 0.0, 0.0), 2.0);
    EXPECT_EQ(w.partial(1, 0, 0.0, 0.0), 0.0);
}

TEST(Config, SolverSetup) {
    const auto s = solver_from_json(R"({
        "equation":{"type":"damped","a":1,"lambda":0.1},
        "domain":{"x_min":-5,"x_max":5,"t0":0,"t_end":2},
        "resolution":{"dx":0.01,"dt":0.005},
        "initial":{"wave":{"shape":{"type":"gaussian"},"frame":{"type":"damped","a":1,"lambda":0.1}}},
        "boundary":"outgoing"})");
    EXPECT_EQ(s.config.boundary, BoundaryKind::outgoing);
    EXPECT_EQ(s.config.tEnd, 2.0);
    ASSERT_TRUE(s.reference.has_value());
    ASSERT_TRUE(std::holds_alternative<DampedEquation>(s.config.equation));
    EXPECT_EQ(std::get<DampedEquation>(s.config.equation).lambda, 0.1);
    EXPECT_NEAR(s.config.initialRate(0.5), s.reference->partial(1, 0, 0.5, 0.0), 1e-15);

    const auto zero = solver_from_json(R"({
        "equation":{"type":"free","a":1},
        "domain":{"x_min":-1,"x_max":1,"t0":0,"t_end":1},
        "resolution":{"dx":0.1,"dt":0.05},
        "initial":{"type":"zero"}})");
    EXPECT_FALSE(zero.reference.has_value());
    EXPECT_EQ(zero.config.boundary, BoundaryKind::periodic);
    EXPECT_EQ(zero.config.initialValue(0.3), 0.0);
}

TEST(Config, SolverErrors) {
    EXPECT_THROW(solver_from_json("[]"), ConfigError);
    EXPECT_THROW(solver_from_json(R"({"equation":{"type":"free","a":1}})"), ConfigError);
    EXPECT_THROW(solver_from_json(R"({
        "equation":{"type":"heat"},
        "domain":{"x_min":-1,"x_max":1,"t0":0,"t_end":1},
        "resolution":{"dx":0.1,"dt":0.05},"initial":{"type":"zero"}})"),
                 ConfigError);
    EXPECT_THROW(solver_from_json(R"({
        "equation":{"type":"free","a":1},
        "domain":{"x_min":-1,"x_max":1,"t0":0,"t_end":1},
        "resolution":{"dx":0.1,"dt":0.05},"initial":{"type":"zero"},"boundary":"reflecting"})"),
                 ConfigError);
}
