#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lpv/analytic_wave.hpp"
#include "lpv/pde_lab.hpp"
#include "lpv/shape.hpp"

namespace lpv {

/// `{"type":"gaussian","amplitude":1,"width":1,"center":0,"max_order":8}`; only type is required.
Shape shape_from_json(std::string_view text);

/// `{"shape":{..},"frame":{"type":"translational","a":..,"direction":1}}`, frame types
/// `damped` (a, lambda) and `medium` (xi, medium{..}); or `{"components":[{..},{..}]}`
/// for a superposition.
AnalyticWave wave_from_json(std::string_view text);

/// A solver configuration plus the analytic wave its initial data came from, if any.
struct SolverSetup {
    SolverConfig config;
    std::optional<AnalyticWave> reference;
};

/// `{"equation":{"type":"free","a":1}, "domain":{"x_min":..,"x_max":..,"t0":0,"t_end":..},
///   "resolution":{"dx":..,"dt":..}, "initial":{"wave":{..}} | {"type":"zero"},
///   "boundary":"periodic"|"outgoing"}`
SolverSetup solver_from_json(std::string_view text);

}  // namespace lpv
