#pragma once

#include <optional>
#include <string>

#include "run_context.hpp"

namespace lpv::cli {

void run_analyze(RunContext& ctx);
void run_trace(RunContext& ctx);
void run_transit(RunContext& ctx);
void run_separation_scan(RunContext& ctx);
void run_simulate(RunContext& ctx);
void run_end_to_end(RunContext& ctx);

struct LorentzFlags {
    std::optional<double> v;
    std::optional<double> V;
    double c = 1.0;
    int order = 0;
    std::string signConvention = "paper";
};

/// Spec-driven when a config is present, otherwise one law evaluation from the flags.
void run_lorentz(RunContext& ctx, const LorentzFlags& flags);

}  // namespace lpv::cli
