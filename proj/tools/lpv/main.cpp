#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lpv/errors.hpp"
#include "lpv/tracer.hpp"
#include "lpv/version.hpp"
#include "run_context.hpp"

using namespace lpv;
using namespace lpv::cli;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInternal = 1;

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const SizingError*>(&e)) return "SizingError";
    if (dynamic_cast<const CapabilityError*>(&e)) return "CapabilityError";
    if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const SingularError*>(&e)) return "SingularError";
    if (dynamic_cast<const IncompleteTraceError*>(&e)) return "IncompleteTraceError";
    if (dynamic_cast<const NumericError*>(&e)) return "NumericError";
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "SpecError";
    if (dynamic_cast<const CLI::Error*>(&e)) return "UsageError";
    return "InternalError";
}

int report_error(RunContext* ctx, const std::string& command, const std::exception& e, int code) {
    const char* category = code == kExitConfig ? "config" : code == kExitNumeric ? "numeric" : "internal";
    Json rec;
    rec["status"] = "error";
    rec["command"] = command;
    rec["category"] = category;
    rec["type"] = error_type(e);
    rec["exit_code"] = code;
    rec["message"] = e.what();
    std::cerr << rec.dump() << '\n';
    if (ctx && ctx->hasOutput()) {
        try {
            ctx->emit("error.json", rec.dump(2) + "\n");
            ctx->writeManifest("error");
        } catch (const std::exception&) {
        }
    }
    return code;
}

int run(const std::string& command, const GlobalFlags& flags, bool specRequired,
        const std::function<void(RunContext&)>& body) {
    std::unique_ptr<RunContext> ctx;
    try {
        ctx = std::make_unique<RunContext>(command, flags, specRequired);
        body(*ctx);
        ctx->writeManifest("ok");
        return 0;
    } catch (const ConfigError& e) {
        return report_error(ctx.get(), command, e, kExitConfig);
    } catch (const nlohmann::json::exception& e) {
        return report_error(ctx.get(), command, e, kExitConfig);
    } catch (const NumericError& e) {
        return report_error(ctx.get(), command, e, kExitNumeric);
    } catch (const std::exception& e) {
        return report_error(ctx.get(), command, e, kExitInternal);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local N-th order phase velocity toolkit", "lpv"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--config", flags.config, "Experiment spec (JSON)");
    app.add_option("--out", flags.out, "Output directory");
    app.add_option("--eps", flags.eps, "Relative singularity threshold");
    app.add_option("--accuracy", flags.accuracy, "Finite-difference accuracy order (even)");

    struct Command {
        const char* name;
        const char* help;
        std::function<void(RunContext&)> body;
    };
    const std::vector<Command> commands{
        {"analyze", "PV fields of a sampled or loaded wave grid", run_analyze},
        {"trace", "Trace labelled attributes through space-time", run_trace},
        {"transit", "Global transit gamma by trace and by quadrature", run_transit},
        {"separation-scan", "gamma(xi) over a grid of Lambda and xi", run_separation_scan},
        {"simulate", "Finite-difference solve of a field equation", run_simulate},
        {"end-to-end", "Solve, evaluate PVs and trace, checked against the analytic reference", run_end_to_end},
    };
    std::string chosen;
    std::function<void(RunContext&)> body;
    bool specRequired = true;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->callback([&, c] {
            chosen = c.name;
            body = c.body;
        });
    }

    LorentzFlags lf;
    auto* lorentz = app.add_subcommand("lorentz", "Velocity addition laws and boosted PVs");
    lorentz->fallthrough();
    lorentz->add_option("--v", lf.v, "Velocity in the rest frame");
    lorentz->add_option("--V", lf.V, "Frame velocity");
    lorentz->add_option("--c", lf.c, "Light speed")->capture_default_str();
    lorentz->add_option("--order", lf.order, "0: Einstein addition, 1: free-wave first-order law")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();
    lorentz->add_option("--sign-convention", lf.signConvention, "paper | identity-at-rest")->capture_default_str();
    lorentz->callback([&] {
        chosen = "lorentz";
        specRequired = false;
        body = [&lf](RunContext& ctx) { run_lorentz(ctx, lf); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(nullptr, chosen.empty() ? "lpv" : chosen, e, kExitConfig);
    }
    return run(chosen, flags, specRequired, body);
}
