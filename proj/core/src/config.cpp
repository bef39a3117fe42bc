#include "lpv/config.hpp"

#include <json.hpp>

#include "lpv/errors.hpp"

namespace lpv {

namespace {

using json = nlohmann::json;

json parse(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

Shape shape_from(const json& j) {
    return Shape(shape_kind_from_string(j.at("type").get<std::string>()), j.value("amplitude", 1.0),
                 j.value("width", 1.0), j.value("center", 0.0), j.value("max_order", Shape::kDefaultMaxOrder));
}

Frame frame_from(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "translational") return Translational{j.at("a").get<double>(), j.value("direction", 1)};
    if (type == "damped") return DampedTranslational{j.at("a").get<double>(), j.at("lambda").get<double>()};
    if (type == "medium")
        return InhomogeneousMode{j.at("xi").get<double>(),
                                 std::make_shared<const MediumProfile>(MediumProfile::from_json(j.at("medium").dump()))};
    throw ConfigError("unknown frame type '" + type + "'");
}

AnalyticWave wave_from(const json& j) {
    if (j.contains("components")) {
        std::vector<AnalyticWave::Component> comps;
        for (const auto& c : j.at("components")) comps.push_back({shape_from(c.at("shape")), frame_from(c.at("frame"))});
        return AnalyticWave(std::move(comps));
    }
    return AnalyticWave(shape_from(j.at("shape")), frame_from(j.at("frame")));
}

Equation equation_from(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "free") return FreeEquation{j.at("a").get<double>()};
    if (type == "damped") return DampedEquation{j.at("a").get<double>(), j.at("lambda").get<double>()};
    if (type == "medium")
        return MediumEquation{std::make_shared<const MediumProfile>(MediumProfile::from_json(j.at("medium").dump()))};
    throw ConfigError("unknown equation type '" + type + "'");
}

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

Shape shape_from_json(std::string_view text) {
    const json j = parse(text, "shape json");
    return guarded("shape json", [&] { return shape_from(j); });
}

AnalyticWave wave_from_json(std::string_view text) {
    const json j = parse(text, "wave json");
    return guarded("wave json", [&] { return wave_from(j); });
}

SolverSetup solver_from_json(std::string_view text) {
    const json j = parse(text, "solver json");
    return guarded("solver json", [&] {
        SolverSetup s;
        auto& c = s.config;
        c.equation = equation_from(j.at("equation"));
        const auto& d = j.at("domain");
        c.xMin = d.at("x_min").get<double>();
        c.xMax = d.at("x_max").get<double>();
        c.t0 = d.value("t0", 0.0);
        c.tEnd = d.at("t_end").get<double>();
        const auto& r = j.at("resolution");
        c.dx = r.at("dx").get<double>();
        c.dt = r.at("dt").get<double>();
        const std::string boundary = j.value("boundary", std::string("periodic"));
        if (boundary == "periodic") c.boundary = BoundaryKind::periodic;
        else if (boundary == "outgoing") c.boundary = BoundaryKind::outgoing;
        else throw ConfigError("solver json: unknown boundary '" + boundary + "'");
        const auto& init = j.at("initial");
        if (init.contains("wave")) {
            s.reference = wave_from(init.at("wave"));
            set_initial_from(c, *s.reference);
        } else if (init.value("type", std::string()) == "zero") {
            c.initialValue = [](double) { return 0.0; };
            c.initialRate = [](double) { return 0.0; };
        } else {
            throw ConfigError("solver json: initial needs a wave or type zero");
        }
        return s;
    });
}

}  // namespace lpv
