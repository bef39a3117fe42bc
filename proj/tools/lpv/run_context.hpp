#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace lpv::cli {

using Json = nlohmann::ordered_json;

/// Overrides from the command line; unset fields fall back to the spec, then to defaults.
struct GlobalFlags {
    std::string config;
    std::string out;
    std::optional<double> eps;
    std::optional<int> accuracy;
};

struct Tolerances {
    double eps = 0.0;
    int accuracy = 4;
    std::optional<double> traceTol;
};

/// One experiment: its spec, its output directory and the files it emitted.
class RunContext {
public:
    RunContext(std::string kind, const GlobalFlags& flags, bool specRequired = true);

    const std::string& kind() const noexcept { return kind_; }
    const Json& spec() const noexcept { return spec_; }
    bool hasSpec() const noexcept { return !specPath_.empty(); }
    const Tolerances& tolerances() const noexcept { return tol_; }
    bool hasOutput() const noexcept { return !outDir_.empty(); }

    /// An inline JSON object, or a string naming a JSON file relative to the spec.
    Json resolve(const Json& node) const;
    std::string resolveText(const Json& node) const { return resolve(node).dump(); }
    std::filesystem::path resolvePath(const std::string& relative) const;

    /// Writes `name` under the output directory and records it for the manifest.
    void emit(const std::string& name, const std::string& content);
    /// Extra manifest entries (numeric settings particular to the command).
    void recordSetting(const std::string& key, Json value) { settings_[key] = std::move(value); }

    /// manifest.json with version, tolerances and checksums of every emitted file.
    void writeManifest(const std::string& status);

private:
    std::string kind_;
    std::filesystem::path specPath_;
    std::string specText_;
    Json spec_ = Json::object();
    std::filesystem::path outDir_;
    Tolerances tol_;
    std::map<std::string, std::string> files_;  ///< name -> sha256
    std::map<std::string, std::size_t> sizes_;
    Json settings_ = Json::object();
};

std::string sha256_hex(const std::string& data);

/// `plot` lines of a gnuplot script over comma-separated files.
std::string gnuplot_script(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::string& plotBody);

}  // namespace lpv::cli
