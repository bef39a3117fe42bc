#include "run_context.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "lpv/errors.hpp"
#include "lpv/pv.hpp"
#include "lpv/version.hpp"

namespace lpv::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw NumericError("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 0xF];
    }
    return s;
}

RunContext::RunContext(std::string kind, const GlobalFlags& flags, bool specRequired) : kind_(std::move(kind)) {
    if (!flags.config.empty()) {
        specPath_ = flags.config;
        specText_ = read_file(specPath_);
        spec_ = parse(specText_, "spec '" + specPath_.string() + "'");
        if (!spec_.is_object()) throw ConfigError("spec must be a JSON object");
        if (spec_.contains("kind") && spec_.at("kind") != kind_)
            throw ConfigError("spec kind '" + spec_.at("kind").get<std::string>() + "' does not match command '" +
                              kind_ + "'");
    } else if (specRequired) {
        throw ConfigError(kind_ + ": --config is required");
    }

    const Json tol = spec_.value("tolerances", Json::object());
    tol_.eps = flags.eps.value_or(tol.value("eps", kDefaultSingularityEps));
    tol_.accuracy = flags.accuracy.value_or(tol.value("accuracy", 4));
    if (tol.contains("trace_tol")) tol_.traceTol = tol.at("trace_tol").get<double>();
    if (!(tol_.eps > 0.0)) throw ConfigError("eps must be positive");
    if (tol_.accuracy < 2 || tol_.accuracy % 2 != 0) throw ConfigError("accuracy must be a positive even number");

    std::string out = flags.out;
    if (out.empty() && spec_.contains("output")) out = spec_.at("output").get<std::string>();
    if (!out.empty()) {
        outDir_ = out;
        std::error_code ec;
        fs::create_directories(outDir_, ec);
        if (ec || !fs::is_directory(outDir_)) throw ConfigError("cannot create output directory '" + out + "'");
    } else if (specRequired) {
        throw ConfigError(kind_ + ": --out is required");
    }
}

fs::path RunContext::resolvePath(const std::string& relative) const {
    const fs::path p(relative);
    if (p.is_absolute() || specPath_.empty()) return p;
    return specPath_.parent_path() / p;
}

Json RunContext::resolve(const Json& node) const {
    if (node.is_string()) {
        const fs::path p = resolvePath(node.get<std::string>());
        return parse(read_file(p), "'" + p.string() + "'");
    }
    return node;
}

void RunContext::emit(const std::string& name, const std::string& content) {
    if (outDir_.empty()) return;
    const fs::path p = outDir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    files_[name] = sha256_hex(content);
    sizes_[name] = content.size();
}

void RunContext::writeManifest(const std::string& status) {
    if (outDir_.empty()) return;
    Json m;
    m["tool"] = "lpv";
    m["version"] = kVersion;
    m["command"] = kind_;
    if (!specPath_.empty()) {
        m["spec"] = {{"file", specPath_.filename().string()}, {"sha256", sha256_hex(specText_)}};
    }
    m["status"] = status;
    Json tol;
    tol["eps"] = tol_.eps;
    tol["accuracy"] = tol_.accuracy;
    if (tol_.traceTol) tol["trace_tol"] = *tol_.traceTol;
    for (const auto& [k, v] : settings_.items()) tol[k] = v;
    m["tolerances"] = tol;
    Json files = Json::array();
    for (const auto& [name, hash] : files_)
        files.push_back({{"name", name}, {"bytes", sizes_.at(name)}, {"sha256", hash}});
    m["files"] = files;
    const fs::path p = outDir_ / "manifest.json";
    std::ofstream out(p, std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
}

std::string gnuplot_script(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::string& plotBody) {
    std::ostringstream s;
    s << "# gnuplot script; run from the output directory\n"
      << "set datafile separator ','\n"
      << "set datafile missing 'nan'\n"
      << "set title '" << title << "'\n"
      << "set xlabel '" << xlabel << "'\n"
      << "set ylabel '" << ylabel << "'\n"
      << "set key outside\n"
      << plotBody;
    return s.str();
}

}  // namespace lpv::cli
