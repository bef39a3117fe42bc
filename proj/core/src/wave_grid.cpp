#include "lpv/wave_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lpv/errors.hpp"
#include "lpv/stencil.hpp"

namespace lpv {

void GridGeometry::validate() const {
    if (!(dx > 0.0) || !(dt > 0.0)) throw ConfigError("wavegrid: dx and dt must be positive");
    if (nx < 2 || nt < 2) throw ConfigError("wavegrid: nx and nt must be at least 2");
    if (!std::isfinite(x0) || !std::isfinite(t0)) throw ConfigError("wavegrid: origin must be finite");
}

WaveGrid::WaveGrid(const GridGeometry& geometry) : geometry_(geometry) {
    geometry_.validate();
    values_.assign(geometry_.size(), 0.0);
    interior_.assign(geometry_.size(), 1);
}

WaveGrid::WaveGrid(const GridGeometry& geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
    geometry_.validate();
    if (values_.size() != geometry_.size())
        throw ConfigError("wavegrid: expected " + std::to_string(geometry_.size()) + " values, got " +
                          std::to_string(values_.size()));
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
        throw ConfigError("wavegrid: values must be finite");
    interior_.assign(geometry_.size(), 1);
}

WaveGrid WaveGrid::sample(const GridGeometry& geometry, const std::function<double(double, double)>& f) {
    WaveGrid grid(geometry);
    for (int j = 0; j < geometry.nt; ++j)
        for (int i = 0; i < geometry.nx; ++i) grid(i, j) = f(geometry.x(i), geometry.t(j));
    if (!std::all_of(grid.values_.begin(), grid.values_.end(), [](double v) { return std::isfinite(v); }))
        throw ConfigError("wavegrid: sampled function produced non-finite values");
    return grid;
}

double WaveGrid::maxAbs(bool interiorOnly) const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!interiorOnly || interior_[k]) m = std::max(m, std::fabs(values_[k]));
    return m;
}

WaveGrid grid_partial(const WaveGrid& grid, const DerivativeRequest& req) {
    if (req.orderT < 0 || req.orderX < 0) throw PreconditionError("grid_partial: negative derivative order");
    const auto& g = grid.geometry();
    const int needNx = min_axis_points(req.orderX, req.accuracy);
    const int needNt = min_axis_points(req.orderT, req.accuracy);
    if (g.nx < needNx || g.nt < needNt) {
        std::ostringstream msg;
        msg << "grid_partial: (orderT=" << req.orderT << ", orderX=" << req.orderX << ", accuracy=" << req.accuracy
            << ") needs nx >= " << needNx << " and nt >= " << needNt << ", grid has nx=" << g.nx << " nt=" << g.nt;
        throw SizingError(msg.str(), needNx, needNt);
    }

    WaveGrid stage(g);
    const double scaleT = std::pow(g.dt, -req.orderT);
    for (int j = 0; j < g.nt; ++j) {
        bool inner = true;
        const Stencil& st = axis_stencil(req.orderT, req.accuracy, j, g.nt, inner);
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            bool flag = inner && grid.interior(i, j);
            for (int k = 0; k < st.size(); ++k) {
                acc += st.weights[static_cast<size_t>(k)] * grid(i, j + st.first + k);
                flag = flag && grid.interior(i, j + st.first + k);
            }
            stage(i, j) = acc * scaleT;
            stage.setInterior(i, j, flag);
        }
    }

    WaveGrid out(g);
    const double scaleX = std::pow(g.dx, -req.orderX);
    for (int i = 0; i < g.nx; ++i) {
        bool inner = true;
        const Stencil& st = axis_stencil(req.orderX, req.accuracy, i, g.nx, inner);
        for (int j = 0; j < g.nt; ++j) {
            double acc = 0.0;
            bool flag = inner && stage.interior(i, j);
            for (int k = 0; k < st.size(); ++k) {
                acc += st.weights[static_cast<size_t>(k)] * stage(i + st.first + k, j);
                flag = flag && stage.interior(i + st.first + k, j);
            }
            out(i, j) = acc * scaleX;
            out.setInterior(i, j, flag);
        }
    }
    return out;
}

double stencil_noise_floor(const WaveGrid& grid, int orderX, int accuracy) {
    const auto& g = grid.geometry();
    if (orderX == 0 || g.nx < min_axis_points(orderX, accuracy)) return 0.0;
    double weightSum = 0.0;
    // Index 0 through the first centered point covers every distinct window shape.
    const int last = std::min(g.nx - 1, central_half_width(orderX, accuracy) + orderX + accuracy);
    for (int i = 0; i <= last; ++i) {
        bool inner = true;
        const Stencil& st = axis_stencil(orderX, accuracy, i, g.nx, inner);
        double s = 0.0;
        for (double w : st.weights) s += std::fabs(w);
        weightSum = std::max(weightSum, s);
    }
    return 16.0 * std::numeric_limits<double>::epsilon() * grid.maxAbs() * weightSum * std::pow(g.dx, -orderX);
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string wavegrid_header(const GridGeometry& g) {
    return "# wavegrid x0=" + format_double(g.x0) + " dx=" + format_double(g.dx) + " nx=" + std::to_string(g.nx) +
           " t0=" + format_double(g.t0) + " dt=" + format_double(g.dt) + " nt=" + std::to_string(g.nt);
}

void write_wavegrid_csv(std::ostream& out, const WaveGrid& grid) {
    const auto& g = grid.geometry();
    out << wavegrid_header(g) << '\n';
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) out << ',';
            out << format_double(grid(i, j));
        }
        out << '\n';
    }
}

namespace {

double parse_number(std::string_view s, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(std::string("wavegrid csv: cannot parse ") + what + " '" + std::string(s) + "'");
    return v;
}

int parse_count(std::string_view s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(std::string("wavegrid csv: cannot parse ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

GridGeometry parse_wavegrid_header(const std::string& line) {
    std::istringstream in(line);
    std::string hash, tag;
    in >> hash >> tag;
    if (hash != "#" || tag != "wavegrid") throw ConfigError("wavegrid csv: missing '# wavegrid' header");
    GridGeometry g;
    int seen = 0;
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ConfigError("wavegrid csv: malformed header token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string_view val = std::string_view(token).substr(eq + 1);
        if (key == "x0") g.x0 = parse_number(val, "x0"), seen |= 1;
        else if (key == "dx") g.dx = parse_number(val, "dx"), seen |= 2;
        else if (key == "nx") g.nx = parse_count(val, "nx"), seen |= 4;
        else if (key == "t0") g.t0 = parse_number(val, "t0"), seen |= 8;
        else if (key == "dt") g.dt = parse_number(val, "dt"), seen |= 16;
        else if (key == "nt") g.nt = parse_count(val, "nt"), seen |= 32;
        // other keys (e.g. order=) belong to derived formats
    }
    if (seen != 63) throw ConfigError("wavegrid csv: header must define x0, dx, nx, t0, dt, nt");
    g.validate();
    return g;
}

WaveGrid read_wavegrid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("wavegrid csv: empty input");
    const GridGeometry g = parse_wavegrid_header(line);
    std::vector<double> values;
    values.reserve(g.size());
    for (int j = 0; j < g.nt; ++j) {
        if (!std::getline(in, line)) throw ConfigError("wavegrid csv: expected " + std::to_string(g.nt) + " rows");
        std::string_view rest(line);
        int count = 0;
        while (true) {
            const auto comma = rest.find(',');
            values.push_back(parse_number(rest.substr(0, comma), "value"));
            ++count;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (count != g.nx)
            throw ConfigError("wavegrid csv: row " + std::to_string(j) + " has " + std::to_string(count) +
                              " values, expected " + std::to_string(g.nx));
    }
    return WaveGrid(g, std::move(values));
}

}  // namespace lpv
