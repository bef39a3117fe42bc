#include "lpv/pv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "lpv/errors.hpp"

namespace lpv {

std::string_view to_string(PvStatus status) {
    switch (status) {
        case PvStatus::valid: return "valid";
        case PvStatus::singular: return "singular";
        case PvStatus::boundary: return "boundary";
    }
    return "?";
}

PvStatus pv_status_from_string(std::string_view name) {
    if (name == "valid") return PvStatus::valid;
    if (name == "singular") return PvStatus::singular;
    if (name == "boundary") return PvStatus::boundary;
    throw ConfigError("unknown pv status '" + std::string(name) + "'");
}

PvSample pv_point(const DerivativeSource& source, int order, double x, double t, double eps) {
    if (order < 0) throw PreconditionError("pv_point: negative order");
    if (!(eps > 0.0)) throw PreconditionError("pv_point: eps must be positive");
    if (order + 1 > source.maxOrder())
        throw CapabilityError("pv_point: order " + std::to_string(order) + " needs derivatives of order " +
                              std::to_string(order + 1) + ", source provides " + std::to_string(source.maxOrder()));
    const double den = source.partial(0, order + 1, x, t);
    const double threshold = std::max(eps * source.denominatorScale(order + 1), source.denominatorFloor(order + 1));
    if (!(std::fabs(den) > threshold)) return PvSample::singular();
    if (!source.interior(x, t, order + 1)) return {PvStatus::boundary, std::nullopt};
    const double num = source.partial(1, order, x, t);
    return PvSample::ok(-num / den);
}

PvField::PvField(int order, const GridGeometry& geometry)
    : order_(order), geometry_(geometry), values_(geometry.size(), 0.0), mask_(geometry.size(), PvStatus::singular) {}

std::size_t PvField::count(PvStatus status) const noexcept {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), status));
}

PvField pv_field(const WaveGrid& grid, int order, int accuracy, double eps) {
    if (order < 0) throw PreconditionError("pv_field: negative order");
    if (!(eps > 0.0)) throw PreconditionError("pv_field: eps must be positive");
    const WaveGrid num = grid_partial(grid, DerivativeRequest{1, order, accuracy});
    const WaveGrid den = grid_partial(grid, DerivativeRequest{0, order + 1, accuracy});
    const double threshold = std::max(eps * den.maxAbs(), stencil_noise_floor(grid, order + 1, accuracy));
    const auto& g = grid.geometry();
    PvField field(order, g);
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = den(i, j);
            if (!(std::fabs(d) > threshold)) field.set(i, j, PvStatus::singular);
            else if (!num.interior(i, j) || !den.interior(i, j)) field.set(i, j, PvStatus::boundary);
            else field.set(i, j, PvStatus::valid, -num(i, j) / d);
        }
    return field;
}

void write_pvfield_csv(std::ostream& out, const PvField& field) {
    const auto& g = field.geometry();
    out << wavegrid_header(g) << " order=" << field.order() << '\n';
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) out << ',';
            if (auto v = field.value(i, j)) out << format_double(*v);
            out << ',' << to_string(field.status(i, j));
        }
        out << '\n';
    }
}

PvField read_pvfield_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("pvfield csv: empty input");
    const GridGeometry g = parse_wavegrid_header(line);
    const auto pos = line.find(" order=");
    if (pos == std::string::npos) throw ConfigError("pvfield csv: header lacks order=");
    const int order = std::stoi(line.substr(pos + 7));
    PvField field(order, g);
    for (int j = 0; j < g.nt; ++j) {
        if (!std::getline(in, line)) throw ConfigError("pvfield csv: missing rows");
        std::vector<std::string_view> cells;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            cells.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cells.size() != static_cast<size_t>(2 * g.nx)) throw ConfigError("pvfield csv: wrong row width");
        for (int i = 0; i < g.nx; ++i) {
            const PvStatus st = pv_status_from_string(cells[static_cast<size_t>(2 * i + 1)]);
            double v = 0.0;
            if (st == PvStatus::valid) {
                const auto cell = cells[static_cast<size_t>(2 * i)];
                auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (ec != std::errc() || ptr != cell.data() + cell.size())
                    throw ConfigError("pvfield csv: bad value '" + std::string(cell) + "'");
            }
            field.set(i, j, st, v);
        }
    }
    return field;
}

PvSample damped_spectrum(double phi, double a, double lambda, const Shape& shape, int order, double eps) {
    if (order < 0) throw PreconditionError("damped_spectrum: negative order");
    const auto d = shape.derivatives(phi, order + 1);
    const double den = d[static_cast<size_t>(order + 1)];
    if (!(std::fabs(den) > eps)) return PvSample::singular();
    return PvSample::ok(a * (1.0 - lambda * d[static_cast<size_t>(order)] / den));
}

KinkSpectrum kink_spectrum(double phi, double a, double lambda, double eps) {
    const double p2 = 1.0 + phi * phi;
    KinkSpectrum s;
    s.v0 = PvSample::ok(a * (1.0 + lambda * p2 * std::atan(phi)));
    // psi'' = -2 phi / p2^2, psi''' = (6 phi^2 - 2) / p2^3
    if (std::fabs(2.0 * phi / (p2 * p2)) > eps) s.v1 = PvSample::ok(a * (1.0 - lambda * p2 / (2.0 * phi)));
    if (std::fabs((6.0 * phi * phi - 2.0) / (p2 * p2 * p2)) > eps)
        s.v2 = PvSample::ok(a * (1.0 - lambda * (phi * phi * phi + phi) / (3.0 * phi * phi - 1.0)));
    return s;
}

}  // namespace lpv
