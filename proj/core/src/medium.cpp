#include "lpv/medium.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "lpv/errors.hpp"

namespace lpv {

namespace {

void check_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("medium: c must be positive");
}

struct Panel {
    double value = 0.0;
    double error = 0.0;
};

// Bisection over the 15-point Kronrod rule. Each panel gets a share of the
// absolute budget proportional to its width.
template <class F>
Panel adaptive_kronrod(const F& f, double a, double b, double budget, int depth) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double unit = 0.0;
    const double value = Rule::integrate(f, a, b, 0, 0.0, &unit);
    // The non-adaptive rule reports its error on the reference interval.
    const double error = unit * 0.5 * (b - a);
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(value);
    if (depth == 0 || error <= std::max(budget, floor)) return {value, error};
    const double mid = 0.5 * (a + b);
    const Panel l = adaptive_kronrod(f, a, mid, 0.5 * budget, depth - 1);
    const Panel r = adaptive_kronrod(f, mid, b, 0.5 * budget, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace

MediumProfile MediumProfile::constant(double n0, double c) {
    check_c(c);
    if (!(n0 > 0.0)) throw ConfigError("medium: n must be positive");
    MediumProfile p;
    p.kind_ = Kind::constant;
    p.n0_ = n0;
    p.c_ = c;
    return p;
}

MediumProfile MediumProfile::linear(double n0, double slope, double c) {
    check_c(c);
    MediumProfile p;
    p.kind_ = Kind::linear;
    p.n0_ = n0;
    p.slope_ = slope;
    p.c_ = c;
    return p;
}

MediumProfile MediumProfile::tanh(double n0, double dn, double center, double width, double c) {
    check_c(c);
    if (!(width > 0.0)) throw ConfigError("medium: tanh width must be positive");
    if (!(n0 > 0.0) || !(n0 + dn > 0.0)) throw ConfigError("medium: tanh profile must stay positive");
    MediumProfile p;
    p.kind_ = Kind::tanh;
    p.n0_ = n0;
    p.slope_ = dn;
    p.center_ = center;
    p.width_ = width;
    p.c_ = c;
    return p;
}

MediumProfile MediumProfile::table(std::vector<std::pair<double, double>> points, double c) {
    check_c(c);
    if (points.size() < 2) throw ConfigError("medium: table needs at least two points");
    std::sort(points.begin(), points.end());
    MediumProfile p;
    p.kind_ = Kind::table;
    p.c_ = c;
    for (const auto& [x, n] : points) {
        if (!p.xs_.empty() && !(x > p.xs_.back())) throw ConfigError("medium: table x values must be distinct");
        if (!(n > 0.0)) throw ConfigError("medium: table n values must be positive");
        p.xs_.push_back(x);
        p.ns_.push_back(n);
    }
    // Natural cubic spline second derivatives (Thomas algorithm).
    const size_t k = p.xs_.size();
    p.m_.assign(k, 0.0);
    if (k > 2) {
        std::vector<double> diag(k, 0.0), upper(k, 0.0), rhs(k, 0.0);
        for (size_t i = 1; i + 1 < k; ++i) {
            const double h0 = p.xs_[i] - p.xs_[i - 1];
            const double h1 = p.xs_[i + 1] - p.xs_[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((p.ns_[i + 1] - p.ns_[i]) / h1 - (p.ns_[i] - p.ns_[i - 1]) / h0);
        }
        for (size_t i = 2; i + 1 < k; ++i) {
            const double h0 = p.xs_[i] - p.xs_[i - 1];
            const double f = h0 / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        for (size_t i = k - 2; i >= 1; --i) {
            p.m_[i] = (rhs[i] - upper[i] * p.m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }
    return p;
}

double MediumProfile::derivative(double x, int order) const {
    if (order < 0) throw PreconditionError("medium: negative derivative order");
    switch (kind_) {
        case Kind::constant: return order == 0 ? n0_ : 0.0;
        case Kind::linear:
            if (order == 0) return n0_ + slope_ * x;
            return order == 1 ? slope_ : 0.0;
        case Kind::tanh: {
            const double t = std::tanh((x - center_) / width_);
            if (order == 0) return n0_ + 0.5 * slope_ * (1.0 + t);
            // d^k tanh(u)/du^k as a polynomial in T: P_{k+1}(T) = P_k'(T) (1 - T^2)
            std::vector<double> poly{0.0, 1.0};
            for (int k = 0; k < order; ++k) {
                std::vector<double> next(poly.size() + 1, 0.0);
                for (size_t j = 1; j < poly.size(); ++j) {
                    const double d = poly[j] * static_cast<double>(j);
                    next[j - 1] += d;
                    next[j + 1] -= d;
                }
                poly = std::move(next);
            }
            double v = 0.0;
            for (size_t j = poly.size(); j-- > 0;) v = v * t + poly[j];
            return 0.5 * slope_ * v * std::pow(width_, -order);
        }
        case Kind::table: {
            const size_t last = xs_.size() - 1;
            if (x <= xs_.front() || x >= xs_.back()) {
                // Linear continuation with the end slope; natural ends make this C^2.
                const bool left = x <= xs_.front();
                const size_t i = left ? 0 : last - 1;
                const double h = xs_[i + 1] - xs_[i];
                const double slope = left ? (ns_[1] - ns_[0]) / h - h * (2.0 * m_[0] + m_[1]) / 6.0
                                          : (ns_[last] - ns_[last - 1]) / h + h * (m_[last - 1] + 2.0 * m_[last]) / 6.0;
                const double xe = left ? xs_.front() : xs_.back();
                const double ne = left ? ns_.front() : ns_.back();
                if (order == 0) return ne + slope * (x - xe);
                return order == 1 ? slope : 0.0;
            }
            const size_t i = static_cast<size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
            const double h = xs_[i + 1] - xs_[i];
            const double a = (xs_[i + 1] - x) / h;
            const double b = (x - xs_[i]) / h;
            switch (order) {
                case 0:
                    return a * ns_[i] + b * ns_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
                case 1:
                    return (ns_[i + 1] - ns_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
                           (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
                case 2: return a * m_[i] + b * m_[i + 1];
                case 3: return (m_[i + 1] - m_[i]) / h;
                default: return 0.0;
            }
        }
    }
    return 0.0;
}

double MediumProfile::logDerivative(double x) const { return derivative(x, 1) / derivative(x, 0); }

double MediumProfile::kIntegral(double a, double b) const {
    if (a == b) return 0.0;
    switch (kind_) {
        case Kind::constant: return n0_ * (b - a);
        default: break;
    }
    auto f = [this](double x) { return derivative(x, 0); };
    // Table knots are split points so each panel integrates a single cubic.
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> cuts{lo};
    if (kind_ == Kind::table)
        for (double k : xs_)
            if (k > lo && k < hi) cuts.push_back(k);
    cuts.push_back(hi);
    double total = 0.0, worst = 0.0;
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double share = kQuadratureTolerance * (cuts[s + 1] - cuts[s]) / (hi - lo);
        const Panel p = adaptive_kronrod(f, cuts[s], cuts[s + 1], share, 30);
        total += p.value;
        worst += p.error;
    }
    if (!(worst <= kQuadratureTolerance) && !(worst <= 1e-14 * std::fabs(total))) {
        std::ostringstream msg;
        msg << "medium: quadrature on [" << a << ", " << b << "] reached error " << worst << ", tolerance "
            << kQuadratureTolerance;
        throw NumericError(msg.str());
    }
    return b > a ? total : -total;
}

double MediumProfile::minN(double a, double b, int samples) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double x = a + (b - a) * i / std::max(1, samples - 1);
        m = std::min(m, n(x));
    }
    return m;
}

MediumProfile MediumProfile::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("medium json: ") + e.what());
    }
    try {
        const std::string type = j.at("type").get<std::string>();
        const double c = j.value("c", 1.0);
        MediumProfile p = [&] {
            if (type == "tanh")
                return tanh(j.at("n0").get<double>(), j.at("dn").get<double>(), j.at("center").get<double>(),
                            j.at("width").get<double>(), c);
            if (type == "table") return table(j.at("points").get<std::vector<std::pair<double, double>>>(), c);
            if (type == "constant") return constant(j.at("n").get<double>(), c);
            if (type == "linear") return linear(j.at("n0").get<double>(), j.at("slope").get<double>(), c);
            throw ConfigError("medium json: unknown type '" + type + "'");
        }();
        p.kOrigin_ = j.value("k_origin", 0.0);
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("medium json: ") + e.what());
    }
}

std::string MediumProfile::to_json() const {
    nlohmann::ordered_json j;
    switch (kind_) {
        case Kind::constant: j["type"] = "constant"; j["n"] = n0_; break;
        case Kind::linear: j["type"] = "linear"; j["n0"] = n0_; j["slope"] = slope_; break;
        case Kind::tanh:
            j["type"] = "tanh";
            j["n0"] = n0_;
            j["dn"] = slope_;
            j["center"] = center_;
            j["width"] = width_;
            break;
        case Kind::table: {
            j["type"] = "table";
            auto pts = nlohmann::ordered_json::array();
            for (size_t i = 0; i < xs_.size(); ++i) pts.push_back({xs_[i], ns_[i]});
            j["points"] = pts;
            break;
        }
    }
    j["c"] = c_;
    j["k_origin"] = kOrigin_;
    return j.dump();
}

}  // namespace lpv
