#include "lpv/shape.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "lpv/errors.hpp"

namespace lpv {

std::string_view to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::gaussian: return "gaussian";
        case ShapeKind::sech2: return "sech2";
        case ShapeKind::arctan: return "arctan";
        case ShapeKind::raisedCosine: return "raised-cosine";
        case ShapeKind::sinusoid: return "sinusoid";
        case ShapeKind::exponential: return "exponential";
    }
    return "?";
}

ShapeKind shape_kind_from_string(std::string_view name) {
    if (name == "gaussian") return ShapeKind::gaussian;
    if (name == "sech2") return ShapeKind::sech2;
    if (name == "arctan" || name == "kink") return ShapeKind::arctan;
    if (name == "raised-cosine") return ShapeKind::raisedCosine;
    if (name == "sinusoid") return ShapeKind::sinusoid;
    if (name == "exponential") return ShapeKind::exponential;
    throw ConfigError("unknown shape type '" + std::string(name) + "'");
}

Shape::Shape(ShapeKind kind, double amplitude, double width, double center, int maxOrder)
    : kind_(kind), amplitude_(amplitude), width_(width), center_(center), maxOrder_(maxOrder) {
    if (!(width != 0.0) || !std::isfinite(width)) throw ConfigError("shape: width must be finite and nonzero");
    if (kind == ShapeKind::raisedCosine && width < 0.0) throw ConfigError("shape: raised-cosine half-width must be positive");
    if (maxOrder < 1) throw ConfigError("shape: maxOrder must be >= 1");
}

namespace {

// Unit-scale derivatives f^(0..order)(u).
void unit_derivatives(ShapeKind kind, double u, int order, std::span<double> out) {
    switch (kind) {
        case ShapeKind::gaussian: {
            // f^(n) = (-1)^n H_n(u) exp(-u^2) with physicists' Hermite polynomials.
            const double e = std::exp(-u * u);
            double hPrev = 1.0, h = 2.0 * u;
            out[0] = e;
            if (order >= 1) out[1] = -h * e;
            for (int n = 1; n < order; ++n) {
                const double next = 2.0 * u * h - 2.0 * n * hPrev;
                hPrev = h;
                h = next;
                out[static_cast<size_t>(n + 1)] = ((n + 1) % 2 ? -h : h) * e;
            }
            return;
        }
        case ShapeKind::sech2: {
            // f = 1 - T^2 with T = tanh(u); d/du p(T) = p'(T) (1 - T^2).
            const double tanhU = std::tanh(u);
            std::vector<double> poly{1.0, 0.0, -1.0};
            for (int n = 0; n <= order; ++n) {
                double v = 0.0;
                for (size_t k = poly.size(); k-- > 0;) v = v * tanhU + poly[k];
                out[static_cast<size_t>(n)] = v;
                if (n == order) break;
                std::vector<double> next(poly.size() + 1, 0.0);
                for (size_t k = 1; k < poly.size(); ++k) {
                    const double d = poly[k] * static_cast<double>(k);  // coefficient of T^(k-1) in p'
                    next[k - 1] += d;
                    next[k + 1] -= d;
                }
                poly = std::move(next);
            }
            return;
        }
        case ShapeKind::arctan: {
            // f^(n) = (-1)^(n-1) (n-1)! Im[(u - i)^-n] for n >= 1.
            out[0] = std::atan(u);
            const std::complex<double> z = std::complex<double>(u, 1.0) / (u * u + 1.0);
            std::complex<double> power = 1.0;
            double factorial = 1.0;
            for (int n = 1; n <= order; ++n) {
                power *= z;
                if (n > 1) factorial *= (n - 1);
                out[static_cast<size_t>(n)] = ((n - 1) % 2 ? -1.0 : 1.0) * factorial * power.imag();
            }
            return;
        }
        case ShapeKind::raisedCosine: {
            if (std::fabs(u) >= 1.0) {
                for (int n = 0; n <= order; ++n) out[static_cast<size_t>(n)] = 0.0;
                return;
            }
            const double s = std::sin(std::numbers::pi * u);
            const double c = std::cos(std::numbers::pi * u);
            double scale = 0.5;
            for (int n = 0; n <= order; ++n) {
                const double cyc[4] = {c, -s, -c, s};
                out[static_cast<size_t>(n)] = scale * cyc[n % 4];
                scale *= std::numbers::pi;
            }
            out[0] += 0.5;
            return;
        }
        case ShapeKind::sinusoid: {
            const double s = std::sin(u);
            const double c = std::cos(u);
            const double cyc[4] = {c, -s, -c, s};
            for (int n = 0; n <= order; ++n) out[static_cast<size_t>(n)] = cyc[n % 4];
            return;
        }
        case ShapeKind::exponential: {
            const double e = std::exp(u);
            for (int n = 0; n <= order; ++n) out[static_cast<size_t>(n)] = e;
            return;
        }
    }
}

}  // namespace

void Shape::derivatives(double phi, int order, std::span<double> out) const {
    if (order < 0) throw PreconditionError("shape: negative derivative order");
    if (order > maxOrder_)
        throw CapabilityError("shape '" + std::string(to_string(kind_)) + "' provides derivatives up to order " +
                              std::to_string(maxOrder_) + ", requested " + std::to_string(order));
    if (out.size() < static_cast<size_t>(order + 1)) throw PreconditionError("shape: output span too short");
    unit_derivatives(kind_, (phi - center_) / width_, order, out);
    double scale = amplitude_;
    for (int n = 0; n <= order; ++n) {
        out[static_cast<size_t>(n)] *= scale;
        scale /= width_;
    }
}

std::vector<double> Shape::derivatives(double phi, int order) const {
    std::vector<double> out(static_cast<size_t>(order + 1));
    derivatives(phi, order, out);
    return out;
}

double Shape::derivative(double phi, int n) const {
    double buf[32];
    if (n >= 32) {
        auto v = derivatives(phi, n);
        return v.back();
    }
    derivatives(phi, n, std::span<double>(buf, static_cast<size_t>(n + 1)));
    return buf[n];
}

}  // namespace lpv
