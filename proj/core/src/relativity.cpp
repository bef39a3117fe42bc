#include "lpv/relativity.hpp"

#include <cmath>

#include "lpv/errors.hpp"

namespace lpv {

Boost::Boost(double V_, double c_) : V(V_), c(c_) {
    if (!(c > 0.0)) throw ConfigError("boost: c must be positive");
    if (!(std::fabs(V) < c)) throw ConfigError("boost: |V| must be below c");
}

double Boost::lorentzFactor() const noexcept { return 1.0 / std::sqrt(1.0 - beta() * beta()); }

std::string_view to_string(SignConvention convention) {
    return convention == SignConvention::paper ? "paper" : "identity-at-rest";
}

SignConvention sign_convention_from_string(std::string_view name) {
    if (name == "paper") return SignConvention::paper;
    if (name == "identity-at-rest") return SignConvention::identityAtRest;
    throw ConfigError("unknown sign convention '" + std::string(name) + "'");
}

double boost_v0(double v, const Boost& boost) {
    const double den = 1.0 + v * boost.V / (boost.c * boost.c);
    if (den == 0.0) throw SingularError("boost_v0: 1 + vV/c^2 vanishes");
    return (v + boost.V) / den;
}

double boost_v1_freewave(double v, const Boost& boost, SignConvention convention) {
    const double c2 = boost.c * boost.c;
    const double s = 1.0 + boost.V * boost.V / c2;
    const double den = s + 2.0 * boost.V * v / c2;
    if (den == 0.0) throw SingularError("boost_v1_freewave: denominator vanishes");
    const double r = (s * v + 2.0 * boost.V) / den;
    return convention == SignConvention::paper ? -r : r;
}

PvSample boost_v1_general(const DerivativeSource& source, double x, double t, const Boost& boost, double eps) {
    if (source.maxOrder() < 2) throw CapabilityError("boost_v1_general: needs second derivatives");
    const double V = boost.V, c2 = boost.c * boost.c;
    const double ptt = source.partial(2, 0, x, t);
    const double pxt = source.partial(1, 1, x, t);
    const double pxx = source.partial(0, 2, x, t);
    const double num = (1.0 + V * V / c2) * pxt - V * (ptt / c2 + pxx);
    const double den = V * V / (c2 * c2) * ptt + pxx - 2.0 * V / c2 * pxt;
    if (!(std::fabs(den) > eps * source.denominatorScale(2))) return PvSample::singular();
    return PvSample::ok(-num / den);
}

BoostedSource::BoostedSource(const DerivativeSource& base, const Boost& boost) : base_(base), boost_(boost) {}

void BoostedSource::toPrimed(double x, double t, double& xPrime, double& tPrime) const noexcept {
    const double g = boost_.lorentzFactor();
    xPrime = g * (x + boost_.V * t);
    tPrime = g * (t + boost_.V * x / (boost_.c * boost_.c));
}

void BoostedSource::toUnprimed(double xPrime, double tPrime, double& x, double& t) const noexcept {
    const double g = boost_.lorentzFactor();
    x = g * (xPrime - boost_.V * tPrime);
    t = g * (tPrime - boost_.V * xPrime / (boost_.c * boost_.c));
}

bool BoostedSource::contains(double xPrime, double tPrime) const {
    double x, t;
    toUnprimed(xPrime, tPrime, x, t);
    return base_.contains(x, t);
}

double BoostedSource::partial(int orderT, int orderX, double xPrime, double tPrime) const {
    // d/dx' = g (d/dx - V/c^2 d/dt),  d/dt' = g (-V d/dx + d/dt); expand the
    // constant-coefficient operator product binomially.
    double x, t;
    toUnprimed(xPrime, tPrime, x, t);
    const double g = boost_.lorentzFactor();
    const double ax = g, at = -g * boost_.V / (boost_.c * boost_.c);
    const double bx = -g * boost_.V, bt = g;
    auto binom = [](int n, int k) {
        double r = 1.0;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    double sum = 0.0;
    for (int i = 0; i <= orderT; ++i)
        for (int j = 0; j <= orderX; ++j) {
            const double coef = binom(orderT, i) * binom(orderX, j) * std::pow(bx, i) * std::pow(bt, orderT - i) *
                                std::pow(ax, j) * std::pow(at, orderX - j);
            if (coef == 0.0) continue;
            sum += coef * base_.partial((orderT - i) + (orderX - j), i + j, x, t);
        }
    return sum;
}

BoostConsistency boost_v0_consistency(const DerivativeSource& source, double x, double t, const Boost& boost,
                                      double eps) {
    const PvSample rest = pv_point(source, 0, x, t, eps);
    if (!rest.valid()) throw SingularError("boost_v0_consistency: v_0 singular in the rest frame");
    const BoostedSource moving(source, boost);
    double xp, tp;
    moving.toPrimed(x, t, xp, tp);
    const PvSample boosted = pv_point(moving, 0, xp, tp, eps);
    if (!boosted.valid()) throw SingularError("boost_v0_consistency: v_0 singular in the boosted frame");
    BoostConsistency r;
    r.unprimed = *rest.value;
    r.viaAddition = boost_v0(r.unprimed, boost);
    r.viaTransform = *boosted.value;
    r.difference = std::fabs(r.viaAddition - r.viaTransform);
    return r;
}

}  // namespace lpv
