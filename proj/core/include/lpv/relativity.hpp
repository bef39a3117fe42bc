#pragma once

#include <string_view>

#include "lpv/derivative_source.hpp"
#include "lpv/pv.hpp"

namespace lpv {

/// Relative frame speed V and light speed c, |V| < c.
struct Boost {
    double V = 0.0;
    double c = 1.0;

    Boost() = default;
    Boost(double V, double c = 1.0);

    double beta() const noexcept { return V / c; }
    double lorentzFactor() const noexcept;
};

/// Sign of the first-order free-wave addition law.
enum class SignConvention {
    /// As published: v' = -[(1 + V^2/c^2) v + 2V] / [(1 + V^2/c^2) + 2 V v / c^2]; maps v to -v at V = 0.
    paper,
    /// Without the leading minus; the identity at V = 0 and the form the general law reduces to.
    identityAtRest,
};

std::string_view to_string(SignConvention convention);
SignConvention sign_convention_from_string(std::string_view name);

/// Einstein addition (v + V) / (1 + v V / c^2). Throws SingularError when the denominator vanishes.
double boost_v0(double v, const Boost& boost);

/// First-order velocity addition for sources obeying psi_tt = c^2 psi_xx.
double boost_v1_freewave(double v, const Boost& boost, SignConvention convention = SignConvention::paper);

/// v'_I from unprimed second derivatives:
///   -{(1 + V^2/c^2) psi_xt - V (psi_tt / c^2 + psi_xx)} / {(V^2/c^4) psi_tt + psi_xx - (2V/c^2) psi_xt}
/// Singular when |denominator| <= eps * source.denominatorScale(2).
PvSample boost_v1_general(const DerivativeSource& source, double x, double t, const Boost& boost,
                          double eps = kDefaultSingularityEps);

/// The same field seen from the boosted frame. Coordinates are related by
/// x = g (x' - V t'), t = g (t' - V x' / c^2), the map under which v_0 obeys boost_v0
/// and v_I obeys boost_v1_general. partial() takes primed coordinates.
class BoostedSource final : public DerivativeSource {
public:
    BoostedSource(const DerivativeSource& base, const Boost& boost);

    double partial(int orderT, int orderX, double xPrime, double tPrime) const override;
    int maxOrder() const override { return base_.maxOrder(); }
    double denominatorScale(int) const override { return 1.0; }
    bool contains(double xPrime, double tPrime) const override;

    /// Primed coordinates of an unprimed event.
    void toPrimed(double x, double t, double& xPrime, double& tPrime) const noexcept;
    void toUnprimed(double xPrime, double tPrime, double& x, double& t) const noexcept;

private:
    const DerivativeSource& base_;
    Boost boost_;
};

struct BoostConsistency {
    double unprimed = 0.0;       ///< v_0 in the rest frame
    double viaAddition = 0.0;    ///< boost_v0(unprimed)
    double viaTransform = 0.0;   ///< v_0 evaluated on the boosted field
    double difference = 0.0;     ///< |viaAddition - viaTransform|
};

/// Computes the boosted v_0 both ways at the event (x, t). Throws SingularError
/// if v_0 is singular in either frame.
BoostConsistency boost_v0_consistency(const DerivativeSource& source, double x, double t, const Boost& boost,
                                      double eps = kDefaultSingularityEps);

}  // namespace lpv
