#include "lpv/catalog.hpp"

#include <cmath>

#include "lpv/errors.hpp"

namespace lpv {

AnalyticWave free_wave(const Shape& shape, double a, int direction) {
    return AnalyticWave(shape, Translational{a, direction});
}

AnalyticWave damped_wave(const Shape& shape, double a, double lambda) {
    return AnalyticWave(shape, DampedTranslational{a, lambda});
}

AnalyticWave inhom_mode(const Shape& shape, double xi, const MediumProfile& profile) {
    return AnalyticWave(shape, InhomogeneousMode{xi, std::make_shared<const MediumProfile>(profile)});
}

WaveGrid pde_residual(const WaveGrid& grid, const Equation& equation, int accuracy) {
    const WaveGrid psiTT = grid_partial(grid, {2, 0, accuracy});
    const WaveGrid psiXX = grid_partial(grid, {0, 2, accuracy});
    const auto& g = grid.geometry();
    WaveGrid out(g);

    auto fill = [&](auto&& term, std::initializer_list<const WaveGrid*> used) {
        for (int j = 0; j < g.nt; ++j)
            for (int i = 0; i < g.nx; ++i) {
                out(i, j) = term(i, j);
                bool inner = true;
                for (const WaveGrid* w : used) inner = inner && w->interior(i, j);
                out.setInterior(i, j, inner);
            }
    };

    if (const auto* eq = std::get_if<FreeEquation>(&equation)) {
        const double ia2 = 1.0 / (eq->a * eq->a);
        fill([&](int i, int j) { return ia2 * psiTT(i, j) - psiXX(i, j); }, {&psiTT, &psiXX});
    } else if (const auto* eq = std::get_if<DampedEquation>(&equation)) {
        const WaveGrid psiT = grid_partial(grid, {1, 0, accuracy});
        const double ia2 = 1.0 / (eq->a * eq->a);
        const double lam = eq->lambda;
        fill([&](int i, int j) {
                 return ia2 * psiTT(i, j) - psiXX(i, j) + 2.0 * lam * ia2 * psiT(i, j) + lam * lam * ia2 * grid(i, j);
             },
             {&psiTT, &psiXX, &psiT});
    } else {
        const auto& me = std::get<MediumEquation>(equation);
        if (!me.medium) throw ConfigError("pde_residual: medium equation without profile");
        const WaveGrid psiX = grid_partial(grid, {0, 1, accuracy});
        const auto& m = *me.medium;
        std::vector<double> n2c2(static_cast<size_t>(g.nx)), logd(static_cast<size_t>(g.nx));
        for (int i = 0; i < g.nx; ++i) {
            const double n = m.n(g.x(i));
            n2c2[static_cast<size_t>(i)] = n * n / (m.c() * m.c());
            logd[static_cast<size_t>(i)] = m.logDerivative(g.x(i));
        }
        fill([&](int i, int j) {
                 return n2c2[static_cast<size_t>(i)] * psiTT(i, j) - psiXX(i, j) + logd[static_cast<size_t>(i)] * psiX(i, j);
             },
             {&psiTT, &psiXX, &psiX});
    }
    return out;
}

double residual_norm(const WaveGrid& residual) { return residual.maxAbs(true); }

PvSample medium_pv(const MediumProfile& profile, const ModeSpec& mode, const Shape& shape, int order, double x,
                   double phi, double eps, SecondOrderForm form) {
    if (order < 0) throw PreconditionError("medium_pv: negative order");
    if (order > 2)
        throw CapabilityError("medium_pv: closed forms exist for orders 0..2; evaluate order " + std::to_string(order) +
                              " with pv_point on inhom_mode");
    if (!(mode.xi != 0.0)) throw PreconditionError("medium_pv: xi must be nonzero");
    const double c = profile.c();
    const double n = profile.n(x);
    if (!(n > 0.0)) throw PreconditionError("medium_pv: n(x) must be positive");
    if (order == 0) return PvSample::ok(c / n);

    const auto d = shape.derivatives(phi, order + 1);
    const double lnd = profile.logDerivative(x);
    const double cx = c / mode.xi;
    if (!(std::fabs(d[static_cast<size_t>(order + 1)]) > eps)) return PvSample::singular();

    if (order == 1) {
        const double den = n - cx * (d[1] / d[2]) * lnd;
        if (!(std::fabs(den) > eps)) return PvSample::singular();
        return PvSample::ok(c / den);
    }
    const double n2 = profile.derivative(x, 2);
    const double r2 = d[2] / d[3];
    const double den = n - 3.0 * cx * r2 * lnd + cx * cx * (n2 / (n * n)) * (d[1] / d[3]);
    if (!(std::fabs(den) > eps)) return PvSample::singular();
    double v = c / den;
    if (form == SecondOrderForm::chainRule) v *= 1.0 - cx * (lnd / n) * r2;
    return PvSample::ok(v);
}

}  // namespace lpv
