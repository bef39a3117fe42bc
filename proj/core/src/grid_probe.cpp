#include "lpv/grid_probe.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lpv/errors.hpp"
#include "lpv/stencil.hpp"

namespace lpv {

namespace {

constexpr int kMaxInterpolationPoints = 12;

struct AxisWeights {
    int start = 0;
    int count = 0;
    std::array<double, kMaxInterpolationPoints> w{};
};

// Lagrange weights on the `points` samples nearest to fractional index s.
AxisWeights axis_weights(double s, int n, int points) {
    AxisWeights aw;
    const double nearest = std::round(s);
    if (std::fabs(s - nearest) < 1e-10 && nearest >= 0 && nearest <= n - 1) {
        aw.start = static_cast<int>(nearest);
        aw.count = 1;
        aw.w[0] = 1.0;
        return aw;
    }
    aw.count = std::min(points, n);
    aw.start = std::clamp(static_cast<int>(std::floor(s)) - aw.count / 2 + 1, 0, n - aw.count);
    for (int a = 0; a < aw.count; ++a) {
        double w = 1.0;
        const double xa = aw.start + a;
        for (int b = 0; b < aw.count; ++b)
            if (b != a) w *= (s - (aw.start + b)) / (xa - (aw.start + b));
        aw.w[static_cast<size_t>(a)] = w;
    }
    return aw;
}

}  // namespace

GridProbe::GridProbe(WaveGrid grid, int accuracy, int interpolationPoints, int maxOrder)
    : grid_(std::make_shared<const WaveGrid>(std::move(grid))),
      accuracy_(accuracy),
      points_(interpolationPoints),
      maxOrder_(maxOrder) {
    if (points_ < 2 || points_ > kMaxInterpolationPoints)
        throw ConfigError("grid probe: interpolation points must be in [2, 12]");
    central_half_width(1, accuracy_);  // validates accuracy
    for (int m = 0; m <= maxOrder_; ++m) floors_.push_back(stencil_noise_floor(*grid_, m, accuracy_));
}

const WaveGrid& GridProbe::partialGrid(int orderT, int orderX) const {
    if (orderT + orderX > maxOrder_)
        throw CapabilityError("grid probe provides mixed partials up to total order " + std::to_string(maxOrder_) +
                              ", requested " + std::to_string(orderT + orderX));
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(orderT, orderX);
    auto it = partials_.find(key);
    if (it == partials_.end()) {
        auto g = std::make_shared<const WaveGrid>(grid_partial(*grid_, DerivativeRequest{orderT, orderX, accuracy_}));
        it = partials_.emplace(key, std::move(g)).first;
    }
    return *it->second;
}

double GridProbe::partial(int orderT, int orderX, double x, double t) const {
    const WaveGrid& g = partialGrid(orderT, orderX);
    const auto& geo = g.geometry();
    if (!contains(x, t)) throw PreconditionError("grid probe: point outside the lattice");
    const AxisWeights wx = axis_weights((x - geo.x0) / geo.dx, geo.nx, points_);
    const AxisWeights wt = axis_weights((t - geo.t0) / geo.dt, geo.nt, points_);
    double sum = 0.0;
    for (int b = 0; b < wt.count; ++b) {
        double rowSum = 0.0;
        for (int a = 0; a < wx.count; ++a) rowSum += wx.w[static_cast<size_t>(a)] * g(wx.start + a, wt.start + b);
        sum += wt.w[static_cast<size_t>(b)] * rowSum;
    }
    return sum;
}

double GridProbe::denominatorScale(int orderX) const {
    {
        std::lock_guard lock(mutex_);
        if (auto it = scales_.find(orderX); it != scales_.end()) return it->second;
    }
    const double scale = partialGrid(0, orderX).maxAbs();
    std::lock_guard lock(mutex_);
    scales_.emplace(orderX, scale);
    return scale;
}

double GridProbe::denominatorFloor(int orderX) const {
    return orderX >= 0 && orderX <= maxOrder_ ? floors_[static_cast<size_t>(orderX)] : 0.0;
}

bool GridProbe::contains(double x, double t) const {
    const auto& geo = grid_->geometry();
    const double tolX = 1e-12 * geo.dx, tolT = 1e-12 * geo.dt;
    return x >= geo.x0 - tolX && x <= geo.xEnd() + tolX && t >= geo.t0 - tolT && t <= geo.tEnd() + tolT;
}

bool GridProbe::interior(double x, double t, int totalOrder) const {
    if (!contains(x, t)) return false;
    const auto& geo = grid_->geometry();
    const int r = central_half_width(std::max(totalOrder, 1), accuracy_);
    const AxisWeights wx = axis_weights((x - geo.x0) / geo.dx, geo.nx, points_);
    const AxisWeights wt = axis_weights((t - geo.t0) / geo.dt, geo.nt, points_);
    return wx.start >= r && wx.start + wx.count - 1 <= geo.nx - 1 - r && wt.start >= r &&
           wt.start + wt.count - 1 <= geo.nt - 1 - r;
}

}  // namespace lpv
