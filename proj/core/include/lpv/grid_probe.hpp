#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "lpv/derivative_source.hpp"
#include "lpv/wave_grid.hpp"

namespace lpv {

/// Presents a sampled grid as a DerivativeSource. Partial grids are built on
/// first use with grid_partial and read off at arbitrary (x, t) by tensor
/// Lagrange interpolation; lattice nodes return the stored value exactly.
class GridProbe final : public DerivativeSource {
public:
    static constexpr int kDefaultMaxOrder = 8;

    explicit GridProbe(WaveGrid grid, int accuracy = 4, int interpolationPoints = 6,
                       int maxOrder = kDefaultMaxOrder);

    const WaveGrid& grid() const noexcept { return *grid_; }
    int accuracy() const noexcept { return accuracy_; }

    double partial(int orderT, int orderX, double x, double t) const override;
    int maxOrder() const override { return maxOrder_; }
    /// max |d^orderX psi / dx^orderX| over the whole lattice.
    double denominatorScale(int orderX) const override;
    /// stencil_noise_floor of the sampled grid.
    double denominatorFloor(int orderX) const override;
    bool contains(double x, double t) const override;
    bool interior(double x, double t, int totalOrder) const override;

    /// The cached partial grid (built on demand).
    const WaveGrid& partialGrid(int orderT, int orderX) const;

private:
    std::shared_ptr<const WaveGrid> grid_;
    int accuracy_;
    int points_;
    int maxOrder_;
    std::vector<double> floors_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const WaveGrid>> partials_;
    mutable std::map<int, double> scales_;
};

}  // namespace lpv
