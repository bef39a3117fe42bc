#pragma once

#include <span>
#include <vector>

namespace lpv {

/// Finite-difference weights on unit spacing for offsets first, first+1, ...
/// Divide the weighted sum by h^order to get the derivative.
struct Stencil {
    int order = 0;
    int first = 0;
    std::vector<double> weights;

    int size() const noexcept { return static_cast<int>(weights.size()); }
    int last() const noexcept { return first + size() - 1; }
};

/// Solves the moment (Vandermonde) system sum_k w_k s_k^j / j! = delta_{j,order}
/// for the given integer offsets. Uncached.
Stencil solve_stencil(int order, std::span<const int> offsets);

/// Half-width of the centered stencil for derivative `order` at formal accuracy
/// `accuracy` (even, >= 2).
int central_half_width(int order, int accuracy);

/// Number of samples an axis needs for both the centered and the one-sided stencils.
int min_axis_points(int order, int accuracy);

/// Cached stencil for sample `index` of an axis with `n` samples. Interior
/// samples get the centered stencil; near the ends a shifted one-sided window
/// of order+accuracy points keeps the same formal accuracy. `interior` is set
/// to whether the centered stencil was used.
const Stencil& axis_stencil(int order, int accuracy, int index, int n, bool& interior);

}  // namespace lpv
