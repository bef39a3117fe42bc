#include "lpv/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "lpv/errors.hpp"

namespace lpv {

Stencil solve_stencil(int order, std::span<const int> offsets) {
    const int n = static_cast<int>(offsets.size());
    if (order < 0) throw PreconditionError("stencil: negative derivative order");
    if (n <= order) throw PreconditionError("stencil: need more than `order` offsets");

    // Row j: s_k^j / j!; right-hand side is the unit vector at `order`.
    // Long double keeps the wide stencils used at high order well conditioned enough.
    std::vector<long double> a(static_cast<size_t>(n * n));
    std::vector<long double> rhs(static_cast<size_t>(n), 0.0L);
    rhs[static_cast<size_t>(order)] = 1.0L;
    for (int k = 0; k < n; ++k) {
        long double term = 1.0L;
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(j * n + k)] = term;
            term *= static_cast<long double>(offsets[static_cast<size_t>(k)]) / (j + 1);
        }
    }

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[static_cast<size_t>(r * n + col)]) > std::fabs(a[static_cast<size_t>(pivot * n + col)]))
                pivot = r;
        if (a[static_cast<size_t>(pivot * n + col)] == 0.0L)
            throw PreconditionError("stencil: offsets must be distinct");
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(col * n + c)], a[static_cast<size_t>(pivot * n + c)]);
            std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const long double f = a[static_cast<size_t>(r * n + col)] / a[static_cast<size_t>(col * n + col)];
            if (f == 0.0L) continue;
            for (int c = col; c < n; ++c) a[static_cast<size_t>(r * n + c)] -= f * a[static_cast<size_t>(col * n + c)];
            rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
        }
    }
    std::vector<long double> x(static_cast<size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        long double s = rhs[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c) s -= a[static_cast<size_t>(r * n + c)] * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r * n + r)];
    }

    Stencil st;
    st.order = order;
    st.first = offsets.front();
    st.weights.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) st.weights[static_cast<size_t>(k)] = static_cast<double>(x[static_cast<size_t>(k)]);
    return st;
}

int central_half_width(int order, int accuracy) {
    if (order < 0) throw PreconditionError("stencil: negative derivative order");
    if (accuracy < 2 || accuracy % 2 != 0) throw PreconditionError("stencil: accuracy must be an even integer >= 2");
    if (order == 0) return 0;
    return (order + 1) / 2 - 1 + accuracy / 2;
}

int min_axis_points(int order, int accuracy) {
    const int centered = 2 * central_half_width(order, accuracy) + 1;
    return order == 0 ? centered : std::max(centered, order + accuracy);
}

namespace {

struct StencilCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, Stencil> entries;  // (order, first, size)
};

StencilCache& cache() {
    static StencilCache instance;
    return instance;
}

const Stencil& cached(int order, int first, int size) {
    auto& c = cache();
    std::lock_guard lock(c.mutex);
    const auto key = std::make_tuple(order, first, size);
    if (auto it = c.entries.find(key); it != c.entries.end()) return it->second;
    std::vector<int> offsets(static_cast<size_t>(size));
    for (int k = 0; k < size; ++k) offsets[static_cast<size_t>(k)] = first + k;
    return c.entries.emplace(key, solve_stencil(order, offsets)).first->second;
}

}  // namespace

const Stencil& axis_stencil(int order, int accuracy, int index, int n, bool& interior) {
    const int r = central_half_width(order, accuracy);
    if (n < min_axis_points(order, accuracy)) throw PreconditionError("stencil: axis shorter than the stencil");
    if (index - r >= 0 && index + r <= n - 1) {
        interior = true;
        return cached(order, -r, 2 * r + 1);
    }
    interior = false;
    const int width = order + accuracy;
    const int start = std::clamp(index - width / 2, 0, n - width);
    return cached(order, start - index, width);
}

}  // namespace lpv
