#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lpv {

/// Uniform (x, t) lattice descriptor.
struct GridGeometry {
    double x0 = 0.0;
    double dx = 1.0;
    int nx = 2;
    double t0 = 0.0;
    double dt = 1.0;
    int nt = 2;

    double x(int i) const noexcept { return x0 + dx * i; }
    double t(int j) const noexcept { return t0 + dt * j; }
    double xEnd() const noexcept { return x(nx - 1); }
    double tEnd() const noexcept { return t(nt - 1); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt); }

    /// Throws ConfigError unless dx, dt > 0 and nx, nt >= 2.
    void validate() const;

    friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// Sampled scalar field psi(x_i, t_j), row-major with t as the slow axis.
/// Every sample carries an `interior` flag; derivative grids clear it where a
/// one-sided stencil was needed so later stages can drop boundary artifacts.
class WaveGrid {
public:
    WaveGrid() = default;
    /// Zero-filled grid, all points interior.
    explicit WaveGrid(const GridGeometry& geometry);
    /// Takes ownership of `values`; throws ConfigError on size mismatch or non-finite entries.
    WaveGrid(const GridGeometry& geometry, std::vector<double> values);

    /// Samples f(x, t) on the lattice.
    static WaveGrid sample(const GridGeometry& geometry, const std::function<double(double, double)>& f);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    int nx() const noexcept { return geometry_.nx; }
    int nt() const noexcept { return geometry_.nt; }

    double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }
    double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }

    bool interior(int i, int j) const noexcept { return interior_[index(i, j)] != 0; }
    void setInterior(int i, int j, bool flag) noexcept { interior_[index(i, j)] = flag ? 1 : 0; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    /// Row of one time level.
    std::span<const double> row(int j) const noexcept {
        return std::span<const double>(values_).subspan(index(0, j), static_cast<size_t>(geometry_.nx));
    }

    double maxAbs(bool interiorOnly = false) const noexcept;

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(geometry_.nx) + static_cast<std::size_t>(i);
    }

private:
    GridGeometry geometry_;
    std::vector<double> values_;
    std::vector<std::uint8_t> interior_;
};

/// A mixed partial request: d^(orderT + orderX) / dt^orderT dx^orderX.
struct DerivativeRequest {
    int orderT = 0;
    int orderX = 0;
    int accuracy = 4;
};

/// Mixed partial of a sampled field. The t-derivative is applied first, then
/// the x-derivative; a point is interior only when both axes used centered stencils.
/// Throws SizingError when the grid cannot hold the stencil.
WaveGrid grid_partial(const WaveGrid& grid, const DerivativeRequest& req);

/// Rounding-noise bound of grid_partial(grid, {0, orderX, accuracy}):
/// 16 * machine epsilon * max|psi| * max stencil weight sum / dx^orderX.
double stencil_noise_floor(const WaveGrid& grid, int orderX, int accuracy);

/// `# wavegrid x0=<f> dx=<f> nx=<d> t0=<f> dt=<f> nt=<d>` then nt rows of nx values.
void write_wavegrid_csv(std::ostream& out, const WaveGrid& grid);
WaveGrid read_wavegrid_csv(std::istream& in);

/// Header line shared by the grid-shaped CSV formats (no trailing newline).
std::string wavegrid_header(const GridGeometry& g);
GridGeometry parse_wavegrid_header(const std::string& line);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace lpv
