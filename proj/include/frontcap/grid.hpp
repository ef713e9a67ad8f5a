#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frontcap {

using CellField = std::vector<double>;
using FaceField = std::vector<double>;

/// Uniform 1D cell-centered grid on [a, b]. Cell i covers
/// [a + i*dx, a + (i+1)*dx]; face k sits at a + k*dx, k = 0..nx.
class Grid1D {
public:
    Grid1D(double a, double b, std::size_t nx);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t faces() const noexcept { return nx_ + 1; }
    double dx() const noexcept { return dx_; }

    double center(std::size_t i) const noexcept { return a_ + (static_cast<double>(i) + 0.5) * dx_; }
    double face(std::size_t k) const noexcept { return a_ + static_cast<double>(k) * dx_; }
    std::vector<double> centers() const;

private:
    double a_, b_;
    std::size_t nx_;
    double dx_;
};

/// Tensor product of two uniform grids; row-major storage, index = j*nx + i.
class Grid2D {
public:
    Grid2D(double ax, double bx, std::size_t nx, double ay, double by, std::size_t ny);
    static Grid2D square(double a, double b, std::size_t n) { return {a, b, n, a, b, n}; }

    const Grid1D& x() const noexcept { return x_; }
    const Grid1D& y() const noexcept { return y_; }
    std::size_t nx() const noexcept { return x_.nx(); }
    std::size_t ny() const noexcept { return y_.nx(); }
    std::size_t cells() const noexcept { return nx() * ny(); }
    double dx() const noexcept { return x_.dx(); }
    double dy() const noexcept { return y_.dx(); }
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx() + i; }

private:
    Grid1D x_, y_;
};

/// Cells on [0, r_max]; the first face is the axis r = 0.
class RadialGrid {
public:
    RadialGrid(double r_max, std::size_t nr);

    double r_max() const noexcept { return r_max_; }
    std::size_t nr() const noexcept { return nr_; }
    std::size_t faces() const noexcept { return nr_ + 1; }
    double dr() const noexcept { return dr_; }
    double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dr_; }
    double face(std::size_t k) const noexcept { return static_cast<double>(k) * dr_; }
    std::vector<double> centers() const;

private:
    double r_max_;
    std::size_t nr_;
    double dr_;
};

/// Face values from cell values: interior faces average their two
/// neighbours, the two boundary faces copy the adjacent cell.
FaceField face_average(const Grid1D& grid, std::span<const double> rho);
FaceField face_average(const RadialGrid& grid, std::span<const double> rho);

struct HalfGridAverages {
    // x_faces(i, j) for i = 0..nx-2 is rho_{i+1/2,j}; stored row-major with
    // (nx-1) entries per row. y_faces(i, j) for j = 0..ny-2 is rho_{i,j+1/2};
    // stored with nx entries per row.
    std::vector<double> x_faces;
    std::vector<double> y_faces;
};

HalfGridAverages half_grid_average_2d(const Grid2D& grid, std::span<const double> rho);

}  // namespace frontcap
