#include "frontcap/grid.hpp"

#include <cmath>
#include <string>

#include "frontcap/error.hpp"

namespace frontcap {

namespace {

void require_cells(std::size_t n, std::size_t expected, const char* what) {
    if (n != expected) {
        throw ContractViolation(std::string(what) + ": field has " + std::to_string(n) +
                                " entries, grid has " + std::to_string(expected) + " cells");
    }
}

FaceField average_faces(std::span<const double> rho) {
    const std::size_t n = rho.size();
    FaceField f(n + 1);
    f[0] = rho[0];
    for (std::size_t k = 1; k < n; ++k) f[k] = 0.5 * (rho[k - 1] + rho[k]);
    f[n] = rho[n - 1];
    return f;
}

}  // namespace

Grid1D::Grid1D(double a, double b, std::size_t nx) : a_(a), b_(b), nx_(nx), dx_((b - a) / static_cast<double>(nx)) {
    if (nx < 4) throw ContractViolation("Grid1D: need at least 4 cells");
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) throw ContractViolation("Grid1D: need finite a < b");
}

std::vector<double> Grid1D::centers() const {
    std::vector<double> x(nx_);
    for (std::size_t i = 0; i < nx_; ++i) x[i] = center(i);
    return x;
}

Grid2D::Grid2D(double ax, double bx, std::size_t nx, double ay, double by, std::size_t ny)
    : x_(ax, bx, nx), y_(ay, by, ny) {}

RadialGrid::RadialGrid(double r_max, std::size_t nr) : r_max_(r_max), nr_(nr), dr_(r_max / static_cast<double>(nr)) {
    if (nr < 4) throw ContractViolation("RadialGrid: need at least 4 cells");
    if (!(r_max > 0) || !std::isfinite(r_max)) throw ContractViolation("RadialGrid: need finite r_max > 0");
}

std::vector<double> RadialGrid::centers() const {
    std::vector<double> r(nr_);
    for (std::size_t i = 0; i < nr_; ++i) r[i] = center(i);
    return r;
}

FaceField face_average(const Grid1D& grid, std::span<const double> rho) {
    require_cells(rho.size(), grid.nx(), "face_average");
    return average_faces(rho);
}

FaceField face_average(const RadialGrid& grid, std::span<const double> rho) {
    require_cells(rho.size(), grid.nr(), "face_average");
    return average_faces(rho);
}

HalfGridAverages half_grid_average_2d(const Grid2D& grid, std::span<const double> rho) {
    require_cells(rho.size(), grid.cells(), "half_grid_average_2d");
    const std::size_t nx = grid.nx(), ny = grid.ny();
    HalfGridAverages out;
    out.x_faces.resize((nx - 1) * ny);
    out.y_faces.resize(nx * (ny - 1));
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i)
            out.x_faces[j * (nx - 1) + i] = 0.5 * (rho[grid.index(i, j)] + rho[grid.index(i + 1, j)]);
    for (std::size_t j = 0; j + 1 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            out.y_faces[j * nx + i] = 0.5 * (rho[grid.index(i, j)] + rho[grid.index(i, j + 1)]);
    return out;
}

}  // namespace frontcap
