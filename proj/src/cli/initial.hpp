#pragma once

#include "cli/config.hpp"
#include "frontcap/grid.hpp"

namespace frontcap::cli {

CellField initial_density_1d(const RunConfig& rc, const Grid1D& grid);
CellField initial_density_2d(const RunConfig& rc, const Grid2D& grid);
CellField initial_density_radial(const RunConfig& rc, const RadialGrid& grid);

/// Proliferating cells (1 - cosh x / cosh R0) on [-R0, R0]; no Q or D cells.
CellField initial_proliferating(const RunConfig& rc, const Grid1D& grid);

/// rho = ((m-1)/m p)^(1/(m-1)): the density whose pressure is p.
double density_from_pressure(double p, double m);

}  // namespace frontcap::cli
