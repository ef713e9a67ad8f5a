#pragma once

#include <span>
#include <vector>

#include "frontcap/grid.hpp"
#include "frontcap/linsolve.hpp"
#include "frontcap/model.hpp"

namespace frontcap {

/// Quasi-static nutrient concentration; 0 <= c <= c_background holds for
/// every solve without clamping (discrete maximum principle).
struct NutrientField {
    CellField c;
    NutrientModel model = NutrientModel::Vitro;
    double c_background = 1.0;
};

/// mask[i] = rho[i] > threshold: the discrete tumour region.
std::vector<bool> support_mask(std::span<const double> rho, double threshold);

/// In vitro: -c'' + rho c = 0 on the support, c = c_B elsewhere. With
/// VitroBoundary::Face the value c_B is imposed on the face between a
/// support cell and a vacuum cell (second order in the support edge); with
/// Cell the vacuum neighbour enters the 3-point stencil with value c_B.
NutrientField solve_vitro(const Grid1D& grid, std::span<const double> rho, double c_background, double threshold,
                          VitroBoundary boundary = VitroBoundary::Face);
NutrientField solve_vitro(const Grid2D& grid, std::span<const double> rho, double c_background, double threshold,
                          const KrylovConfig& krylov = {}, VitroBoundary boundary = VitroBoundary::Face);

/// In vivo: -c'' + rho c + d chi(vacuum) c = d chi(vacuum) c_B on the whole
/// box with zero-flux outer boundary.
NutrientField solve_vivo(const Grid1D& grid, std::span<const double> rho, double c_background, double threshold,
                         double exchange_rate = 1.0);
NutrientField solve_vivo(const Grid2D& grid, std::span<const double> rho, double c_background, double threshold,
                         double exchange_rate = 1.0, const KrylovConfig& krylov = {});

/// Dispatch on the model tag.
NutrientField solve_nutrient(const Grid1D& grid, std::span<const double> rho, const NutrientGrowth& spec,
                             double threshold);
NutrientField solve_nutrient(const Grid2D& grid, std::span<const double> rho, const NutrientGrowth& spec,
                             double threshold, const KrylovConfig& krylov = {});

}  // namespace frontcap
