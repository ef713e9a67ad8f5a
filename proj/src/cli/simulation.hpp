#pragma once

#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "cli/config.hpp"
#include "frontcap/diagnostics.hpp"

namespace frontcap::cli {

/// Uniform face over the four steppers, as needed by the batch driver.
class Simulation {
public:
    virtual ~Simulation() = default;

    virtual std::unique_ptr<Simulation> clone() const = 0;
    virtual double t() const = 0;
    virtual double last_dt() const = 0;
    virtual void advance(double dt_cap) = 0;

    /// Total density; row-major in 2D.
    virtual std::span<const double> density() const = 0;
    /// Cell centres (1D, radial, pqd); empty in 2D.
    virtual std::vector<double> coordinates() const = 0;
    virtual double spacing() const = 0;

    virtual SeriesRecord record() const = 0;
    /// CSV with header; full precision.
    virtual void write_snapshot(std::ostream& os) const = 0;
    /// True when the outermost cells carry mass.
    virtual bool touches_boundary(double threshold) const = 0;
    /// Extra invariants beyond finiteness and positivity; throws.
    virtual void check_invariants() const {}
};

std::unique_ptr<Simulation> make_simulation(const RunConfig& rc);

/// "%.17g"
std::string fmt(double v);

}  // namespace frontcap::cli
