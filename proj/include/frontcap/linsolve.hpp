#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace frontcap {

/// Row i reads lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct TriDiagSystem {
    std::vector<double> lower, diag, upper, rhs;

    explicit TriDiagSystem(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}
    std::size_t size() const noexcept { return diag.size(); }
};

/// Thomas elimination without pivoting. Works for row- or column-diagonally
/// dominant systems. Throws SingularSystem on a zero pivot.
std::vector<double> thomas_solve(const TriDiagSystem& sys);

/// Compressed sparse row matrix plus right-hand side.
struct SparseSystem {
    std::size_t n = 0;
    std::vector<std::int32_t> row_ptr;  // n + 1 entries
    std::vector<std::int32_t> col;      // sorted within each row
    std::vector<double> val;
    std::vector<double> rhs;

    std::size_t nnz() const noexcept { return val.size(); }
    double diagonal(std::size_t row) const;
};

/// y = A x, using the active kernel set.
void matvec(const SparseSystem& a, std::span<const double> x, std::span<double> y);

/// Collects entries row by row; duplicates within a row are summed.
class SparseBuilder {
public:
    explicit SparseBuilder(std::size_t n);

    void add(std::size_t row, std::size_t col, double value);
    void set_rhs(std::size_t row, double value) { rhs_[row] = value; }
    SparseSystem build();

private:
    std::size_t n_;
    std::vector<std::vector<std::pair<std::int32_t, double>>> rows_;
    std::vector<double> rhs_;
};

struct KrylovConfig {
    std::size_t restart = 30;
    std::size_t max_iterations = 2000;
    double tolerance = 1e-10;  // relative residual ||b - Ax|| / ||b||
    bool jacobi = true;

    void validate() const;
};

struct KrylovResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double residual = 0.0;  // final relative residual, recomputed from b - Ax
};

/// Restarted GMRES with right (Jacobi) preconditioning, so the monitored
/// residual is the true residual of the unpreconditioned system.
KrylovResult krylov_solve(const SparseSystem& sys, const KrylovConfig& cfg,
                          std::span<const double> initial_guess = {});

}  // namespace frontcap
