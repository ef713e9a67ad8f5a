#include "frontcap/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frontcap/error.hpp"
#include "frontcap/simd.hpp"

namespace frontcap {

std::vector<double> thomas_solve(const TriDiagSystem& sys) {
    const std::size_t n = sys.size();
    if (sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n)
        throw ContractViolation("thomas_solve: inconsistent array lengths");
    if (n == 0) return {};

    std::vector<double> c(n), d(n), x(n);
    double pivot = sys.diag[0];
    if (pivot == 0.0) throw SingularSystem(0, "thomas_solve: zero pivot at row 0");
    c[0] = sys.upper[0] / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw SingularSystem(i, "thomas_solve: zero pivot at row " + std::to_string(i));
        c[i] = sys.upper[i] / pivot;
        d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

double SparseSystem::diagonal(std::size_t row) const {
    const auto first = col.begin() + row_ptr[row];
    const auto last = col.begin() + row_ptr[row + 1];
    const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(row));
    if (it == last || *it != static_cast<std::int32_t>(row)) return 0.0;
    return val[static_cast<std::size_t>(it - col.begin())];
}

void matvec(const SparseSystem& a, std::span<const double> x, std::span<double> y) {
    if (x.size() != a.n || y.size() != a.n) throw ContractViolation("matvec: dimension mismatch");
    simd::active().csr_matvec(a.n, a.row_ptr.data(), a.col.data(), a.val.data(), x.data(), y.data());
}

SparseBuilder::SparseBuilder(std::size_t n) : n_(n), rows_(n), rhs_(n, 0.0) {
    if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
        throw ContractViolation("SparseBuilder: dimension exceeds 32-bit index range");
}

void SparseBuilder::add(std::size_t row, std::size_t col, double value) {
    if (row >= n_ || col >= n_) throw ContractViolation("SparseBuilder: index out of range");
    rows_[row].emplace_back(static_cast<std::int32_t>(col), value);
}

SparseSystem SparseBuilder::build() {
    SparseSystem s;
    s.n = n_;
    s.row_ptr.assign(n_ + 1, 0);
    for (std::size_t r = 0; r < n_; ++r) {
        auto& row = rows_[r];
        std::stable_sort(row.begin(), row.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0 && row[k].first == s.col.back()) {
                s.val.back() += row[k].second;
            } else {
                s.col.push_back(row[k].first);
                s.val.push_back(row[k].second);
            }
        }
        s.row_ptr[r + 1] = static_cast<std::int32_t>(s.col.size());
    }
    s.rhs = std::move(rhs_);
    rows_.clear();
    return s;
}

void KrylovConfig::validate() const {
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw ContractViolation("KrylovConfig: tolerance must lie in (0,1)");
    if (restart < 5) throw ContractViolation("KrylovConfig: restart must be >= 5");
    if (max_iterations == 0) throw ContractViolation("KrylovConfig: max_iterations must be positive");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

KrylovResult krylov_solve(const SparseSystem& sys, const KrylovConfig& cfg, std::span<const double> initial_guess) {
    cfg.validate();
    const std::size_t n = sys.n;
    if (sys.rhs.size() != n) throw ContractViolation("krylov_solve: rhs length mismatch");
    for (double b : sys.rhs)
        if (!std::isfinite(b)) throw ContractViolation("krylov_solve: non-finite right-hand side");

    KrylovResult res;
    res.x.assign(n, 0.0);
    if (!initial_guess.empty()) {
        if (initial_guess.size() != n) throw ContractViolation("krylov_solve: initial guess length mismatch");
        std::copy(initial_guess.begin(), initial_guess.end(), res.x.begin());
    }

    const double bnorm = norm2(sys.rhs);
    if (bnorm == 0.0) {
        res.x.assign(n, 0.0);
        return res;
    }

    std::vector<double> inv_diag(n, 1.0);
    if (cfg.jacobi) {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = sys.diagonal(i);
            if (d != 0.0) inv_diag[i] = 1.0 / d;
        }
    }

    const std::size_t m = std::min(cfg.restart, n);
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<double> h((m + 1) * m, 0.0);
    auto H = [&](std::size_t i, std::size_t j) -> double& { return h[i * m + j]; };
    std::vector<double> cs(m), sn(m), g(m + 1), y(m), r(n), w(n), z(n);
    std::vector<double> history;
    std::vector<double> best = res.x;
    double best_res = std::numeric_limits<double>::infinity();

    auto residual = [&](const std::vector<double>& x) {
        matvec(sys, x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = sys.rhs[i] - r[i];
        return norm2(r);
    };

    std::size_t iters = 0;
    double rel = residual(res.x) / bnorm;
    history.push_back(rel);
    while (true) {
        if (rel < best_res) {
            best_res = rel;
            best = res.x;
        }
        if (rel <= cfg.tolerance) break;
        if (iters >= cfg.max_iterations) {
            throw ConvergenceFailure("krylov_solve: no convergence after " + std::to_string(iters) +
                                         " iterations, relative residual " + std::to_string(best_res),
                                     best, history);
        }

        const double beta = rel * bnorm;
        for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        std::size_t k = 0;
        for (; k < m && iters < cfg.max_iterations; ++k) {
            ++iters;
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * v[k][i];
            matvec(sys, z, w);
            // modified Gram-Schmidt
            for (std::size_t j = 0; j <= k; ++j) {
                H(j, k) = dot(w, v[j]);
                for (std::size_t i = 0; i < n; ++i) w[i] -= H(j, k) * v[j][i];
            }
            H(k + 1, k) = norm2(w);
            const bool breakdown = H(k + 1, k) <= 1e-300;
            if (!breakdown)
                for (std::size_t i = 0; i < n; ++i) v[k + 1][i] = w[i] / H(k + 1, k);

            for (std::size_t j = 0; j < k; ++j) {
                const double t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
                H(j + 1, k) = -sn[j] * H(j, k) + cs[j] * H(j + 1, k);
                H(j, k) = t;
            }
            const double denom = std::hypot(H(k, k), H(k + 1, k));
            cs[k] = denom == 0.0 ? 1.0 : H(k, k) / denom;
            sn[k] = denom == 0.0 ? 0.0 : H(k + 1, k) / denom;
            H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
            H(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];

            const double est = std::abs(g[k + 1]) / bnorm;
            history.push_back(est);
            if (est <= cfg.tolerance || breakdown) {
                ++k;
                break;
            }
        }

        // back substitution for the k x k upper triangle
        for (std::size_t i = k; i-- > 0;) {
            double s = g[i];
            for (std::size_t j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
            y[i] = H(i, i) == 0.0 ? 0.0 : s / H(i, i);
        }
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) z[i] += y[j] * v[j][i];
        for (std::size_t i = 0; i < n; ++i) res.x[i] += inv_diag[i] * z[i];

        rel = residual(res.x) / bnorm;
        history.back() = rel;
    }

    res.iterations = iters;
    res.residual = rel;
    return res;
}

}  // namespace frontcap
