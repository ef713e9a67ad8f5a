#include "prediction.hpp"

#include <cmath>
#include <sstream>

#include "frontcap/error.hpp"
#include "frontcap/grid.hpp"
#include "frontcap/linsolve.hpp"
#include "frontcap/model.hpp"

namespace frontcap::detail {

std::vector<double> solve_prediction(std::span<const double> rho, std::span<const double> u,
                                     std::span<const double> source, double m, double threshold, double dt, double h,
                                     std::span<const double> face_r, std::span<const double> cell_r) {
    const std::size_t n = rho.size();
    if (u.size() != n + 1 || source.size() != n) throw ContractViolation("prediction: array lengths do not match grid");
    const bool radial = !face_r.empty();

    std::vector<double> rho_face(n + 1);
    rho_face[0] = rho[0];
    for (std::size_t k = 1; k < n; ++k) rho_face[k] = 0.5 * (rho[k - 1] + rho[k]);
    rho_face[n] = rho[n - 1];

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = guarded_pow(rho[i], m - 2.0, threshold);

    const double beta = m * dt / (h * h);
    const double gamma = m * dt / h;
    TriDiagSystem sys(n + 1);
    sys.diag[0] = sys.diag[n] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t L = k - 1, R = k;
        // radial: q_k = r_k rho_k u_k, divided by the cell radius
        const double rk = radial ? face_r[k] : 1.0;
        const double aR = radial ? beta * w[R] / cell_r[R] : beta * w[R];
        const double aL = radial ? beta * w[L] / cell_r[L] : beta * w[L];
        sys.diag[k] = 1.0 + (aR + aL) * rk * rho_face[k];
        if (k + 1 < n) sys.upper[k] = -aR * (radial ? face_r[k + 1] : 1.0) * rho_face[k + 1];
        if (k - 1 > 0) sys.lower[k] = -aL * (radial ? face_r[k - 1] : 1.0) * rho_face[k - 1];
        sys.rhs[k] = u[k] - gamma * (w[R] * source[R] - w[L] * source[L]);
    }
    auto x = thomas_solve(sys);
    x[0] = x[n] = 0.0;
    return x;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void check_growth_condition(std::span<const double> growth, double dt) {
    for (double g : growth) {
        if (!(1.0 - dt * g > 0.0)) {
            std::ostringstream os;
            os << "growth condition 1-G_max*dt>0 violated (G=" << g << ", dt=" << dt << ")";
            throw CflViolation(os.str());
        }
    }
}

std::string describe(const PredictionContext& ctx) {
    std::ostringstream os;
    os << "t=" << ctx.t << ", dt=" << ctx.dt << ", m=" << ctx.m;
    return os.str();
}

}  // namespace frontcap::detail
