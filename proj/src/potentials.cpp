#include "zodps/potentials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zodps/rng.hpp"

namespace zodps {

void PotentialOracle::evaluate_batch(std::span<const double> points, std::span<double> out,
                                     Exec exec) const {
    const int d = dim();
    const long count = static_cast<long>(out.size());
    if (points.size() != out.size() * static_cast<std::size_t>(d))
        throw std::invalid_argument("evaluate_batch: points/out size mismatch");
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                (*this)(points.subspan(static_cast<std::size_t>(i) * d,
                                       static_cast<std::size_t>(d)));
    } else {
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                (*this)(points.subspan(static_cast<std::size_t>(i) * d,
                                       static_cast<std::size_t>(d)));
    }
}

double QuadraticPotential::operator()(std::span<const double> x) const {
    double s = 0.0;
    for (double v : x) s += v * v;
    return 0.5 * s;
}

std::vector<double> make_orthogonal(std::uint64_t seed, int dim) {
    if (dim < 1) throw std::invalid_argument("make_orthogonal: dim must be >= 1");
    const std::size_t d = static_cast<std::size_t>(dim);
    RandomStream rs(SeedSpec{seed, 0, 0, 0, Purpose::orthogonal_matrix});
    std::vector<double> u(d * d);
    for (double& v : u) v = rs.normal();

    // Modified Gram-Schmidt over columns, one re-orthogonalization pass each.
    auto col_dot = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += u[i * d + a] * u[i * d + b];
        return s;
    };
    for (std::size_t j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const double proj = col_dot(k, j);
                for (std::size_t i = 0; i < d; ++i) u[i * d + j] -= proj * u[i * d + k];
            }
        }
        double norm = std::sqrt(col_dot(j, j));
        while (norm < 1e-8) {
            // Vanishingly unlikely near-dependence; redraw the column.
            for (std::size_t i = 0; i < d; ++i) u[i * d + j] = rs.normal();
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    const double proj = col_dot(k, j);
                    for (std::size_t i = 0; i < d; ++i) u[i * d + j] -= proj * u[i * d + k];
                }
            norm = std::sqrt(col_dot(j, j));
        }
        for (std::size_t i = 0; i < d; ++i) u[i * d + j] /= norm;
    }
    return u;
}

GaussianLassoTarget::GaussianLassoTarget(Params params) : params_(std::move(params)) {
    const int d = params_.dim;
    if (d < 1) throw std::invalid_argument("GaussianLassoTarget: dim must be >= 1");
    if (static_cast<int>(params_.spectrum.size()) != d)
        throw std::invalid_argument("GaussianLassoTarget: spectrum size must equal dim");
    for (double s : params_.spectrum)
        if (!(s > 0.0))
            throw std::invalid_argument("GaussianLassoTarget: spectrum must be positive");
    if (!(params_.lasso_scale > 0.0))
        throw std::invalid_argument("GaussianLassoTarget: lasso_scale must be positive");

    basis_ = make_orthogonal(params_.basis_seed, d);
    // Q = U diag(spectrum) U^T
    const std::size_t dd = static_cast<std::size_t>(d);
    precision_.assign(dd * dd, 0.0);
    for (std::size_t i = 0; i < dd; ++i)
        for (std::size_t j = 0; j < dd; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < dd; ++k)
                s += basis_[i * dd + k] * params_.spectrum[k] * basis_[j * dd + k];
            precision_[i * dd + j] = s;
        }

    double log_det = 0.0;
    for (double s : params_.spectrum) log_det += std::log(s);
    log_gauss_norm_ = 0.5 * log_det - std::log(2.0) -
                      0.5 * d * std::log(2.0 * std::numbers::pi);
    log_laplace_norm_ = (d - 1) * std::log(2.0);
}

double GaussianLassoTarget::gaussian_component_log(std::span<const double> x) const {
    const std::size_t d = static_cast<std::size_t>(params_.dim);
    // (x - s)' Q (x - s) via one matvec; d <= a handful, so no BLAS.
    double quad = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            row += precision_[i * d + j] * (x[j] - params_.mean_shift);
        quad += (x[i] - params_.mean_shift) * row;
    }
    return log_gauss_norm_ - 0.5 * quad;
}

double GaussianLassoTarget::laplace_component_log(std::span<const double> x) const {
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    return log_laplace_norm_ - params_.lasso_scale * l1;
}

double GaussianLassoTarget::log_density(std::span<const double> x) const {
    const double a = gaussian_component_log(x);
    const double b = laplace_component_log(x);
    // Two-term logsumexp, max-shifted.
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double GaussianLassoTarget::operator()(std::span<const double> x) const {
    return -log_density(x);
}

double GaussianLassoTarget::covariance_diag(int j) const {
    const std::size_t d = static_cast<std::size_t>(params_.dim);
    const std::size_t row = static_cast<std::size_t>(j);
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double u = basis_[row * d + k];
        s += u * u / params_.spectrum[k];
    }
    return s;
}

Ensemble GaussianLassoTarget::exact_sample(int n, std::uint64_t seed) const {
    if (n < 0) throw std::invalid_argument("exact_sample: negative sample count");
    const int d = params_.dim;
    const auto sd = static_cast<std::size_t>(d);
    Ensemble out(n, d);
    std::vector<double> xi(sd);
    for (int i = 0; i < n; ++i) {
        const auto row_id = static_cast<std::uint32_t>(i);
        RandomStream pick(SeedSpec{seed, 0, row_id, 0, Purpose::exact_component});
        RandomStream draw(SeedSpec{seed, 0, row_id, 0, Purpose::exact_draw});
        double* row = out.row(i);
        if (pick.uniform() < 0.5) {
            // x = shift + U diag(spectrum)^{-1/2} xi has precision U diag U^T.
            draw.normals(xi);
            for (std::size_t j = 0; j < sd; ++j) {
                double acc = params_.mean_shift;
                for (std::size_t k = 0; k < sd; ++k)
                    acc += basis_[j * sd + k] * xi[k] / std::sqrt(params_.spectrum[k]);
                row[j] = acc;
            }
        } else {
            for (std::size_t j = 0; j < sd; ++j) {
                const double sign = draw.uniform() < 0.5 ? -1.0 : 1.0;
                const double mag = -std::log1p(-draw.uniform()) / params_.lasso_scale;
                row[j] = sign * mag;
            }
        }
    }
    return out;
}

bool torus_member(const Torus& t, std::span<const double> x) {
    const double dx = x[0] - t.center[0];
    const double dy = x[1] - t.center[1];
    const double dz = x[2] - t.center[2];
    const double radial = std::sqrt(dx * dx + dy * dy) - t.major;
    return radial * radial + dz * dz <= t.minor * t.minor;
}

ToriDomain::ToriDomain()
    : t1_{{{10.0, 0.0, 0.0}}, 10.0, 1.0}, t2_{{{-13.0, 0.0, 0.0}}, 3.0, 1.0} {}

ToriDomain::ToriDomain(Torus t1, Torus t2) : t1_(t1), t2_(t2) {
    for (const Torus* t : {&t1_, &t2_})
        if (!(t->major > 0.0) || !(t->minor > 0.0) || t->minor >= t->major)
            throw std::invalid_argument("ToriDomain: need 0 < minor < major");
}

bool ToriDomain::member(std::span<const double> x) const {
    return torus_member(t1_, x) || torus_member(t2_, x);
}

} // namespace zodps
