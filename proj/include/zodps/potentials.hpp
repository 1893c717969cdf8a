#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "zodps/ensemble.hpp"
#include "zodps/exec.hpp"

namespace zodps {

/**
 * Black-box potential f with values in (-inf, +inf].  +inf encodes zero
 * density; NaN is a contract violation.  The sampler only ever calls
 * evaluate_batch, which is data-parallel over the points.
 */
class PotentialOracle {
public:
    virtual ~PotentialOracle() = default;

    virtual int dim() const = 0;

    /// f at a single point (x.size() == dim()).
    virtual double operator()(std::span<const double> x) const = 0;

    /// out[i] = f(points[i*dim .. (i+1)*dim)).
    void evaluate_batch(std::span<const double> points, std::span<double> out,
                        Exec exec = Exec::parallel) const;
};

/// f(x) = ||x||^2 / 2, the standard-normal potential.
class QuadraticPotential : public PotentialOracle {
public:
    explicit QuadraticPotential(int dim) : dim_(dim) {}
    int dim() const override { return dim_; }
    double operator()(std::span<const double> x) const override;

private:
    int dim_;
};

/// f(x) = c everywhere; c = 0 is the flat (Lebesgue) potential.
class ConstantPotential : public PotentialOracle {
public:
    ConstantPotential(int dim, double value) : dim_(dim), value_(value) {}
    int dim() const override { return dim_; }
    double operator()(std::span<const double>) const override { return value_; }

private:
    int dim_;
    double value_;
};

/**
 * Deterministic random orthogonal d x d matrix (row-major), built from
 * Gaussian entries keyed by `seed` followed by modified Gram-Schmidt with a
 * re-orthogonalization pass.  ||U^T U - I||_max stays below 1e-10.
 */
std::vector<double> make_orthogonal(std::uint64_t seed, int dim);

/**
 * Two-component target: an anisotropic Gaussian bump plus a Laplace spike,
 * each carrying mass 1/2:
 *
 *   pi(x) = sqrt(det Q) / (2 sqrt((2 pi)^d)) * exp(-(x-s)' Q (x-s) / 2)
 *         + 2^(d-1) * exp(-lambda * ||x||_1)
 *
 * with Q = U diag(spectrum) U^T, U a seeded random orthogonal basis,
 * shift s = mean_shift * (1,...,1).  The potential is f = -log pi.
 */
class GaussianLassoTarget : public PotentialOracle {
public:
    struct Params {
        int dim = 5;
        std::vector<double> spectrum = {14.0, 15.0, 16.0, 17.0, 18.0};
        std::uint64_t basis_seed = 0xC0FFEE;  // fixed default, echoed in config output
        double mean_shift = 1.0;
        double lasso_scale = 4.0;
    };

    explicit GaussianLassoTarget(Params params);

    int dim() const override { return params_.dim; }
    double operator()(std::span<const double> x) const override;  // -log pi

    double log_density(std::span<const double> x) const;
    double gaussian_component_log(std::span<const double> x) const;
    double laplace_component_log(std::span<const double> x) const;

    const Params& params() const { return params_; }
    const std::vector<double>& basis() const { return basis_; }          // U, row-major
    const std::vector<double>& precision() const { return precision_; }  // Q, row-major

    /// (Q^{-1})_{jj}; the Gaussian component's marginal variance along axis j.
    double covariance_diag(int j) const;

    /**
     * n independent draws from the target itself.  Both mixture components
     * admit closed-form sampling, so each row flips a fair coin and samples
     * the winner directly: the Gaussian through the stored basis and
     * spectrum, the Laplace factor coordinate-wise by inversion.  Unlike a
     * finite Markov chain this cannot under-represent either mode, which
     * makes it the trustworthy yardstick for divergence estimates.  Rows
     * are addressed individually by (seed, row index), so a prefix of a
     * larger request is bitwise-identical to a smaller one.
     */
    Ensemble exact_sample(int n, std::uint64_t seed) const;

private:
    Params params_;
    std::vector<double> basis_;
    std::vector<double> precision_;
    double log_gauss_norm_;    // log of sqrt(det Q) / (2 sqrt((2 pi)^d))
    double log_laplace_norm_;  // (d-1) log 2
};

struct Torus {
    std::array<double, 3> center;
    double major;  // ring radius R
    double minor;  // tube radius r
};

/// Membership in a solid torus whose symmetry axis is parallel to the third
/// coordinate: (sqrt((x1-c1)^2 + (x2-c2)^2) - R)^2 + (x3-c3)^2 <= r^2.
bool torus_member(const Torus& t, std::span<const double> x);

/**
 * Union of two disjoint axis-aligned tori.  Defaults reproduce the benchmark
 * geometry: T1 centered (10,0,0) with R=10, r=1 (its ring passes through the
 * origin), T2 centered (-13,0,0) with R=3, r=1.
 */
class ToriDomain {
public:
    ToriDomain();
    ToriDomain(Torus t1, Torus t2);

    bool member(std::span<const double> x) const;
    bool in_t1(std::span<const double> x) const { return torus_member(t1_, x); }
    bool in_t2(std::span<const double> x) const { return torus_member(t2_, x); }

    const Torus& t1() const { return t1_; }
    const Torus& t2() const { return t2_; }

private:
    Torus t1_, t2_;
};

/// f = 0 inside the union, `penalty` outside (finite so the reverse flow
/// still sees a usable, if tiny, weight on excursions).
class ToriPotential : public PotentialOracle {
public:
    explicit ToriPotential(ToriDomain domain = ToriDomain(), double penalty = 100.0)
        : domain_(std::move(domain)), penalty_(penalty) {}
    int dim() const override { return 3; }
    double operator()(std::span<const double> x) const override {
        return domain_.member(x) ? 0.0 : penalty_;
    }
    const ToriDomain& domain() const { return domain_; }
    double penalty() const { return penalty_; }

private:
    ToriDomain domain_;
    double penalty_;
};

} // namespace zodps
