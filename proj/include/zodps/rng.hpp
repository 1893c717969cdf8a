#pragma once

/**
 * Counter-based random streams.
 *
 * Every consumer of randomness opens its own stream, addressed by
 * (master_seed, iteration, particle, substep, purpose).  Streams are
 * statistically independent (distinct Philox keys), cheap to construct,
 * and produce the same bits no matter how many threads are running or
 * in which order particles are processed.  That is what makes parallel
 * runs bit-identical to the serial reference.
 */

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace zodps {

// Stream address component naming the role of the randomness.
enum class Purpose : std::uint32_t {
    init_ensemble = 1,    // initial particle positions
    forward_y,            // forward perturbation of the mixture centers
    forward_z,            // forward perturbation initializing the reverse flow
    posterior_component,  // categorical picks of mixture components
    posterior_interim,    // Gaussian interim samples around component means
    euler_noise,          // additive noise of the Euler-Maruyama substep
    rgo_forward,          // proximal forward half-step
    rgo_proposal,         // RGO rejection-sampling proposals
    rgo_accept,           // RGO accept/reject uniforms
    inout_proposal,       // In-and-Out forward proposal
    inout_resample,       // In-and-Out resampling attempts
    orthogonal_matrix,    // entries of the random orthogonal basis
    chain_split,          // deriving per-chain master seeds
    reference_thin,       // reserved: subsampling reference draws
    exact_component,      // mixture-component picks of exact target draws
    exact_draw,           // coordinate noise of exact target draws
};

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint32_t iteration = 0;
    std::uint32_t particle = 0;
    std::uint32_t substep = 0;
    Purpose purpose = Purpose::init_ensemble;
};

/**
 * One addressable stream of uniforms / normals, backed by Philox4x32-10.
 * The key is derived from the SeedSpec; the 128-bit counter just runs.
 */
class RandomStream {
public:
    explicit RandomStream(const SeedSpec& spec);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller (second member of each pair is cached).
    double normal();

    void normals(std::span<double> out);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> salt_;  // upper counter words, also derived
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;  // buffer exhausted
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// out = mean + std * xi with xi fresh i.i.d. standard normals from rs.
/// std == 0 degenerates to a copy of mean (noise is still consumed).
void gaussian_draw(std::span<const double> mean, double std_dev, RandomStream& rs,
                   std::span<double> out);

/// Convenience overload opening a fresh stream for the draw.
std::vector<double> gaussian_draw(std::span<const double> mean, double std_dev,
                                  const SeedSpec& spec);

/// Deterministic per-chain master seed for multi-chain wrappers.
std::uint64_t derive_chain_seed(std::uint64_t master_seed, std::uint32_t chain);

} // namespace zodps
