#include "zodps/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zodps {
namespace {

// Philox4x32-10 round constants.
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const std::array<std::uint32_t, 4> next = {
            static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<std::uint32_t>(p0),
        };
        ctr = next;
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

// splitmix64 finalizer; used only to spread SeedSpec fields over the key space.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct KeyMaterial {
    std::uint64_t key;
    std::uint64_t salt;
};

inline KeyMaterial derive_key(const SeedSpec& spec) {
    std::uint64_t s = spec.master_seed;
    auto absorb = [&s](std::uint64_t v) {
        s += 0x9E3779B97F4A7C15ull;
        s = mix64(s ^ v);
    };
    absorb(spec.iteration);
    absorb(spec.particle);
    absorb(spec.substep);
    absorb(static_cast<std::uint64_t>(spec.purpose));
    const std::uint64_t key = s;
    absorb(0x243F6A8885A308D3ull);  // one more turn for the counter salt
    return {key, s};
}

} // namespace

RandomStream::RandomStream(const SeedSpec& spec) {
    const KeyMaterial m = derive_key(spec);
    key_ = {static_cast<std::uint32_t>(m.key), static_cast<std::uint32_t>(m.key >> 32)};
    salt_ = {static_cast<std::uint32_t>(m.salt), static_cast<std::uint32_t>(m.salt >> 32)};
}

void RandomStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        salt_[0],
        salt_[1],
    };
    buf_ = philox4x32(ctr, key_);
    ++block_;
    pos_ = 0;
}

std::uint32_t RandomStream::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void RandomStream::normals(std::span<double> out) {
    for (double& v : out) v = normal();
}

void gaussian_draw(std::span<const double> mean, double std_dev, RandomStream& rs,
                   std::span<double> out) {
    if (mean.size() != out.size())
        throw std::invalid_argument("gaussian_draw: mean/out size mismatch");
    if (!(std_dev >= 0.0))
        throw std::invalid_argument("gaussian_draw: negative or NaN std");
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mean[i] + std_dev * rs.normal();
}

std::vector<double> gaussian_draw(std::span<const double> mean, double std_dev,
                                  const SeedSpec& spec) {
    RandomStream rs(spec);
    std::vector<double> out(mean.size());
    gaussian_draw(mean, std_dev, rs, out);
    return out;
}

std::uint64_t derive_chain_seed(std::uint64_t master_seed, std::uint32_t chain) {
    RandomStream rs(SeedSpec{master_seed, chain, 0, 0, Purpose::chain_split});
    return rs.next_u64();
}

} // namespace zodps
