#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace phaselift {

/// Purpose tags for substream selection. Every random draw in the library
/// is addressed by (seed, purpose, index), so results do not depend on the
/// order in which draws are made.
enum class Stream : std::uint32_t {
    sensing = 1,
    noise = 2,
    signal = 3,
    test_matrices = 4,
    monte_carlo = 5,
    rank2_samples = 6,
    operator_start = 7,
};

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 64-bit seed is the key. The 128-bit counter is laid out as
/// [block_lo, block_hi, purpose, index]: the upper two words select the
/// substream and the lower two count blocks inside it. Each block yields
/// four 32-bit outputs.
class Philox4x32 {
  public:
    using result_type = std::uint32_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, Stream purpose, std::uint64_t index)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          counter_{0, 0, static_cast<std::uint32_t>(purpose),
                   static_cast<std::uint32_t>(index)} {
        // Indices wider than 32 bits fold their high half into the purpose
        // word so distinct indices never collide.
        counter_[2] ^= static_cast<std::uint32_t>(index >> 32) << 8;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        if (used_ == 4) {
            buffer_ = encrypt(counter_, key_);
            if (++counter_[0] == 0)
                ++counter_[1];
            used_ = 0;
        }
        return buffer_[used_++];
    }

    static constexpr Block encrypt(Block ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

  private:
    Key key_;
    Block counter_;
    Block buffer_{};
    int used_ = 4;
};

/// Scalar variates drawn from one Philox substream.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, Stream purpose, std::uint64_t index)
        : engine_(seed, purpose, index) {}

    std::uint64_t next_u64() {
        const std::uint64_t hi = engine_();
        return (hi << 32) | engine_();
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    double uniform_open_zero() { return 1.0 - uniform(); }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// kept for the next call.
    double normal();

    /// Poisson variate. Inversion by sequential search below rate 30,
    /// transformed rejection (PTRS, Hormann 1993) at and above.
    std::uint64_t poisson(double rate);

  private:
    Philox4x32 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace phaselift
