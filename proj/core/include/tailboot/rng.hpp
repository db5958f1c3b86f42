/*
   Copyright 2026 the tailboot authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Counter-based pseudo-random generation built on Philox4x32-10.
//
// Salmon et al., SC 2011. Parallel random numbers: as easy as 1, 2, 3.
//   http://www.thesalmons.org/john/random123/papers/random123sc11.pdf
//
// Every generator is addressed by a 64-bit key plus a 64-bit stream id, and
// streams are mutually independent by construction. Deriving a fresh key
// from (key, index) is itself one Philox block, so nested replicate /
// trial / path hierarchies stay reproducible no matter how work is split
// across threads.

#include <array>
#include <cmath>
#include <cstdint>

namespace tailboot {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

/// One Philox4x32-10 block: 128-bit counter, 64-bit key, 128-bit output.
inline std::array<std::uint32_t, 4> philox4x32(
    std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::kPhiloxW0;
            key[1] += detail::kPhiloxW1;
        }
        detail::philox_round(counter, key);
    }
    return counter;
}

/// Hashes (key, index) into a fresh 64-bit key for a sub-generator.
inline std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) noexcept {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
        0x7A11B007u, 0xDE51EEDu};
    const std::array<std::uint32_t, 2> k = {static_cast<std::uint32_t>(key),
                                            static_cast<std::uint32_t>(key >> 32)};
    const auto out = philox4x32(ctr, k);
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

/// Philox-backed uniform random bit generator over one (key, stream) pair.
///
/// Satisfies std::uniform_random_bit_generator; two engines with the same
/// key and different streams produce independent sequences.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t key, std::uint64_t stream = 0) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    result_type operator()() noexcept {
        if (index_ == 0) refill();
        const result_type r = block_[--index_];
        return r;
    }

    /// Uniform on the open interval (0, 1); never returns an exact endpoint,
    /// so logs of the result are always finite.
    double uniform01() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the trigonometric Box-Muller transform
    /// (rejection-free; draws are produced in pairs and cached).
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Exponential with unit rate.
    double exponential() noexcept { return -std::log(uniform01()); }

    /// Uniform index in [0, n) via the 128-bit multiply-shift reduction.
    std::uint64_t below(std::uint64_t n) noexcept {
        const unsigned __int128 wide = static_cast<unsigned __int128>((*this)()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

private:
    void refill() noexcept {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const auto out = philox4x32(ctr, key_);
        block_[1] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        block_[0] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        ++counter_;
        index_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> block_{};
    unsigned index_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace tailboot
