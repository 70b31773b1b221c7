#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "phaselift/random.hpp"

using phaselift::Philox4x32;
using phaselift::RandomStream;
using phaselift::Stream;

TEST_CASE("philox known-answer vectors") {
    // Reference outputs published with the Random123 distribution.
    using B = Philox4x32::Block;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}) ==
          B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::encrypt(B{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              K{0xffffffffu, 0xffffffffu}) ==
          B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::encrypt(B{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              K{0xa4093822u, 0x299f31d0u}) ==
          B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("substreams are reproducible and distinct") {
    RandomStream a(42, Stream::sensing, 3), b(42, Stream::sensing, 3);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());

    std::set<std::uint64_t> first;
    for (std::uint64_t idx = 0; idx < 64; ++idx)
        first.insert(RandomStream(42, Stream::sensing, idx).next_u64());
    first.insert(RandomStream(42, Stream::noise, 0).next_u64());
    first.insert(RandomStream(43, Stream::sensing, 0).next_u64());
    first.insert(RandomStream(42, Stream::sensing, std::uint64_t(1) << 32).next_u64());
    CHECK(first.size() == 67);
}

TEST_CASE("uniform and normal moments") {
    RandomStream rng(7, Stream::monte_carlo, 0);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(rng.uniform_open_zero() > 0.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sn / n) < 5 / std::sqrt(double(n)));
    CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("poisson sampler matches mean and variance across both regimes") {
    for (double rate : {0.0, 0.3, 4.0, 29.5, 30.0, 75.0, 1e4}) {
        CAPTURE(rate);
        RandomStream rng(11, Stream::noise, static_cast<std::uint64_t>(rate * 10));
        const int n = 100000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double k = static_cast<double>(rng.poisson(rate));
            s += k;
            s2 += k * k;
        }
        const double mean = s / n;
        const double var = s2 / n - mean * mean;
        if (rate == 0.0) {
            CHECK(s == 0.0);
            continue;
        }
        CHECK(std::abs(mean - rate) < 5 * std::sqrt(rate / n));
        // Var of the sample variance is about (rate + 2 rate^2) / n.
        CHECK(std::abs(var - rate) < 5 * std::sqrt((rate + 2 * rate * rate) / n));
    }
}

TEST_CASE("poisson pmf goodness of fit at rate 45") {
    // Chi-square against the exact pmf over bins [25, 65] plus tails.
    const double rate = 45.0;
    const int n = 200000;
    RandomStream rng(5, Stream::noise, 99);
    std::vector<double> counts(42, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<long>(rng.poisson(rate));
        counts[static_cast<std::size_t>(std::clamp(k - 24, 0L, 41L))] += 1;
    }
    std::vector<double> probs(42, 0.0);
    double cdf_lo = 0;
    for (long k = 0; k <= 24; ++k)
        cdf_lo += std::exp(k * std::log(rate) - rate - std::lgamma(k + 1.0));
    probs[0] = cdf_lo;
    double total = cdf_lo;
    for (long k = 25; k <= 64; ++k) {
        probs[static_cast<std::size_t>(k - 24)] =
            std::exp(k * std::log(rate) - rate - std::lgamma(k + 1.0));
        total += probs[static_cast<std::size_t>(k - 24)];
    }
    probs[41] = 1.0 - total;
    double chi2 = 0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        const double e = probs[b] * n;
        chi2 += (counts[b] - e) * (counts[b] - e) / e;
    }
    // 41 degrees of freedom; the 0.999 quantile is about 74.7.
    CHECK(chi2 < 74.7);
}
