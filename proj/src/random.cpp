#include "phaselift/random.hpp"

#include <cmath>
#include <numbers>

#include "phaselift/errors.hpp"

namespace phaselift {

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open_zero()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t RandomStream::poisson(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw InvalidInput("poisson: rate must be finite and nonnegative");
    if (rate == 0.0)
        return 0;

    if (rate < 30.0) {
        const double u = uniform();
        double p = std::exp(-rate);
        double cdf = p;
        std::uint64_t k = 0;
        // The cap only matters if rounding keeps the cdf below u.
        while (u > cdf && k < 1000) {
            ++k;
            p *= rate / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

    const double slam = std::sqrt(rate);
    const double loglam = std::log(rate);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -rate + k * loglam - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

} // namespace phaselift
