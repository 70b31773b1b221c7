#pragma once

#include <cstdint>

#include "phaselift/config.hpp"
#include "phaselift/hermitian.hpp"

namespace phaselift {

/// E |Z1^2 - t Z2^2| for independent real standard normals:
/// (2/pi) (2 sqrt(t) + (1 - t)(pi/2 - 2 arctan(sqrt(t)))), t in [0, 1].
double f_real(double t);

/// E ||Z1|^2 - t |Z2|^2| for independent circular complex normals with
/// E|Z|^2 = 1: (1 + t^2) / (1 + t), t in [0, 1].
double f_complex(double t);

/// Dispatches on field.
double f_expectation(Field field, double t);

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Sample mean and standard error of xi = |Z1^2 - t Z2^2| (real) or
/// ||Z1|^2 - t |Z2|^2| (complex) over `samples` draws.
MonteCarloEstimate monte_carlo_xi(double t, Field field, std::int64_t samples,
                                  std::uint64_t seed);

struct Rip1Report {
    /// max(1 - sigma_min(Z)^2 / m, sigma_max(Z)^2 / m - 1): the worst
    /// deviation of m^-1 ||A(u u*)||_1 from 1 over all unit u.
    double delta_observed = 0.0;
    /// min over sampled X = u u* - t v v* of m^-1 ||A(X)||_1 / ||X||_op.
    double rank2_min_ratio = 0.0;
    int trials = 0;
    Field field = Field::real;
    Index n = 0;
    Index m = 0;
};

/// Empirical l1-isometry statistics of a fresh Gaussian m x n ensemble.
/// Throws InvalidInput when m < n.
Rip1Report rip1_check(Field field, Index n, Index m, int trials, std::uint64_t seed);

} // namespace phaselift
