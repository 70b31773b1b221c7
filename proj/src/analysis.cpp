#include "phaselift/analysis.hpp"

#include <cmath>
#include <numbers>

#include "phaselift/errors.hpp"
#include "phaselift/measurement.hpp"
#include "phaselift/random.hpp"

namespace phaselift {

namespace {

void check_unit_interval(double t, const char *who) {
    if (!(t >= 0.0 && t <= 1.0))
        throw InvalidInput(std::string(who) + ": t must lie in [0, 1]");
}

constexpr std::int64_t kSamplesPerStream = 1 << 16;

template <FieldScalar Scalar>
Rip1Report rip1_impl(Index n, Index m, int trials, std::uint64_t seed) {
    const SensingModel model = field_of<Scalar> == Field::real
                                   ? SensingModel::real_gaussian
                                   : SensingModel::complex_gaussian;
    const auto ens = sample_ensemble<Scalar>(n, m, model, seed);
    const double md = static_cast<double>(m);

    // sum_i |<u, z_i>|^2 = u* (Z^T conj(Z)) u, so the extremes over unit u
    // are the extreme eigenvalues of the Gram matrix.
    const Matrix<Scalar> gram = ens.rows().transpose() * ens.conjugate_rows();
    const RealVector sigma2 =
        Eigen::SelfAdjointEigenSolver<Matrix<Scalar>>(gram, Eigen::EigenvaluesOnly)
            .eigenvalues();

    Rip1Report r;
    r.field = field_of<Scalar>;
    r.n = n;
    r.m = m;
    r.trials = trials;
    r.delta_observed =
        std::max({0.0, 1.0 - sigma2.minCoeff() / md, sigma2.maxCoeff() / md - 1.0});

    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < trials; ++k) {
        Vector<Scalar> u =
            gaussian_vector<Scalar>(n, seed, Stream::rank2_samples, 2 * std::uint64_t(k));
        Vector<Scalar> v =
            gaussian_vector<Scalar>(n, seed, Stream::rank2_samples, 2 * std::uint64_t(k) + 1);
        u.normalize();
        v -= u * u.dot(v);
        v.normalize();
        RandomStream rng(seed, Stream::rank2_samples, (1ull << 31) + std::uint64_t(k));
        const double t = rng.uniform();
        // X = u u* - t v v* has eigenvalues 1 and -t, so ||X||_op = 1.
        const RealVector pu = (ens.rows() * u.conjugate()).cwiseAbs2();
        const RealVector pv = (ens.rows() * v.conjugate()).cwiseAbs2();
        const double l1 = (pu - t * pv).cwiseAbs().sum();
        worst = std::min(worst, l1 / md);
    }
    r.rank2_min_ratio = trials > 0 ? worst : 0.0;
    return r;
}

} // namespace

double f_real(double t) {
    check_unit_interval(t, "f_real");
    const double s = std::sqrt(t);
    return (2.0 / std::numbers::pi) *
           (2.0 * s + (1.0 - t) * (std::numbers::pi / 2.0 - 2.0 * std::atan(s)));
}

double f_complex(double t) {
    check_unit_interval(t, "f_complex");
    return (1.0 + t * t) / (1.0 + t);
}

double f_expectation(Field field, double t) {
    return field == Field::real ? f_real(t) : f_complex(t);
}

MonteCarloEstimate monte_carlo_xi(double t, Field field, std::int64_t samples,
                                  std::uint64_t seed) {
    if (!std::isfinite(t))
        throw InvalidInput("monte_carlo_xi: t must be finite");
    if (samples < 1000)
        throw InvalidInput("monte_carlo_xi: need at least 1000 samples");

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t first = 0; first < samples; first += kSamplesPerStream) {
        RandomStream rng(seed, Stream::monte_carlo,
                         static_cast<std::uint64_t>(first / kSamplesPerStream));
        const std::int64_t last = std::min(samples, first + kSamplesPerStream);
        for (std::int64_t k = first; k < last; ++k) {
            double a;
            double b;
            if (field == Field::real) {
                const double z1 = rng.normal();
                const double z2 = rng.normal();
                a = z1 * z1;
                b = z2 * z2;
            } else {
                const double r1 = rng.normal(), i1 = rng.normal();
                const double r2 = rng.normal(), i2 = rng.normal();
                a = 0.5 * (r1 * r1 + i1 * i1);
                b = 0.5 * (r2 * r2 + i2 * i2);
            }
            const double xi = std::abs(a - t * b);
            sum += xi;
            sum_sq += xi * xi;
        }
    }
    const double nd = static_cast<double>(samples);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    return {mean, std::sqrt(var / nd)};
}

Rip1Report rip1_check(Field field, Index n, Index m, int trials, std::uint64_t seed) {
    if (n < 1)
        throw InvalidInput("rip1_check: n must be at least 1");
    if (m < n)
        throw InvalidInput("rip1_check: need m >= n");
    if (trials < 0)
        throw InvalidInput("rip1_check: trials must be nonnegative");
    return field == Field::real ? rip1_impl<double>(n, m, trials, seed)
                                : rip1_impl<Complex>(n, m, trials, seed);
}

} // namespace phaselift
