#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "phaselift/certificate.hpp"
#include "phaselift/errors.hpp"
#include "phaselift/log.hpp"
#include "support.hpp"

using namespace phaselift;
using testing_support::Gen;
using testing_support::median;

namespace {

template <typename S>
SensingModel gaussian_model() {
    return std::is_same_v<S, double> ? SensingModel::real_gaussian
                                     : SensingModel::complex_gaussian;
}

struct QuietWarnings {
    QuietWarnings() { set_warning_sink([](std::string_view) {}); }
    ~QuietWarnings() { set_warning_sink(nullptr); }
};

} // namespace

TEST_CASE_TEMPLATE("S operator examples", S, double, Complex) {
    const Index n = 5;
    const SOperator<S> op(n);
    const bool real = std::is_same_v<S, double>;
    const auto id = HermitianMatrix<S>::identity(n);
    CHECK((s_apply(op, id) - (real ? n + 2.0 : n + 1.0) * id).frobenius_norm() <= 1e-12);

    Gen g(41);
    const auto h = g.hermitian<S>(n);
    const auto traceless = h - (h.trace() / n) * id;
    CHECK((s_apply(op, traceless) - (real ? 2.0 : 1.0) * traceless).frobenius_norm() <= 1e-12);
    CHECK((s_inverse(op, traceless) - (real ? 0.5 : 1.0) * traceless).frobenius_norm() <= 1e-12);

    if constexpr (std::is_same_v<S, double>) {
        const auto e = HermitianMatrix<S>::outer(Signal<S>::basis(n, 0));
        const auto expected = 0.5 * (e - (1.0 / (n + 2.0)) * id);
        CHECK((s_inverse(op, e) - expected).frobenius_norm() <= 1e-15);
    }

    CHECK_THROWS_AS(SOperator<S>(0), InvalidInput);
    CHECK_THROWS_AS(op.apply(HermitianMatrix<S>::identity(4)), DimensionMismatch);
}

TEST_CASE_TEMPLATE("S and its inverse are mutual inverses and self-adjoint", S, double, Complex) {
    Gen g(42);
    for (int k = 0; k < 50; ++k) {
        const Index n = 1 + k % 6;
        const SOperator<S> op(n);
        const auto x = g.hermitian<S>(n), y = g.hermitian<S>(n);
        CHECK((s_inverse(op, s_apply(op, x)) - x).frobenius_norm() <= 1e-12 * std::max(1.0, x.frobenius_norm()));
        CHECK((s_apply(op, s_inverse(op, x)) - x).frobenius_norm() <= 1e-12 * std::max(1.0, x.frobenius_norm()));
        const double scale = 1.0 + x.frobenius_norm() * y.frobenius_norm();
        CHECK(std::abs(inner(s_apply(op, x), y) - inner(x, s_apply(op, y))) <= 1e-12 * scale);
        CHECK(std::abs(inner(s_inverse(op, x), y) - inner(x, s_inverse(op, y))) <= 1e-12 * scale);
    }
}

TEST_CASE_TEMPLATE("expectation_check examples", S, double, Complex) {
    CHECK(expectation_check<S>(4, 200000, 1) <= 0.05);

    std::vector<HermitianMatrix<S>> zero{HermitianMatrix<S>::zero(3)};
    CHECK(expectation_check<S>(3, 1000, 2, std::span<const HermitianMatrix<S>>(zero)) == 0.0);

    CHECK_THROWS_AS(expectation_check<S>(4, 999, 1), InvalidInput);
    CHECK(expectation_check<S>(3, 5000, 9) == expectation_check<S>(3, 5000, 9));
}

TEST_CASE("expectation_check error shrinks at the square-root rate") {
    double small = 0, large = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        small += expectation_check<double>(4, 20000, seed);
        large += expectation_check<double>(4, 80000, seed + 100);
    }
    const double ratio = large / small;
    CHECK(ratio >= 0.3);
    CHECK(ratio <= 0.8);
}

TEST_CASE_TEMPLATE("build_certificate preconditions and construction", S, double, Complex) {
    const auto ens = sample_ensemble<S>(8, 200, gaussian_model<S>(), 3);
    const auto x = Signal<S>::basis(8, 0);
    const auto built = build_certificate(ens, x, 3.0, true);
    CHECK((apply_A_adjoint(ens, built.weights) - built.Y).frobenius_norm() <= 1e-12 * built.Y.frobenius_norm());
    CHECK(built.truncated_fraction >= 0.0);
    CHECK(built.truncated_fraction <= 1.0);
    const double dropped = (built.weights.array() == 0.0).count();
    CHECK(dropped / 200.0 >= built.truncated_fraction);

    CHECK_THROWS_AS(build_certificate(ens, x.scaled(S(2.0)), 3.0, true), InvalidInput);
    CHECK_THROWS_AS(build_certificate(ens, x, -1.0, true), InvalidInput);
    const SensingModel sphere = std::is_same_v<S, double> ? SensingModel::real_unit_sphere
                                                          : SensingModel::complex_unit_sphere;
    CHECK_THROWS_AS(build_certificate(sample_ensemble<S>(8, 50, sphere, 1), x, 3.0, true),
                    InvalidInput);
}

TEST_CASE("small n truncation warns") {
    std::string seen;
    set_warning_sink([&](std::string_view m) { seen = std::string(m); });
    const auto ens = sample_ensemble<double>(1, 50, SensingModel::real_gaussian, 3);
    build_certificate(ens, Signal<double>::basis(1, 0), 1.0, true);
    set_warning_sink(nullptr);
    CHECK(seen.find("2 beta log n < 3") != std::string::npos);
}

TEST_CASE("truncated fraction is tiny at n = 64") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ens = sample_ensemble<double>(64, 2000, SensingModel::real_gaussian, seed);
        CHECK(build_certificate(ens, Signal<double>::basis(64, 0), 3.0, true).truncated_fraction <=
              0.001);
    }
}

TEST_CASE("untruncated certificate converges for many samples") {
    const auto ens = sample_ensemble<double>(8, 100000, SensingModel::real_gaussian, 4);
    const auto x = Signal<double>::basis(8, 0);
    const auto y = build_certificate(ens, x, 3.0, false).Y;
    CHECK(verify_certificate(y, x).dist_T <= 0.1);
}

TEST_CASE("verify_certificate examples") {
    const auto x = Signal<double>::basis(4, 0);
    const auto exact = verify_certificate(HermitianMatrix<double>::outer(x), x);
    CHECK(exact.dist_T <= 1e-15);
    CHECK(exact.opnorm_Tperp <= 1e-15);
    CHECK(exact.pass);

    const auto v = Signal<double>::basis(4, 2);
    const auto off = verify_certificate(
        HermitianMatrix<double>::outer(x) + 0.6 * HermitianMatrix<double>::outer(v), x);
    CHECK(off.opnorm_Tperp == doctest::Approx(0.6));
    CHECK_FALSE(off.pass);

    CHECK(certificate_thresholds(Field::real) == std::pair{1.0 / 3.0, 0.5});
    CHECK(certificate_thresholds(Field::complex) == std::pair{1.0 / 5.0, 0.5});
    const auto cx = Signal<Complex>::basis(3, 0);
    CHECK(verify_certificate(HermitianMatrix<Complex>::outer(cx), cx).thresholds.first == 0.2);

    CHECK(certificate_csv_header() ==
          "dist_T,opnorm_Tperp,truncated_fraction,threshold_T,threshold_Tperp,pass");
    CHECK(to_csv_row(exact).substr(to_csv_row(exact).size() - 2) == ",1");
}

TEST_CASE("untruncated dist_T decreases with m") {
    const Index n = 16;
    std::vector<double> medians;
    for (Index factor : {2, 8, 32, 128}) {
        std::vector<double> d;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto ens = sample_ensemble<double>(n, factor * n, SensingModel::real_gaussian,
                                                     seed * 1000 + static_cast<std::uint64_t>(factor));
            const auto x = Signal<double>::basis(n, 0);
            d.push_back(verify_certificate(build_certificate(ens, x, 3.0, false).Y, x).dist_T);
        }
        medians.push_back(median(d));
    }
    for (std::size_t k = 1; k < medians.size(); ++k)
        CHECK(medians[k] < medians[k - 1]);
}

TEST_CASE_TEMPLATE("rotation covariance of the certificate", S, double, Complex) {
    Gen g(43);
    const Index n = 6;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ens = sample_ensemble<S>(n, 300, gaussian_model<S>(), seed);
        const Matrix<S> u = g.unitary<S>(n);
        const Signal<S> x(u.col(0));
        // Rows hold z_i^T, so U* z_i becomes z_i^T conj(U).
        const SensingEnsemble<S> rotated(Matrix<S>(ens.rows() * u.conjugate()), gaussian_model<S>(),
                                         seed);
        const auto a = verify_certificate(build_certificate(ens, x, 3.0, false).Y, x);
        const auto e1 = Signal<S>::basis(n, 0);
        const auto b = verify_certificate(build_certificate(rotated, e1, 3.0, false).Y, e1);
        CHECK(a.dist_T == doctest::Approx(b.dist_T).epsilon(1e-10));
        CHECK(a.opnorm_Tperp == doctest::Approx(b.opnorm_Tperp).epsilon(1e-10));
    }
}

TEST_CASE("truncated fraction shrinks as n grows") {
    QuietWarnings quiet;
    std::vector<double> medians;
    for (Index n : {16, 64, 256}) {
        std::vector<double> f;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto ens = sample_ensemble<double>(n, 4000, SensingModel::real_gaussian, seed);
            f.push_back(build_certificate(ens, Signal<double>::basis(n, 0), 3.0, true).truncated_fraction);
        }
        medians.push_back(median(f));
    }
    CHECK(medians[1] <= medians[0]);
    CHECK(medians[2] <= medians[1]);
}
