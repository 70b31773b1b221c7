#include <doctest.h>

#include <sstream>

#include "phaselift/errors.hpp"
#include "phaselift/serialize.hpp"
#include "support.hpp"

using namespace phaselift;
using testing_support::Gen;

TEST_CASE_TEMPLATE("ensemble round trip is exact", S, double, Complex) {
    Gen g(61);
    const SensingModel models[] = {
        std::is_same_v<S, double> ? SensingModel::real_gaussian : SensingModel::complex_gaussian,
        std::is_same_v<S, double> ? SensingModel::real_unit_sphere
                                  : SensingModel::complex_unit_sphere,
        SensingModel::sphere_radius_sqrt_n};
    for (int k = 0; k < 30; ++k) {
        const Index n = 1 + k % 7, m = 1 + (k * 5) % 23;
        const auto model = models[k % 3];
        const auto ens = sample_ensemble<S>(n, m, model, 1000 + static_cast<std::uint64_t>(k));
        std::stringstream ss;
        write_ensemble(ss, ens);
        const auto back = read_ensemble<S>(ss);
        CHECK(back.rows() == ens.rows());
        CHECK(back.model() == model);
        CHECK(back.seed() == ens.seed());
    }
    const SensingEnsemble<S> custom(g.matrix<S>(3, 2), SensingModel::custom, 0);
    std::stringstream ss;
    write_ensemble(ss, custom);
    CHECK(read_ensemble<S>(ss).rows() == custom.rows());
}

TEST_CASE("intensity round trip is exact") {
    Gen g(62);
    for (int k = 0; k < 20; ++k) {
        RealVector b(10);
        for (Index i = 0; i < 10; ++i)
            b[i] = std::exp(g.normal() * 5);
        const auto data = add_noise(b, NoiseModel::gaussian, g.uniform(-5, 60), static_cast<std::uint64_t>(k));
        std::stringstream ss;
        write_intensities(ss, data);
        const auto back = read_intensities(ss);
        CHECK(back.b == data.b);
        CHECK(back.nu == data.nu);
        CHECK(back.eps == data.eps);
    }
}

TEST_CASE("malformed input is rejected") {
    std::stringstream wrong("# something else\n");
    CHECK_THROWS_AS(read_ensemble<double>(wrong), InvalidInput);

    const auto ens = sample_ensemble<Complex>(2, 3, SensingModel::complex_gaussian, 1);
    std::stringstream ss;
    write_ensemble(ss, ens);
    CHECK_THROWS_AS(read_ensemble<double>(ss), InvalidInput);

    std::stringstream full;
    write_ensemble(full, ens);
    std::string text = full.str();
    std::stringstream truncated(text.substr(0, text.size() - 20));
    CHECK_THROWS_AS(read_ensemble<Complex>(truncated), InvalidInput);

    std::stringstream bad_m("# phaselift intensities v1\nm 0\neps 0\n");
    CHECK_THROWS_AS(read_intensities(bad_m), InvalidInput);
}
