#include "phaselift/serialize.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "phaselift/errors.hpp"

namespace phaselift {

namespace {

constexpr const char *kEnsembleMagic = "# phaselift ensemble v1";
constexpr const char *kIntensityMagic = "# phaselift intensities v1";

void expect_line(std::istream &is, const char *magic) {
    std::string line;
    if (!std::getline(is, line) || line != magic)
        throw InvalidInput(std::string("expected header '") + magic + "'");
}

template <typename T>
T read_field(std::istream &is, const std::string &key) {
    std::string got;
    T value{};
    if (!(is >> got) || got != key || !(is >> value))
        throw InvalidInput("malformed header: expected '" + key + " <value>'");
    return value;
}

double read_number(std::istream &is) {
    double v;
    if (!(is >> v))
        throw InvalidInput("truncated or malformed numeric row");
    return v;
}

struct PrecisionGuard {
    explicit PrecisionGuard(std::ostream &os) : os_(os), old_(os.precision(17)) {}
    ~PrecisionGuard() { os_.precision(old_); }
    std::ostream &os_;
    std::streamsize old_;
};

} // namespace

template <FieldScalar Scalar>
void write_ensemble(std::ostream &os, const SensingEnsemble<Scalar> &ens) {
    PrecisionGuard guard(os);
    os << kEnsembleMagic << '\n'
       << "n " << ens.dimension() << '\n'
       << "m " << ens.count() << '\n'
       << "model " << to_string(ens.model()) << '\n'
       << "seed " << ens.seed() << '\n'
       << "field " << to_string(ens.field) << '\n';
    const auto &rows = ens.rows();
    for (Index i = 0; i < rows.rows(); ++i) {
        for (Index j = 0; j < rows.cols(); ++j) {
            if (j > 0)
                os << ' ';
            if constexpr (std::same_as<Scalar, double>)
                os << rows(i, j);
            else
                os << rows(i, j).real() << ' ' << rows(i, j).imag();
        }
        os << '\n';
    }
}

template <FieldScalar Scalar>
SensingEnsemble<Scalar> read_ensemble(std::istream &is) {
    expect_line(is, kEnsembleMagic);
    const auto n = read_field<Index>(is, "n");
    const auto m = read_field<Index>(is, "m");
    const auto model = parse_sensing_model(read_field<std::string>(is, "model"));
    const auto seed = read_field<std::uint64_t>(is, "seed");
    const auto field = read_field<std::string>(is, "field");
    if (field != to_string(field_of<Scalar>))
        throw InvalidInput("read_ensemble: file holds a " + field +
                           " ensemble, requested " +
                           std::string(to_string(field_of<Scalar>)));
    if (n < 1 || m < 1)
        throw InvalidInput("read_ensemble: n and m must be positive");
    Matrix<Scalar> rows(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            if constexpr (std::same_as<Scalar, double>) {
                rows(i, j) = read_number(is);
            } else {
                const double re = read_number(is);
                const double im = read_number(is);
                rows(i, j) = Complex(re, im);
            }
        }
    return SensingEnsemble<Scalar>(std::move(rows), model, seed);
}

void write_intensities(std::ostream &os, const IntensityData &data) {
    PrecisionGuard guard(os);
    os << kIntensityMagic << '\n'
       << "m " << data.size() << '\n'
       << "eps " << data.eps << '\n';
    for (Index i = 0; i < data.size(); ++i)
        os << data.b[i] << ' ' << data.nu[i] << '\n';
}

IntensityData read_intensities(std::istream &is) {
    expect_line(is, kIntensityMagic);
    const auto m = read_field<Index>(is, "m");
    const auto eps = read_field<double>(is, "eps");
    if (m < 1)
        throw InvalidInput("read_intensities: m must be positive");
    IntensityData data{RealVector(m), RealVector(m), eps};
    for (Index i = 0; i < m; ++i) {
        data.b[i] = read_number(is);
        data.nu[i] = read_number(is);
    }
    data.validate();
    return data;
}

template void write_ensemble(std::ostream &, const SensingEnsemble<double> &);
template void write_ensemble(std::ostream &, const SensingEnsemble<Complex> &);
template SensingEnsemble<double> read_ensemble<double>(std::istream &);
template SensingEnsemble<Complex> read_ensemble<Complex>(std::istream &);

} // namespace phaselift
