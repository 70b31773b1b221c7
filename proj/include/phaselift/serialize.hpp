#pragma once

#include <iosfwd>

#include "phaselift/measurement.hpp"

namespace phaselift {

// Columnar text formats for experiment provenance. Numbers are written
// with 17 significant digits, so a write/read cycle is exact.
//
// Ensemble:
//   # phaselift ensemble v1
//   n <n>
//   m <m>
//   model <model tag>
//   seed <seed>
//   field <real|complex>
//   then m rows, one per vector: n values (real) or n "re im" pairs.
//
// Intensities:
//   # phaselift intensities v1
//   m <m>
//   eps <eps>
//   then m rows "b nu".

template <FieldScalar Scalar>
void write_ensemble(std::ostream &os, const SensingEnsemble<Scalar> &ens);

template <FieldScalar Scalar>
SensingEnsemble<Scalar> read_ensemble(std::istream &is);

void write_intensities(std::ostream &os, const IntensityData &data);
IntensityData read_intensities(std::istream &is);

extern template void write_ensemble(std::ostream &, const SensingEnsemble<double> &);
extern template void write_ensemble(std::ostream &, const SensingEnsemble<Complex> &);
extern template SensingEnsemble<double> read_ensemble<double>(std::istream &);
extern template SensingEnsemble<Complex> read_ensemble<Complex>(std::istream &);

} // namespace phaselift
