#pragma once

#include "hwzak/lattice.hpp"
#include "hwzak/sampling.hpp"
#include "hwzak/wigner.hpp"
#include "hwzak/zak.hpp"

#include <json.hpp>

#include <string>

namespace hwzak {

/*
 * File formats. Complex arrays in JSON are lists of [re, im] pairs; CSV
 * numbers are written with 17 significant digits so files round-trip
 * exactly. Signal files hold wavefunction values psi(q_j), not the
 * sqrt(dq)-weighted storage. Every reader throws IoError on malformed input.
 */

nlohmann::json complex_to_json(const CVec& v);
CVec complex_from_json(const nlohmann::json& j);

/// {"grid": {"N", "L", "dq"}, "values": [[re, im], ...]}
nlohmann::json signal_to_json(const Signal& s);
Signal signal_from_json(const nlohmann::json& j);
void write_signal_json(const std::string& path, const Signal& s);
Signal read_signal_json(const std::string& path);

/// Columns index,q,re,im. The CSV does not carry L, so the reader needs it.
void write_signal_csv(const std::string& path, const Signal& s);
Signal read_signal_csv(const std::string& path, std::size_t L);

/// {"convention", "L", "M", "q0", "values"}, row-major in j.
nlohmann::json zak_to_json(const ZakArray& z);
ZakArray zak_from_json(const nlohmann::json& j);
void write_zak_json(const std::string& path, const ZakArray& z);
ZakArray read_zak_json(const std::string& path);

/// Columns n,q,re,im.
void write_samples_csv(const std::string& path, const SampleSet& s);
/// Needs the grid the samples were taken on; one row per cell.
SampleSet read_samples_csv(const std::string& path, const GridSpec& g);

/// Scalars and spectrum of a Gram report (the Gram matrix itself only when asked).
nlohmann::json gram_to_json(const GramReport& r, bool include_gram = false);
/// Columns index,sigma.
void write_singular_values_csv(const std::string& path, const GramReport& r);

/// 2N x 2N matrix, one row per q_a.
void write_wigner_csv(const std::string& path, const WignerArray& w);
/// Raw little-endian float64 matrix at `stem`.bin plus {N, L, dq, dp, shape} at `stem`.json.
void write_wigner_binary(const std::string& stem, const WignerArray& w);
WignerArray read_wigner_binary(const std::string& stem);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

} // namespace hwzak
