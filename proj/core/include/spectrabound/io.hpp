#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "spectrabound/linalg.hpp"
#include "spectrabound/negativity.hpp"
#include "spectrabound/pred_spectrum.hpp"
#include "spectrabound/spectral_criteria.hpp"

namespace spectrabound {

// Spectrum files:  {"n": 2, "m": 2, "values": [0.25, 0.25, 0.25, 0.25]}
// Matrix files:    {"dim": 4, "entries": [[[re, im], ...], ...]}  (row-major)
// A matrix entry may also be a bare real number.

Spectrum spectrum_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Spectrum& s);

HermitianMatrix hermitian_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ComplexMatrix& m);

nlohmann::json to_json(const CriterionVerdict& v);
nlohmann::json to_json(const PredfsVerdict& v);
nlohmann::json to_json(const StructuredSpectrum& s);
nlohmann::json to_json(const NegativityReport& r);
nlohmann::json to_json(const WitnessBounds& b);
nlohmann::json to_json(const MaxGammaResult& r);

/// Parses a file; InvalidInput on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

Spectrum load_spectrum(const std::filesystem::path& path);
HermitianMatrix load_hermitian(const std::filesystem::path& path);

}  // namespace spectrabound
