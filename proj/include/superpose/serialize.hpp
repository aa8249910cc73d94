#pragma once

#include <string>
#include <vector>

#include "superpose/baseline.hpp"
#include "superpose/constructions.hpp"
#include "superpose/geometry.hpp"
#include "superpose/interference.hpp"
#include "superpose/recovery.hpp"
#include "superpose/threshold.hpp"

namespace superpose {

// Compact JSON with a fixed key order. Schemas live in schemas/.
std::string to_json(const RecoveryReport& r);
std::string to_json(const GeometryReport& r);
std::string to_json(const MarginReport& r);
std::string to_json(const CoherenceSummary& c);
std::string to_json(const PhaseScanResult& r);
std::string to_json(const DecodeResult& r);
std::string to_json(const InterferenceSummary& s);
// Construction metadata for a shifted pair (matrices are written separately).
std::string to_json(const ShiftedPair& p);
std::string to_json(const std::vector<GapRow>& rows);

// Header "d,successes,trials", ascending d.
std::string scan_csv(const PhaseScanResult& r);
// Header "d,omp_success,linear_success,trials".
std::string gap_csv(const std::vector<GapRow>& rows);

}  // namespace superpose
