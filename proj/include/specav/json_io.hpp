#pragma once

#include <json.hpp>
#include <string>

#include "specav/measure.hpp"
#include "specav/projection.hpp"
#include "specav/riesz.hpp"
#include "specav/symbol.hpp"
#include "specav/transference.hpp"
#include "specav/wiener.hpp"

namespace specav {

using Json = nlohmann::ordered_json;

// Measures: {"d": 2, "atoms": [{"tau": [t1, t2], "re": x, "im": y}, ...]}
Json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

// Symbols: tagged by "kind" in {atomic, orthant, shell, homogeneous,
// tabulated, product, sum, conj, sqmod}. Homogeneous symbols serialize by
// profile name; only registry profiles round-trip.
Json symbol_to_json(const Symbol& s);
SymbolPtr symbol_from_json(const Json& j);

// Named symbols for the command line: orthant, counterexample,
// counterexample-sqmod, one.
SymbolPtr builtin_symbol(const std::string& name, int d);
std::vector<std::string> builtin_symbol_names();

// Named homogeneous profiles usable in JSON: one, x1, x1_squared.
SymbolPtr homogeneous_from_name(const std::string& name, int d);

// Matrix symbols: {"builtin": "curl2"} or a sphere table
// {"kind": "sphere_table", "size": N, "d": d,
//  "samples": [{"omega": [...], "re": [[...]], "im": [[...]]}]}
// evaluated at the nearest tabulated direction.
MatrixSymbol matrix_symbol_from_json(const Json& j, int d);

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

// Spectrum coefficients as CSV rows: frequency coordinates, re, im, and the
// sign pattern that produced the coefficient (e.g. "+0-").
std::string spectrum_to_csv(const SpectrumPolynomial& poly);

// Report serializers.
Json estimate_to_json(const WienerEstimate& est);
Json verdict_to_json(const DirectionVerdict& v);
Json theorem_report_to_json(const WienerTheoremReport& r);
Json scan_to_json(const DiscretePartScan& s);
Json lipschitz_to_json(const LipschitzReport& r);
Json greedy_to_json(const GreedySigma& g);
Json p1_report_to_json(const P1Report& r);
Json certificate_to_json(const BlowupCertificate& c);
Json conditions_to_json(const ConditionsReport& r);
Json matrix_estimate_to_json(const MatrixWienerEstimate& est);
Json obstruction_to_json(const ObstructionReport& r);
Json transference_to_json(const TransferenceReport& r);

}  // namespace specav
