#pragma once

#include <ostream>

#include "infconv/harness.hpp"
#include "infconv/json_writer.hpp"
#include "infconv/norms.hpp"

namespace infconv {

JsonValue to_json(const PExponent& p);
JsonValue to_json(const GridSpec& grid);
JsonValue to_json(const SharpnessReport& report);
JsonValue to_json(const GlsBoundReport& report);
JsonValue to_json(const ScanResult& result);
JsonValue to_json(const DilationIdentityReport& report);
JsonValue to_json(const TailReport& report);
JsonValue to_json(const GlsNormResult& result);

/// Grid samples as JSON: grid descriptor plus the flat value array.
JsonValue grid_function_to_json(const GridFunction& f);

/// CSV plot format: header row, one coordinate column per axis, a final
/// value column; +inf prints as the literal `inf`.
void write_grid_function_csv(std::ostream& os, const GridFunction& f);

}  // namespace infconv
