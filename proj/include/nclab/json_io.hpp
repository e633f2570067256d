#pragma once

#include <json.hpp>
#include <string>
#include <variant>

#include "nclab/decomposition.hpp"
#include "nclab/measure.hpp"
#include "nclab/series.hpp"

namespace nclab {

using Json = nlohmann::ordered_json;

// Measure file:
//   { "kind": "positive" | "complex", "d": int, "max_len": int,
//     "moments": [{"word": [ints], "re": float, "im": float}, ...],
//     "bwd": [...] }                        (complex only)
// Tables are complete: one entry per word within range, duplicates and
// unknown fields are parse errors.

Json to_json(const PositiveMeasure& mu);
Json to_json(const ComplexMeasure& mu);

using AnyMeasure = std::variant<PositiveMeasure, ComplexMeasure>;

AnyMeasure measure_from_json(const Json& j);
PositiveMeasure positive_measure_from_json(const Json& j);
ComplexMeasure complex_measure_from_json(const Json& j);

// Series file: { "d": int, "cap": int, "coeffs": [{"word", "re", "im"}] }.
Json to_json(const FreeSeries& s);
FreeSeries series_from_json(const Json& j);

// Quad file: the four parts plus the complex measure they present.
Json to_json(const WittstockQuad& quad, const ComplexMeasure& target);

struct QuadFile {
    WittstockQuad quad;
    ComplexMeasure target;
};

QuadFile quad_from_json(const Json& j);

Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

/// Reads and parses a JSON document; ParseError carries position context.
Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace nclab
