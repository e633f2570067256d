#include "nclab/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "nclab/errors.hpp"

namespace nclab {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
    for (const char* key : required) {
        if (!j.contains(key)) {
            throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
        }
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = std::any_of(required.begin(), required.end(),
                                 [&](const char* k) { return key == k; }) ||
                     std::any_of(optional.begin(), optional.end(),
                                 [&](const char* k) { return key == k; });
        if (!known) {
            throw ParseError(std::string(what) + ": unknown field \"" + key + "\"");
        }
    }
}

Json entry_to_json(const Word& w, Complex c) {
    Json e;
    e["word"] = word_to_json(w);
    e["re"] = c.real();
    e["im"] = c.imag();
    return e;
}

Json table_to_json(const CoeffTable& table) {
    // Degree-lex order keeps serialization deterministic.
    std::map<Word, Complex> sorted(table.begin(), table.end());
    Json arr = Json::array();
    for (const auto& [w, c] : sorted) arr.push_back(entry_to_json(w, c));
    return arr;
}

CoeffTable table_from_json(const Json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + ": expected an array");
    CoeffTable table;
    for (const Json& e : arr) {
        require_fields(e, {"word", "re", "im"}, {}, what);
        if (!e["re"].is_number() || !e["im"].is_number()) {
            throw ParseError(std::string(what) + ": re/im must be numbers");
        }
        Word w = word_from_json(e["word"]);
        Complex c(e["re"].get<double>(), e["im"].get<double>());
        if (!table.emplace(w, c).second) {
            throw ParseError(std::string(what) + ": duplicate word " + w.str());
        }
    }
    return table;
}

int get_int(const Json& j, const char* key, const char* what) {
    if (!j[key].is_number_integer()) {
        throw ParseError(std::string(what) + ": \"" + key + "\" must be an integer");
    }
    return j[key].get<int>();
}

}  // namespace

Json word_to_json(const Word& w) {
    return Json(w.letters());
}

Word word_from_json(const Json& j) {
    if (j.is_string()) {
        return Word::from_digits(j.get<std::string>());
    }
    if (!j.is_array()) throw ParseError("word: expected an array of letters or a digit string");
    std::vector<int> letters;
    for (const Json& e : j) {
        if (!e.is_number_integer()) throw ParseError("word: letters must be integers");
        letters.push_back(e.get<int>());
    }
    try {
        return Word(std::move(letters));
    } catch (const ContractViolation& err) {
        throw ParseError(std::string("word: ") + err.what());
    }
}

Json to_json(const PositiveMeasure& mu) {
    Json j;
    j["kind"] = "positive";
    j["d"] = mu.dim();
    j["max_len"] = mu.max_len();
    j["moments"] = table_to_json(mu.moments());
    return j;
}

Json to_json(const ComplexMeasure& mu) {
    Json j;
    j["kind"] = "complex";
    j["d"] = mu.dim();
    j["max_len"] = mu.max_len();
    j["moments"] = table_to_json(mu.forward_table());
    j["bwd"] = table_to_json(mu.backward_table());
    return j;
}

AnyMeasure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("measure: missing or malformed \"kind\"");
    }
    std::string kind = j["kind"].get<std::string>();
    if (kind == "positive") return positive_measure_from_json(j);
    if (kind == "complex") return complex_measure_from_json(j);
    throw ParseError("measure: unknown kind \"" + kind + "\"");
}

PositiveMeasure positive_measure_from_json(const Json& j) {
    require_fields(j, {"kind", "d", "max_len", "moments"}, {}, "positive measure");
    try {
        return PositiveMeasure(get_int(j, "d", "measure"), get_int(j, "max_len", "measure"),
                               table_from_json(j["moments"], "moments"));
    } catch (const Error& err) {
        if (dynamic_cast<const ParseError*>(&err)) throw;
        throw ParseError(std::string("positive measure: ") + err.what());
    }
}

ComplexMeasure complex_measure_from_json(const Json& j) {
    require_fields(j, {"kind", "d", "max_len", "moments", "bwd"}, {}, "complex measure");
    try {
        return ComplexMeasure(get_int(j, "d", "measure"), get_int(j, "max_len", "measure"),
                              table_from_json(j["moments"], "moments"),
                              table_from_json(j["bwd"], "bwd"));
    } catch (const Error& err) {
        if (dynamic_cast<const ParseError*>(&err)) throw;
        throw ParseError(std::string("complex measure: ") + err.what());
    }
}

Json to_json(const FreeSeries& s) {
    Json j;
    j["d"] = s.dim();
    j["cap"] = s.cap();
    j["coeffs"] = table_to_json(s.coeffs());
    return j;
}

FreeSeries series_from_json(const Json& j) {
    require_fields(j, {"d", "cap", "coeffs"}, {}, "series");
    FreeSeries s(get_int(j, "d", "series"), get_int(j, "cap", "series"));
    try {
        for (const auto& [w, c] : table_from_json(j["coeffs"], "coeffs")) {
            s.set_coeff(w, c);
        }
    } catch (const Error& err) {
        if (dynamic_cast<const ParseError*>(&err)) throw;
        throw ParseError(std::string("series: ") + err.what());
    }
    return s;
}

Json to_json(const WittstockQuad& quad, const ComplexMeasure& target) {
    Json j;
    Json parts = Json::array();
    for (const PositiveMeasure& p : quad.parts) parts.push_back(to_json(p));
    j["parts"] = parts;
    j["target"] = to_json(target);
    return j;
}

QuadFile quad_from_json(const Json& j) {
    require_fields(j, {"parts", "target"}, {}, "quad");
    if (!j["parts"].is_array() || j["parts"].size() != 4) {
        throw ParseError("quad: \"parts\" must be an array of four measures");
    }
    return QuadFile{
        WittstockQuad{{positive_measure_from_json(j["parts"][0]),
                       positive_measure_from_json(j["parts"][1]),
                       positive_measure_from_json(j["parts"][2]),
                       positive_measure_from_json(j["parts"][3])}},
        complex_measure_from_json(j["target"])};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(path + ": " + err.what());
    }
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace nclab
