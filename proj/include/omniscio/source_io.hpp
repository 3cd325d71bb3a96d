#ifndef OMNISCIO_SOURCE_IO_HPP
#define OMNISCIO_SOURCE_IO_HPP

// JSON source documents.
//
//   {
//     "m": 6,
//     "active": [1, 2, 3],
//     "source": { "type": "linear_gf2", "base_bits": 4,
//                 "terminals": [["1010"], ["1001"], ...] }
//   }
//
// `source.type` is one of
//   linear_gf2      base_bits, terminals (bit strings, first character = Y_1)
//   tabular         alphabets, pmf: [{"symbols": [..], "p": "1/4"}, ...],
//                   optional tolerance
//   entropy_vector  entropies: {"1": "1", "1,2": "3/2", ...} over every
//                   nonempty subset; "" (the empty set) may be given as well

#include "omniscio/error.hpp"
#include "omniscio/gf2.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/subset.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace omniscio {

struct SourceDocument {
  int m = 0;
  SubsetMask active;
  Source source;
  Rational tolerance = default_tabular_tolerance();
};

/// Raised when a source parses but is not a valid entropy function.
class ValidationError : public InputError {
 public:
  ValidationError(const std::string& what, ValidityReport report)
      : InputError(what), report_(std::move(report)) {}
  const ValidityReport& report() const { return report_; }

 private:
  ValidityReport report_;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return obj.at(name);
}

inline int int_field(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

inline Rational rational_value(const nlohmann::json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a rational string such as \"3/2\"");
}

}  // namespace detail

inline SourceDocument parse_source_json(const nlohmann::json& doc) {
  using detail::field;
  SourceDocument out;
  out.m = detail::int_field(doc, "m");
  if (out.m < 2 || out.m > kMaxTerminals) throw InputError("m must lie in [2, 20]");
  const int m = out.m;

  if (doc.contains("active")) {
    const auto& a = doc.at("active");
    if (!a.is_array()) throw InputError("\"active\" must be a list of terminals");
    std::vector<int> terminals;
    for (const auto& t : a) {
      if (!t.is_number_integer()) throw InputError("\"active\" entries must be integers");
      terminals.push_back(t.get<int>());
    }
    out.active = SubsetMask::of(terminals, m);
    if (out.active.size() != static_cast<int>(terminals.size())) throw InputError("\"active\" repeats a terminal");
  } else {
    out.active = SubsetMask::full(m);
  }
  if (out.active.size() < 2) throw InputError("the active set needs at least two terminals");

  const auto& src = field(doc, "source");
  const auto& type_field = field(src, "type");
  if (!type_field.is_string()) throw InputError("source.type must be a string");
  const std::string type = type_field.get<std::string>();

  if (type == "linear_gf2") {
    LinearGF2Source lin;
    lin.m = m;
    lin.n = detail::int_field(src, "base_bits");
    if (lin.n < 0 || lin.n > kMaxBaseBits) throw InputError("base_bits must lie in [0, 256]");
    const auto& terminals = field(src, "terminals");
    if (!terminals.is_array() || static_cast<int>(terminals.size()) != m)
      throw InputError("source.terminals must list one entry per terminal");
    for (const auto& t : terminals) {
      if (!t.is_array()) throw InputError("each terminal must be a list of bit strings");
      std::vector<Gf2Vector> rows;
      for (const auto& r : t) {
        if (!r.is_string()) throw InputError("coefficient rows must be bit strings");
        rows.push_back(Gf2Vector::parse(r.get<std::string>(), lin.n));
      }
      lin.rows.push_back(std::move(rows));
    }
    lin.validate();
    out.source = std::move(lin);
  } else if (type == "tabular") {
    TabularSource tab;
    tab.m = m;
    const auto& alphabets = field(src, "alphabets");
    if (!alphabets.is_array()) throw InputError("source.alphabets must be a list");
    for (const auto& a : alphabets) {
      if (!a.is_number_integer()) throw InputError("alphabet sizes must be integers");
      tab.alphabets.push_back(a.get<int>());
    }
    const auto& pmf = field(src, "pmf");
    if (!pmf.is_array()) throw InputError("source.pmf must be a list");
    for (const auto& e : pmf) {
      TabularSource::Entry entry;
      const auto& symbols = field(e, "symbols");
      if (!symbols.is_array()) throw InputError("pmf symbols must be a list");
      for (const auto& s : symbols) {
        if (!s.is_number_integer()) throw InputError("pmf symbols must be integers");
        entry.symbols.push_back(s.get<int>());
      }
      entry.probability = detail::rational_value(field(e, "p"), "pmf probability");
      tab.pmf.push_back(std::move(entry));
    }
    if (src.contains("tolerance")) out.tolerance = detail::rational_value(src.at("tolerance"), "tolerance");
    if (out.tolerance <= 0) throw InputError("tolerance must be positive");
    tab.validate();
    out.source = std::move(tab);
  } else if (type == "entropy_vector") {
    EntropyVector vec{m, std::vector<Rational>(SubsetMask::universe_size(m))};
    std::vector<bool> given(vec.values.size(), false);
    const auto& entropies = field(src, "entropies");
    if (!entropies.is_object()) throw InputError("source.entropies must map subsets to rationals");
    for (const auto& [key, value] : entropies.items()) {
      const SubsetMask s = SubsetMask::parse(key, m);
      if (given[s.bits()]) throw InputError("subset " + s.to_string() + " given twice");
      given[s.bits()] = true;
      vec.values[s.bits()] = detail::rational_value(value, "entropy of " + s.to_string());
    }
    for (SubsetMask::Bits bits = 1; bits < given.size(); ++bits)
      if (!given[bits]) throw InputError("entropy of " + SubsetMask(bits, m).to_string() + " is missing");
    out.source = std::move(vec);
  } else {
    throw InputError("unknown source.type \"" + type + "\"");
  }
  return out;
}

inline nlohmann::json source_to_json(const SourceDocument& doc) {
  nlohmann::json out;
  out["m"] = doc.m;
  out["active"] = doc.active.elements();
  nlohmann::json src;
  if (const auto* lin = std::get_if<LinearGF2Source>(&doc.source)) {
    src["type"] = "linear_gf2";
    src["base_bits"] = lin->n;
    src["terminals"] = nlohmann::json::array();
    for (const auto& rows : lin->rows) {
      nlohmann::json t = nlohmann::json::array();
      for (const auto& r : rows) t.push_back(r.to_string(lin->n));
      src["terminals"].push_back(t);
    }
  } else if (const auto* tab = std::get_if<TabularSource>(&doc.source)) {
    src["type"] = "tabular";
    src["alphabets"] = tab->alphabets;
    src["pmf"] = nlohmann::json::array();
    for (const auto& e : tab->pmf) src["pmf"].push_back({{"symbols", e.symbols}, {"p", to_string(e.probability)}});
    src["tolerance"] = to_string(doc.tolerance);
  } else {
    const auto& vec = std::get<EntropyVector>(doc.source);
    src["type"] = "entropy_vector";
    src["entropies"] = nlohmann::json::object();
    for (SubsetMask::Bits bits = 1; bits < vec.values.size(); ++bits)
      src["entropies"][SubsetMask(bits, vec.m).to_list()] = to_string(vec.values[bits]);
  }
  out["source"] = std::move(src);
  return out;
}

struct LoadedSource {
  SourceDocument document;
  EntropyOracle oracle;
  ValidityReport validity;
};

inline std::string describe_violation(const SupermodularityViolation& v) {
  return "h" + v.b1.to_string() + " + h" + v.b2.to_string() + " = " + to_string(v.lhs) + " > " + to_string(v.rhs) +
         " = h" + (v.b1 | v.b2).to_string() + " + h" + (v.b1 & v.b2).to_string();
}

inline std::string describe_violation(const MonotonicityViolation& v) {
  return "h" + v.smaller.to_string() + " = " + to_string(v.h_smaller) + " > " + to_string(v.h_larger) + " = h" +
         v.larger.to_string();
}

inline std::string describe_validity(const ValidityReport& r) {
  if (r.valid()) return "valid";
  std::ostringstream out;
  out << "invalid:";
  if (!r.normalized) out << " H(empty set) != 0;";
  if (const auto* v = r.cited_violation())
    out << " supermodularity violated (" << r.supermodularity_count << " pairs), e.g. " << describe_violation(*v)
        << ";";
  if (!r.monotonicity.empty())
    out << " monotonicity violated (" << r.monotonicity_count << " pairs), e.g. "
        << describe_violation(r.monotonicity.front()) << ";";
  std::string s = out.str();
  s.pop_back();
  return s;
}

/// Builds the oracle and, when `validate` is set, rejects invalid entropy functions.
inline LoadedSource load_source(SourceDocument doc, bool validate) {
  LoadedSource out{std::move(doc), {}, {}};
  out.oracle = EntropyOracle::from_source(out.document.source, out.document.tolerance);
  out.validity = check_validity(out.oracle, out.document.active);
  if (validate && !out.validity.valid())
    throw ValidationError("source rejected, " + describe_validity(out.validity), out.validity);
  return out;
}

inline LoadedSource parse_source_file(const std::string& path, bool validate = true) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open source file \"" + path + "\"");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in \"" + path + "\": " + e.what());
  }
  return load_source(parse_source_json(doc), validate);
}

}  // namespace omniscio

#endif  // OMNISCIO_SOURCE_IO_HPP
