#ifndef OMNISCIO_REPORT_HPP
#define OMNISCIO_REPORT_HPP

// Command results and their text / JSON renderings. The JSON form is exact
// (rationals as "p/q" strings, subsets as sorted 1-based lists) and
// round-trips: report_from_json(report_to_json(r)) re-emits identical bytes.

#include "omniscio/error.hpp"
#include "omniscio/partition.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/subset.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace omniscio {

inline constexpr const char* kToolVersion = "omniscio 1.0.0";

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AuditRow {
  SubsetMask mask;
  Rational h_table;
  Rational h_generative;
  bool differs = false;
};

struct ValiditySummary {
  bool valid = true;
  bool normalized = true;
  std::size_t supermodularity_violations = 0;
  std::size_t monotonicity_violations = 0;
  std::optional<SubsetMask> cited_b1, cited_b2;
  std::string description;
};

struct Report {
  std::string tool = kToolVersion;
  std::string command;
  std::string input;
  std::string source_type;
  int m = 0;
  SubsetMask active;
  bool exact = true;

  std::optional<ValiditySummary> validity;
  std::optional<Rational> h_full;
  std::optional<Rational> r_co;
  std::optional<Rational> c_sk;
  std::optional<RationalVector> rates;
  std::optional<RationalVector> dual;  // indexed by constraint row, increasing mask order
  std::optional<std::vector<std::pair<SubsetMask, Rational>>> dual_support;
  std::optional<std::vector<SubsetMask>> tight_masks;
  std::optional<std::string> uniqueness;
  std::optional<RationalVector> alternative_rates;

  std::optional<Rational> mutual_dependence;
  std::optional<std::vector<Partition>> minimizers;
  std::optional<std::size_t> partitions_evaluated;

  std::optional<Rational> gap;
  std::optional<bool> tight;
  std::optional<Partition> witness_partition;
  std::optional<RationalVector> witness_rates;
  std::optional<bool> search_found_witness;
  std::optional<std::size_t> partitions_searched;
  std::optional<Partition> constructed_partition;
  std::optional<Rational> constructed_value;

  std::vector<Check> checks;
  std::optional<std::vector<AuditRow>> audit;
  std::vector<Report> sections;

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    for (const auto& s : sections)
      if (!s.all_checks_pass()) return false;
    return true;
  }
};

// --- JSON -------------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline json mask_json(SubsetMask s) { return s.elements(); }

inline SubsetMask mask_from(const json& j, int m) {
  std::vector<int> elements = j.get<std::vector<int>>();
  return SubsetMask::of(elements, m);
}

inline json vector_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline RationalVector vector_from(const json& j) {
  RationalVector out;
  for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
  return out;
}

inline json partition_json(const Partition& p) {
  json out = json::array();
  for (const auto& b : p.blocks) out.push_back(mask_json(b));
  return out;
}

inline Partition partition_from(const json& j, int m) {
  Partition p;
  for (const auto& b : j) p.blocks.push_back(mask_from(b, m));
  return p;
}

}  // namespace detail

inline nlohmann::json report_to_json(const Report& r) {
  using detail::json;
  json out;
  out["tool"] = r.tool;
  out["command"] = r.command;
  out["input"] = r.input;
  out["source_type"] = r.source_type;
  out["m"] = r.m;
  out["active"] = detail::mask_json(r.active);
  out["exact"] = r.exact;
  if (r.validity) {
    const auto& v = *r.validity;
    json jv{{"valid", v.valid},
            {"normalized", v.normalized},
            {"supermodularity_violations", v.supermodularity_violations},
            {"monotonicity_violations", v.monotonicity_violations},
            {"description", v.description}};
    if (v.cited_b1 && v.cited_b2) jv["cited_pair"] = {detail::mask_json(*v.cited_b1), detail::mask_json(*v.cited_b2)};
    out["validity"] = jv;
  }
  if (r.h_full) out["h_full"] = to_string(*r.h_full);
  if (r.r_co) out["r_co"] = to_string(*r.r_co);
  if (r.c_sk) out["c_sk"] = to_string(*r.c_sk);
  if (r.rates) out["rates"] = detail::vector_json(*r.rates);
  if (r.dual) out["dual"] = detail::vector_json(*r.dual);
  if (r.dual_support) {
    out["dual_support"] = json::array();
    for (const auto& [mask, y] : *r.dual_support)
      out["dual_support"].push_back({{"subset", detail::mask_json(mask)}, {"y", to_string(y)}});
  }
  if (r.tight_masks) {
    out["tight_constraints"] = json::array();
    for (const auto& t : *r.tight_masks) out["tight_constraints"].push_back(detail::mask_json(t));
  }
  if (r.uniqueness) out["uniqueness"] = *r.uniqueness;
  if (r.alternative_rates) out["alternative_rates"] = detail::vector_json(*r.alternative_rates);
  if (r.mutual_dependence) out["mutual_dependence"] = to_string(*r.mutual_dependence);
  if (r.minimizers) {
    out["minimizers"] = json::array();
    for (const auto& p : *r.minimizers) out["minimizers"].push_back(detail::partition_json(p));
  }
  if (r.partitions_evaluated) out["partitions_evaluated"] = *r.partitions_evaluated;
  if (r.gap) out["gap"] = to_string(*r.gap);
  if (r.tight) out["tight"] = *r.tight;
  if (r.witness_partition) out["witness_partition"] = detail::partition_json(*r.witness_partition);
  if (r.witness_rates) out["witness_rates"] = detail::vector_json(*r.witness_rates);
  if (r.search_found_witness) out["search_found_witness"] = *r.search_found_witness;
  if (r.partitions_searched) out["partitions_searched"] = *r.partitions_searched;
  if (r.constructed_partition) out["constructed_partition"] = detail::partition_json(*r.constructed_partition);
  if (r.constructed_value) out["constructed_value"] = to_string(*r.constructed_value);
  if (!r.checks.empty()) {
    out["checks"] = json::array();
    for (const auto& c : r.checks)
      out["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  if (r.audit) {
    out["audit"] = json::array();
    for (const auto& row : *r.audit)
      out["audit"].push_back({{"subset", detail::mask_json(row.mask)},
                              {"h_table", to_string(row.h_table)},
                              {"h_generative", to_string(row.h_generative)},
                              {"differs", row.differs}});
  }
  if (!r.sections.empty()) {
    out["sections"] = json::array();
    for (const auto& s : r.sections) out["sections"].push_back(report_to_json(s));
  }
  return out;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  try {
    r.tool = j.at("tool").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.source_type = j.at("source_type").get<std::string>();
    r.m = j.at("m").get<int>();
    r.active = detail::mask_from(j.at("active"), r.m);
    r.exact = j.at("exact").get<bool>();
    auto rational = [&](const char* key, std::optional<Rational>& dst) {
      if (j.contains(key)) dst = parse_rational(j.at(key).get<std::string>());
    };
    auto vec = [&](const char* key, std::optional<RationalVector>& dst) {
      if (j.contains(key)) dst = detail::vector_from(j.at(key));
    };
    auto partitions = [&](const char* key, std::optional<std::vector<Partition>>& dst) {
      if (!j.contains(key)) return;
      dst.emplace();
      for (const auto& p : j.at(key)) dst->push_back(detail::partition_from(p, r.m));
    };
    if (j.contains("validity")) {
      const auto& jv = j.at("validity");
      ValiditySummary v;
      v.valid = jv.at("valid").get<bool>();
      v.normalized = jv.at("normalized").get<bool>();
      v.supermodularity_violations = jv.at("supermodularity_violations").get<std::size_t>();
      v.monotonicity_violations = jv.at("monotonicity_violations").get<std::size_t>();
      v.description = jv.at("description").get<std::string>();
      if (jv.contains("cited_pair")) {
        v.cited_b1 = detail::mask_from(jv.at("cited_pair").at(0), r.m);
        v.cited_b2 = detail::mask_from(jv.at("cited_pair").at(1), r.m);
      }
      r.validity = v;
    }
    rational("h_full", r.h_full);
    rational("r_co", r.r_co);
    rational("c_sk", r.c_sk);
    vec("rates", r.rates);
    vec("dual", r.dual);
    if (j.contains("dual_support")) {
      r.dual_support.emplace();
      for (const auto& e : j.at("dual_support"))
        r.dual_support->emplace_back(detail::mask_from(e.at("subset"), r.m), parse_rational(e.at("y").get<std::string>()));
    }
    if (j.contains("tight_constraints")) {
      r.tight_masks.emplace();
      for (const auto& t : j.at("tight_constraints")) r.tight_masks->push_back(detail::mask_from(t, r.m));
    }
    if (j.contains("uniqueness")) r.uniqueness = j.at("uniqueness").get<std::string>();
    vec("alternative_rates", r.alternative_rates);
    rational("mutual_dependence", r.mutual_dependence);
    partitions("minimizers", r.minimizers);
    if (j.contains("partitions_evaluated")) r.partitions_evaluated = j.at("partitions_evaluated").get<std::size_t>();
    rational("gap", r.gap);
    if (j.contains("tight")) r.tight = j.at("tight").get<bool>();
    if (j.contains("witness_partition")) r.witness_partition = detail::partition_from(j.at("witness_partition"), r.m);
    vec("witness_rates", r.witness_rates);
    if (j.contains("search_found_witness")) r.search_found_witness = j.at("search_found_witness").get<bool>();
    if (j.contains("partitions_searched")) r.partitions_searched = j.at("partitions_searched").get<std::size_t>();
    if (j.contains("constructed_partition"))
      r.constructed_partition = detail::partition_from(j.at("constructed_partition"), r.m);
    rational("constructed_value", r.constructed_value);
    if (j.contains("checks"))
      for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
    if (j.contains("audit")) {
      r.audit.emplace();
      for (const auto& row : j.at("audit"))
        r.audit->push_back({detail::mask_from(row.at("subset"), r.m), parse_rational(row.at("h_table").get<std::string>()),
                            parse_rational(row.at("h_generative").get<std::string>()), row.at("differs").get<bool>()});
    }
    if (j.contains("sections"))
      for (const auto& s : j.at("sections")) r.sections.push_back(report_from_json(s));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return r;
}

// --- text -------------------------------------------------------------------

namespace detail {

inline std::string vector_text(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

inline void render_text_body(const Report& r, std::ostream& out, const std::string& indent) {
  out << indent << "command: " << r.command << "\n";
  out << indent << "input: " << r.input << " (" << r.source_type << ", m = " << r.m
      << ", active = " << r.active.to_string() << (r.exact ? ", exact" : ", approximate") << ")\n";
  if (r.validity) out << indent << "validity: " << r.validity->description << "\n";
  if (r.h_full) out << indent << "h(M) = " << to_display(*r.h_full) << "\n";
  if (r.r_co) out << indent << "R_CO = " << to_display(*r.r_co) << "\n";
  if (r.c_sk) out << indent << "C_SK = " << to_display(*r.c_sk) << "\n";
  if (r.rates) out << indent << "optimal rates: " << vector_text(*r.rates) << "\n";
  if (r.tight_masks) {
    out << indent << "tight constraints (" << r.tight_masks->size() << "):";
    for (const auto& t : *r.tight_masks) out << " " << t.to_string();
    out << "\n";
  }
  if (r.dual_support) {
    out << indent << "dual support (" << r.dual_support->size() << "):";
    for (const auto& [mask, y] : *r.dual_support) out << " " << mask.to_string() << "=" << to_string(y);
    out << "\n";
  }
  if (r.uniqueness) out << indent << "uniqueness: " << *r.uniqueness << "\n";
  if (r.alternative_rates) out << indent << "alternative optimum: " << vector_text(*r.alternative_rates) << "\n";
  if (r.mutual_dependence) out << indent << "I(A) = " << to_display(*r.mutual_dependence) << "\n";
  if (r.minimizers) {
    out << indent << "minimizing partitions (" << r.minimizers->size();
    if (r.partitions_evaluated) out << " of " << *r.partitions_evaluated;
    out << "):\n";
    for (const auto& p : *r.minimizers) out << indent << "  " << p.to_string() << "\n";
  }
  if (r.gap) out << indent << "gap I(A) - C_SK = " << to_display(*r.gap) << "\n";
  if (r.tight) out << indent << "bound tight: " << (*r.tight ? "yes" : "no") << "\n";
  if (r.witness_partition) out << indent << "witness partition: " << r.witness_partition->to_string() << "\n";
  if (r.witness_rates) out << indent << "witness rates: " << vector_text(*r.witness_rates) << "\n";
  if (r.search_found_witness) {
    out << indent << "partition search: " << (*r.search_found_witness ? "witness found" : "no witness");
    if (r.partitions_searched) out << " (" << *r.partitions_searched << " partitions tried)";
    out << "\n";
  }
  if (r.constructed_partition) {
    out << indent << "partition from dual: " << r.constructed_partition->to_string();
    if (r.constructed_value) out << "  I = " << to_display(*r.constructed_value);
    out << "\n";
  }
  if (r.audit) {
    std::size_t differing = 0;
    for (const auto& row : *r.audit) differing += row.differs ? 1 : 0;
    out << indent << "h audit: cardinality table vs generative source (" << differing << " of " << r.audit->size()
        << " subsets differ)\n";
    out << indent << "  subset              table  generative\n";
    for (const auto& row : *r.audit) {
      std::string name = row.mask.to_string();
      name.resize(std::max<std::size_t>(name.size(), 18), ' ');
      std::string ht = to_string(row.h_table);
      ht.resize(std::max<std::size_t>(ht.size(), 6), ' ');
      out << indent << "  " << name << "  " << ht << " " << to_string(row.h_generative)
          << (row.differs ? "   *" : "") << "\n";
    }
  }
  for (const auto& s : r.sections) {
    out << indent << "--- " << s.input << "\n";
    render_text_body(s, out, indent + "  ");
  }
  for (const auto& c : r.checks)
    out << indent << "check [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name
        << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
}

}  // namespace detail

enum class ReportFormat { kText, kJson };

inline void render_report(const Report& r, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::kJson) {
    out << report_to_json(r).dump(2) << "\n";
    return;
  }
  out << r.tool << "\n";
  detail::render_text_body(r, out, "");
}

}  // namespace omniscio

#endif  // OMNISCIO_REPORT_HPP
