#ifndef OMNISCIO_CLI_HPP
#define OMNISCIO_CLI_HPP

// Command dispatch for the omniscio tool. Kept in the header so tests can
// drive every verb in-process; tools/omniscio.cpp only forwards argv.

#include "omniscio/builtins.hpp"
#include "omniscio/co_sk.hpp"
#include "omniscio/error.hpp"
#include "omniscio/mutual_dependence.hpp"
#include "omniscio/report.hpp"
#include "omniscio/source_io.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/tightness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace omniscio {

struct Command {
  std::string verb;  // solve | mdb | tight | counterexample | audit | validate
  std::string path;
  std::string mode;  // counterexample: paper-h | generative
  bool json = false;
  bool constructive = false;
  bool no_validate = false;
};

struct Outcome {
  Report report;
  ExitCode code = ExitCode::kSuccess;
};

namespace cli_detail {

inline Report base_report(const std::string& command, const std::string& input, const EntropyOracle& oracle,
                          SubsetMask active) {
  Report r;
  r.command = command;
  r.input = input;
  r.source_type = kind_name(oracle.kind());
  r.m = oracle.m();
  r.active = active;
  r.exact = oracle.exact();
  return r;
}

inline void add_validity(Report& r, const ValidityReport& v) {
  ValiditySummary s;
  s.valid = v.valid();
  s.normalized = v.normalized;
  s.supermodularity_violations = v.supermodularity_count;
  s.monotonicity_violations = v.monotonicity_count;
  if (const auto* cited = v.cited_violation()) {
    s.cited_b1 = cited->b1;
    s.cited_b2 = cited->b2;
  }
  s.description = describe_validity(v);
  r.validity = s;
}

inline void add_capacity(Report& r, const CapacityReport& cap) {
  r.h_full = cap.h_full;
  r.r_co = cap.r_co;
  r.c_sk = cap.c_sk;
  r.rates = cap.rates;
  r.dual = cap.dual;
  r.dual_support.emplace();
  for (std::size_t i = 0; i < cap.dual.size(); ++i)
    if (cap.dual[i] > 0) r.dual_support->emplace_back(cap.family.members[i], cap.dual[i]);
  r.tight_masks = cap.tight_masks;
  r.uniqueness = verdict_name(cap.uniqueness.verdict);
  if (cap.uniqueness.alternative) r.alternative_rates = *cap.uniqueness.alternative;
}

inline void add_bound(Report& r, const MutualDependenceResult& md) {
  r.mutual_dependence = md.value;
  r.minimizers = md.minimizers;
  r.partitions_evaluated = md.evaluated;
}

inline void add_search(Report& r, const TightnessVerdict& search) {
  r.search_found_witness = search.tight;
  r.partitions_searched = search.partitions_tried;
  if (search.witness) {
    r.witness_partition = search.witness->partition;
    r.witness_rates = search.witness->rates;
  }
}

inline Check check_equal(const std::string& name, const Rational& got, const Rational& want) {
  return {name, got == want, "got " + to_string(got) + ", expected " + to_string(want)};
}

inline std::string vector_string(const RationalVector& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + to_string(x);
  return "(" + out + ")";
}

/// True when y = `value` on `rows` (0 elsewhere) is dual feasible and attains R_CO.
inline bool certifies_optimum(const CapacityReport& cap, const EntropyOracle& oracle,
                              const std::vector<SubsetMask>& rows, const Rational& value) {
  Rational objective = 0;
  for (const auto& b : rows) {
    if (!cap.family.contains(b)) return false;
    objective += value * oracle.h(b);
  }
  for (int j = 1; j <= oracle.m(); ++j) {
    Rational column = 0;
    for (const auto& b : rows)
      if (b.has(j)) column += value;
    if (column != 1) return false;
  }
  return objective == cap.r_co;
}

/// Everything computed for one of the two built-in helper examples.
inline Report helper_example_report(const std::string& mode) {
  const SubsetMask active = builtins::helper_example_active();
  EntropyOracle oracle;
  std::string input;
  if (mode == "paper-h") {
    oracle = EntropyOracle::from_vector(builtins::cardinality_table_vector());
    input = "builtin:cardinality-table";
  } else if (mode == "generative") {
    oracle = EntropyOracle::from_linear(make_counterexample().source);
    input = "builtin:xor-pairs";
  } else {
    throw InputError("unknown counterexample mode \"" + mode + "\" (expected paper-h or generative)");
  }

  Report r = base_report("counterexample --mode " + mode, input, oracle, active);
  add_validity(r, check_validity(oracle, active));
  const CapacityReport cap = r_co(oracle, active);
  add_capacity(r, cap);
  const MutualDependenceResult md = mutual_dependence_bound(oracle, active);
  add_bound(r, md);
  r.gap = md.value - cap.c_sk;
  r.tight = r.gap->is_zero();
  const TightnessVerdict search = witness_by_partition_search(oracle, active);
  add_search(r, search);

  if (mode == "paper-h") {
    r.checks.push_back(check_equal("R_CO = 9/4", cap.r_co, Rational(9, 4)));
    r.checks.push_back(check_equal("C_SK = 7/4", cap.c_sk, Rational(7, 4)));
    r.checks.push_back(check_equal("I(A) = 2", md.value, Rational(2)));
    const auto want_rates = builtins::helper_example_rates();
    r.checks.push_back({"optimal rates = (1/4,1/4,1/4,1/2,1/2,1/2)", cap.rates == want_rates,
                        "got " + vector_string(cap.rates)});
    r.checks.push_back({"optimum is unique", cap.uniqueness.verdict == UniquenessVerdict::kUnique,
                        std::string(verdict_name(cap.uniqueness.verdict))});
    // The table is degenerate at this vertex: more rows than the six are
    // tight and the optimal dual is not unique, so the six-row dual is
    // certified directly instead of compared with the simplex output.
    const auto six = builtins::helper_example_tight_rows();
    bool six_tight = true;
    for (const auto& b : six)
      six_tight = six_tight && std::find(cap.tight_masks.begin(), cap.tight_masks.end(), b) != cap.tight_masks.end();
    r.checks.push_back({"the six rows {1,3,4} {2,3,5} {1,2,6} {1,2,4,5,6} {1,3,4,5,6} {2,3,4,5,6} are tight", six_tight,
                        std::to_string(cap.tight_masks.size()) + " tight rows in total"});
    r.checks.push_back({"y = 1/4 on the six rows is an optimal dual", certifies_optimum(cap, oracle, six, Rational(1, 4)),
                        "y A = 1 and y b = R_CO checked exactly"});
  } else {
    const auto ce = make_counterexample();
    bool agree = true;
    for (SubsetMask::Bits bits = 0; bits < SubsetMask::universe_size(ce.source.m); ++bits) {
      const SubsetMask s(bits, ce.source.m);
      agree = agree && enumerated_joint_entropy(ce.source, s) == oracle.joint(s);
    }
    r.checks.push_back({"rank oracle matches 16-point enumeration on all 64 subsets", agree, ""});
    r.checks.push_back({"source is a valid entropy function", r.validity->valid, r.validity->description});
    r.checks.push_back(check_equal("h(M) = 3", cap.h_full, Rational(3)));
    r.checks.push_back(check_equal("R_CO = 9/4", cap.r_co, Rational(9, 4)));
    r.checks.push_back(check_equal("C_SK = 3/4", cap.c_sk, Rational(3, 4)));
    r.checks.push_back(check_equal("I(A) = 1", md.value, Rational(1)));
    r.checks.push_back({"exactly six tight rows", cap.tight_masks == builtins::helper_example_tight_rows(), ""});
    bool dual_ok = true;
    const auto six = builtins::helper_example_tight_rows();
    for (std::size_t i = 0; i < cap.dual.size(); ++i) {
      const bool in_six = std::find(six.begin(), six.end(), cap.family.members[i]) != six.end();
      dual_ok = dual_ok && cap.dual[i] == (in_six ? Rational(1, 4) : Rational(0));
    }
    r.checks.push_back({"dual is 1/4 on the six tight rows and 0 elsewhere", dual_ok, ""});
  }
  r.checks.push_back({"strict gap C_SK < I(A)", cap.c_sk < md.value, "gap " + to_string(*r.gap)});
  r.checks.push_back({"partition search finds no witness", !search.tight,
                      std::to_string(search.partitions_tried) + " partitions tried"});
  return r;
}

inline Report audit_report() {
  Report table_section = helper_example_report("paper-h");
  Report generative = helper_example_report("generative");
  const EntropyOracle table = EntropyOracle::from_vector(builtins::cardinality_table_vector());
  const EntropyOracle xor_pairs = EntropyOracle::from_linear(make_counterexample().source);
  const SubsetMask active = builtins::helper_example_active();

  Report r = base_report("audit", "builtin:cardinality-table vs builtin:xor-pairs", xor_pairs, active);
  r.source_type = "entropy_vector+linear_gf2";
  r.audit.emplace();
  std::vector<SubsetMask> masks = build_family(6, active).members;
  masks.push_back(SubsetMask::full(6));
  for (const auto& mask : masks) {
    AuditRow row{mask, table.h(mask), xor_pairs.h(mask), false};
    row.differs = row.h_table != row.h_generative;
    r.audit->push_back(row);
  }
  const auto& tv = *table_section.validity;
  r.checks.push_back({"cardinality table is not supermodular", !tv.valid && tv.cited_b1.has_value(), tv.description});
  r.checks.push_back({"generative source is a valid entropy function", generative.validity->valid,
                      generative.validity->description});
  r.sections.push_back(std::move(table_section));
  r.sections.push_back(std::move(generative));
  return r;
}

inline std::string command_line(const Command& cmd) {
  std::string s = cmd.verb;
  if (!cmd.path.empty()) s += " " + cmd.path;
  if (cmd.constructive) s += " --constructive";
  if (cmd.no_validate) s += " --no-validate";
  return s;
}

}  // namespace cli_detail

inline Outcome execute(const Command& cmd) {
  using namespace cli_detail;
  Outcome out;

  if (cmd.verb == "counterexample") {
    out.report = helper_example_report(cmd.mode);
  } else if (cmd.verb == "audit") {
    out.report = audit_report();
  } else if (cmd.verb == "validate") {
    const LoadedSource src = parse_source_file(cmd.path, false);
    out.report = base_report(command_line(cmd), cmd.path, src.oracle, src.document.active);
    add_validity(out.report, src.validity);
    if (!src.validity.valid()) out.code = ExitCode::kInvalidInput;
    return out;
  } else if (cmd.verb == "solve" || cmd.verb == "mdb" || cmd.verb == "tight") {
    const LoadedSource src = parse_source_file(cmd.path, !cmd.no_validate);
    const SubsetMask active = src.document.active;
    Report& r = out.report;
    r = base_report(command_line(cmd), cmd.path, src.oracle, active);
    add_validity(r, src.validity);
    if (cmd.verb == "solve") {
      add_capacity(r, r_co(src.oracle, active));
    } else if (cmd.verb == "mdb") {
      r.h_full = src.oracle.h(src.oracle.full());
      add_bound(r, mutual_dependence_bound(src.oracle, active));
    } else {
      if (cmd.constructive && !active.is_full())
        throw InputError("--constructive needs every terminal active");
      const CapacityReport cap = r_co(src.oracle, active);
      add_capacity(r, cap);
      const MutualDependenceResult md = mutual_dependence_bound(src.oracle, active);
      add_bound(r, md);
      const TightnessVerdict direct = check_bound(src.oracle, active);
      r.gap = direct.gap;
      r.tight = direct.tight;
      if (direct.witness) {
        r.witness_partition = direct.witness->partition;
        r.witness_rates = direct.witness->rates;
      }
      const TightnessVerdict search = witness_by_partition_search(src.oracle, active);
      r.search_found_witness = search.tight;
      r.partitions_searched = search.partitions_tried;
      r.checks.push_back({"direct comparison and partition search agree", direct.tight == search.tight,
                          std::string("direct: ") + (direct.tight ? "tight" : "loose") +
                              ", search: " + (search.tight ? "witness found" : "no witness")});
      if (cmd.constructive) {
        const ConstructedPartition cp = construct_partition_from_dual(cap.solution, cap.family, src.oracle);
        r.constructed_partition = cp.partition;
        r.constructed_value = partition_dependence(src.oracle, cp.partition).value;
        r.checks.push_back({"partition from dual attains C_SK", src.oracle.equal(*r.constructed_value, cap.c_sk),
                            "I = " + to_string(*r.constructed_value)});
      }
    }
  } else {
    throw InputError("unknown command \"" + cmd.verb + "\"");
  }
  if (!out.report.all_checks_pass()) out.code = ExitCode::kAssertionFailed;
  return out;
}

/// Full command-line entry point. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact secret-key capacity, omniscience rate and mutual-dependence bound", "omniscio"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1, 1);
  Command cmd;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", cmd.path, "source JSON document")->required(); };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", cmd.json, "emit the machine-readable report"); };
  auto add_novalidate = [&](CLI::App* sub) {
    sub->add_flag("--no-validate", cmd.no_validate, "accept entropy tables that are not valid entropy functions");
  };

  auto* solve = app.add_subcommand("solve", "smallest omniscience rate and secret-key capacity");
  add_file(solve);
  add_json(solve);
  add_novalidate(solve);
  auto* mdb = app.add_subcommand("mdb", "mutual-dependence upper bound I(A) and its minimizers");
  add_file(mdb);
  add_json(mdb);
  add_novalidate(mdb);
  auto* tight = app.add_subcommand("tight", "is the bound tight? (direct comparison and partition search)");
  add_file(tight);
  tight->add_flag("--constructive", cmd.constructive, "also build the partition from the optimal dual");
  add_json(tight);
  add_novalidate(tight);
  auto* counter = app.add_subcommand("counterexample", "six-terminal helper example");
  counter->add_option("--mode", cmd.mode, "paper-h (cardinality table) or generative (XOR source)")
      ->required()
      ->check(CLI::IsMember({"paper-h", "generative"}));
  add_json(counter);
  auto* audit = app.add_subcommand("audit", "compare the cardinality table with the generative source");
  add_json(audit);
  auto* validate = app.add_subcommand("validate", "check normalization, monotonicity and supermodularity");
  add_file(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInvalidInput);
  }
  cmd.verb = app.get_subcommands().front()->get_name();

  try {
    Outcome outcome = execute(cmd);
    render_report(outcome.report, cmd.json ? ReportFormat::kJson : ReportFormat::kText, out);
    if (outcome.code == ExitCode::kInvalidInput && outcome.report.validity)
      err << "error: source rejected, " << outcome.report.validity->description << "\n";
    return static_cast<int>(outcome.code);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInvalidInput);
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed source document: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInvalidInput);
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kAssertionFailed);
  } catch (const ContractError& e) {
    err << "internal contract violation: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kContractViolation);
  }
}

}  // namespace omniscio

#endif  // OMNISCIO_CLI_HPP
