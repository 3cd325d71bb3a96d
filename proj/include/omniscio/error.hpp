#ifndef OMNISCIO_ERROR_HPP
#define OMNISCIO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace omniscio {

// Exit codes of the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kAssertionFailed = 1,
  kInvalidInput = 2,
  kContractViolation = 3,
};

/// Bad user input: malformed files, out-of-range subsets, invalid sources.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation produced a result that contradicts a proven property
/// (for instance an infeasible constraint family or a failed duality check).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A reproduction check did not hold (expected value mismatch).
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_input(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline void require_contract(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

}  // namespace omniscio

#endif  // OMNISCIO_ERROR_HPP
