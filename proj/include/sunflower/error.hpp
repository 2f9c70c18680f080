#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sunflower {

// Error conditions surfaced by the library. The CLI maps these onto exit
// codes: parse errors -> 2, budget/guard errors -> 3, everything else -> 1.
enum class errc {
  // domain
  not_a_sunflower,
  not_uniform,
  not_infinite,
  uncertified,
  oracle_incomplete,
  uncertified_core,
  bound_violation,
  uncertified_bound,
  overflow,
  pool_infinite,
  invalid_node,
  // parse
  syntax_error,
  arity_error,
  non_positive_parameter,
  // budget / guard
  budget_exhausted,
  too_large,
  pool_too_large,
};

constexpr const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_sunflower: return "NotASunflower";
    case errc::not_uniform: return "NotUniform";
    case errc::not_infinite: return "NotInfinite";
    case errc::uncertified: return "Uncertified";
    case errc::oracle_incomplete: return "OracleIncomplete";
    case errc::uncertified_core: return "UncertifiedCore";
    case errc::bound_violation: return "BoundViolation";
    case errc::uncertified_bound: return "UncertifiedBound";
    case errc::overflow: return "Overflow";
    case errc::pool_infinite: return "PoolInfinite";
    case errc::invalid_node: return "InvalidNode";
    case errc::syntax_error: return "SyntaxError";
    case errc::arity_error: return "ArityError";
    case errc::non_positive_parameter: return "NonPositiveParameter";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::too_large: return "TooLarge";
    case errc::pool_too_large: return "PoolTooLarge";
  }
  return "Error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

// Budgets meter enumeration work: one unit per candidate set examined.
// Exhaustion is reported by the consumer (flag or retryable error), the
// budget itself never throws.
struct Budget {
  static constexpr std::uint64_t kDefault = 100000;

  std::uint64_t remaining = kDefault;

  Budget() = default;
  explicit Budget(std::uint64_t r) : remaining(r) {}

  bool try_consume() {
    if (remaining == 0) return false;
    --remaining;
    return true;
  }
};

}  // namespace sunflower
