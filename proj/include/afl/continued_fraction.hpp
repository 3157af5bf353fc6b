#pragma once

// Irrationals θ ∈ (0,1) presented by their continued-fraction partial
// quotients [0; a1, a2, ...], and exact order decisions against rationals.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afl/rational.hpp"

namespace afl {

struct Convergent {
  Integer p;
  Integer q;
  std::size_t index = 0;
};

enum class Ordering { less, greater };
enum class Sign { negative, zero, positive };

inline constexpr std::size_t kDefaultCfBudget = 10'000;

/// A handle to a lazily expanded continued fraction. Copies share the
/// quotient cache, which is guarded by a mutex; queries behave as pure
/// functions of (source, k).
class CfNumber {
 public:
  /// Yields a_k for k ≥ 1, or nothing once the source has run dry.
  using Provider = std::function<std::optional<Integer>(std::size_t)>;

  /// [0; preperiod..., period, period, ...]
  static CfNumber periodic(std::vector<Integer> preperiod, std::vector<Integer> period);
  /// 1/e = [0; 2, 1, 2, 1, 1, 4, 1, 1, 6, ...]
  static CfNumber inv_e();
  static CfNumber stream(Provider provider, std::size_t budget);
  /// One positive integer per line (a1, a2, ...); budget = line count.
  static CfNumber stream_file(const std::string& path);

  /// a_k; a_0 is always 0. Throws StreamExhausted past the budget.
  Integer partial_quotient(std::size_t k) const;
  Convergent convergent(std::size_t k) const;

  bool is_periodic() const;
  /// Highest index available, or nothing for periodic sources.
  std::optional<std::size_t> budget() const;
  /// Caps non-periodic sources at index `cap` (the CLI's --cf-budget).
  void limit_budget(std::size_t cap) const;

  /// Total partial quotients inspected by comparisons on this number.
  std::uint64_t quotients_consumed() const;
  void note_consumed(std::uint64_t count) const;

  const std::vector<Integer>& preperiod() const;
  const std::vector<Integer>& period() const;

 private:
  struct State;
  explicit CfNumber(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

/// θ = (P + √D) / Q, expanded as an eventually periodic continued fraction.
CfNumber cf_from_surd(const Integer& P, const Integer& D, const Integer& Q);

/// Finite expansion of r ≥ 0 with last quotient ≥ 2 (except r = 1 → [1]).
std::vector<Integer> rational_cf(const Rational& r);

/// Strict order of θ against r ∈ [0,1]; never equal because θ is irrational.
Ordering compare_rational(const CfNumber& theta, const Rational& r);

Sign sign_a_plus_b_theta(const Integer& a, const Integer& b, const CfNumber& theta);

}  // namespace afl
