#pragma once

// Decision procedures for the seven problems about coded projection classes:
//   P1 word (φ = ψ)         P2 order (φ ≤ ψ)        P3 eccentricity (φ ⊑ ψ)
//   P4 zero (φ = 0)         P5 central (φ Boolean)  P6 nontrivial (φ ∉ {0,1})
//   P7 central nontrivial
//
// decide() answers each problem from the backend's own semantics (pointwise
// on a common refinement for free algebras, in the group order for the
// chains). decide_by_reduction_path() instead rewrites the instance with the
// formula transformers of term.hpp and answers the target problem, so the
// two routes check each other.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afl/gamma.hpp"

namespace afl {

enum class Problem { P1 = 1, P2, P3, P4, P5, P6, P7 };

std::size_t arity(Problem p);
std::string problem_name(Problem p);  // "p1" ... "p7"
std::optional<Problem> parse_problem(std::string_view name);

struct Witness {
  /// Free backends: a rational point of the cube, with the values of the
  /// instance terms there.
  std::optional<Point> point;
  std::vector<Rational> values;
  /// Chain backends: the values of the instance terms.
  std::vector<GammaElement> elements;
};

struct Verdict {
  bool yes = false;
  std::optional<Witness> witness;
  std::uint64_t quotients_consumed = 0;
  std::uint64_t cells_built = 0;
};

struct DecisionOptions {
  std::size_t cell_budget = 1'000'000;
};

Verdict decide(Problem problem, const Backend& backend, std::span<const Term> terms,
               const Assignment& asg, const DecisionOptions& options = {});

/// Answers `problem` by transforming the instance into one of `path`.
/// Available: P1, P2, P3, P5 → P4; P4 → P1, P2, P3; P4 → P5 on the chain
/// backends when the assignment generates no two-element quotient.
Verdict decide_by_reduction_path(Problem problem, Problem path, const Backend& backend,
                                 std::span<const Term> terms, const Assignment& asg,
                                 const DecisionOptions& options = {});

/// Re-evaluates the instance at the witness and checks that it certifies
/// the verdict. False when there is no witness.
bool witness_confirms(Problem problem, const Backend& backend, std::span<const Term> terms,
                      const Assignment& asg, const Verdict& verdict);

}  // namespace afl
