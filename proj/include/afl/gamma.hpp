#pragma once

// Unit intervals Γ(G, u) of totally ordered unital groups, used as concrete
// MV-algebras:
//   Effros-Shen     G = ℤ + θℤ, u = 1         element (a, b) means a + bθ
//   Behncke-Leptin  G = ℤ ×_lex ℤ, u = (m, n) element (a, b), lexicographic
//   chain Ł_k       G = ℤ, u = k              element j means j/k

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "afl/continued_fraction.hpp"
#include "afl/mcnaughton.hpp"
#include "afl/term.hpp"

namespace afl {

enum class GammaKind : std::uint8_t { EffrosShen, BehnckeLeptin, Chain };

struct GammaElement {
  GammaKind kind;
  std::int64_t a = 0;
  std::int64_t b = 0;  // always 0 for chains
  friend bool operator==(const GammaElement&, const GammaElement&) = default;
};

using Assignment = std::map<unsigned, GammaElement>;

class GammaAlgebra {
 public:
  static GammaAlgebra effros_shen(CfNumber theta);
  static GammaAlgebra behncke_leptin(std::int64_t m, std::int64_t n);
  static GammaAlgebra chain(std::int64_t k);

  GammaKind kind() const noexcept { return kind_; }
  const CfNumber& theta() const;  // Effros-Shen only
  std::int64_t unit_a() const noexcept { return unit_a_; }
  std::int64_t unit_b() const noexcept { return unit_b_; }

  /// Validates 0 ≤ x ≤ u; throws ElementOutOfRange otherwise.
  GammaElement element(std::int64_t a, std::int64_t b = 0) const;
  GammaElement zero() const { return {kind_, 0, 0}; }
  GammaElement unit() const { return {kind_, unit_a_, unit_b_}; }

  /// Sign of y - x in the group order.
  int compare(const GammaElement& x, const GammaElement& y) const;

  GammaElement oplus(const GammaElement& x, const GammaElement& y) const;
  GammaElement neg(const GammaElement& x) const;
  bool leq(const GammaElement& x, const GammaElement& y) const { return compare(x, y) >= 0; }
  bool is_zero(const GammaElement& x) const;

  // Lattice operations of the chain: min and max.
  GammaElement meet(const GammaElement& x, const GammaElement& y) const {
    return leq(x, y) ? x : y;
  }
  GammaElement join(const GammaElement& x, const GammaElement& y) const {
    return leq(x, y) ? y : x;
  }

  /// X1 ↦ θ for Effros-Shen; empty for the other kinds.
  Assignment default_assignment() const;

  /// Literal syntax shared with assignment files: "j", "(a,b)", "a+b*theta".
  std::string format(const GammaElement& x) const;
  GammaElement parse_element(const std::string& literal) const;

  std::string describe() const;

 private:
  GammaAlgebra(GammaKind kind, std::int64_t ua, std::int64_t ub, std::optional<CfNumber> theta)
      : kind_(kind), unit_a_(ua), unit_b_(ub), theta_(std::move(theta)) {}

  void check_same(const GammaElement& x) const;
  /// Sign of (a, b) as a group element.
  int group_sign(std::int64_t a, std::int64_t b) const;

  GammaKind kind_;
  std::int64_t unit_a_;
  std::int64_t unit_b_;
  std::optional<CfNumber> theta_;
};

/// Structural interpretation of φ in Γ(G, u). Variables missing from `asg`
/// fall back to default_assignment(), else UnassignedVariable.
GammaElement interpret(const Term& phi, const GammaAlgebra& algebra, const Assignment& asg);

struct FreeBackend {
  /// Number of generators; 0 stands for the universal algebra, which uses
  /// as many generators as the largest variable index in play.
  unsigned n = 1;
};

using Backend = std::variant<FreeBackend, GammaAlgebra>;
using Interpretation = std::variant<GammaElement, PwlComplex>;

Interpretation interpret(const Term& phi, const Backend& backend, const Assignment& asg,
                         ComplexBudget& budget);

/// Parses "X<i> = <literal>" lines; '#' starts a comment.
Assignment parse_assignment(const std::string& text, const GammaAlgebra& algebra);

}  // namespace afl
