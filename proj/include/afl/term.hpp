#pragma once

// Łukasiewicz terms over the involutive-monoid signature {0, *, ⊕} plus the
// variables X1, X2, ...  Derived connectives are expanded on construction,
// so every Term is built from the four primitive node kinds only.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "afl/error.hpp"

namespace afl {

class Term {
 public:
  enum class Kind : std::uint8_t { Zero, Var, Neg, Oplus };

  static Term zero();
  static Term var(unsigned index);
  static Term neg(Term arg);
  static Term oplus(Term left, Term right);

  Kind kind() const noexcept;
  unsigned index() const noexcept;
  const Term& arg() const noexcept;
  const Term& left() const noexcept;
  const Term& right() const noexcept;

  /// Address of the shared node. Subterms reused by the derived connectives
  /// share nodes, so interpreters memoize on this key.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  unsigned index = 0;
  Term children[2];
};

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline unsigned Term::index() const noexcept { return node_->index; }
inline const Term& Term::arg() const noexcept { return node_->children[0]; }
inline const Term& Term::left() const noexcept { return node_->children[0]; }
inline const Term& Term::right() const noexcept { return node_->children[1]; }

/// ||φ||: number of symbol occurrences in the canonical rendering. Each
/// variable counts once regardless of how many digits its index has.
struct TermSize {
  std::uint64_t value = 0;
  auto operator<=>(const TermSize&) const = default;
};

Term parse(std::string_view input);
std::string render(const Term& t);
TermSize size(const Term& t);
unsigned max_variable(const Term& t);

// Derived connectives, expanded into {0, *, ⊕}.
Term one();
Term times(const Term& a, const Term& b);   // (a* ⊕ b*)*
Term minus(const Term& a, const Term& b);   // a ⊙ b* written (a* ⊕ b)*
Term join(const Term& a, const Term& b);    // (a* ⊕ b)* ⊕ b
Term meet(const Term& a, const Term& b);    // (a* ∨ b*)*
Term dist(const Term& a, const Term& b);    // (a ⊙ b*) ⊕ (b ⊙ a*)

// Formula transformers between the decision problems.
Term reduce_order(const Term& phi, const Term& psi);
Term reduce_word(const Term& phi, const Term& psi);
Term reduce_eccentricity(const Term& alpha, const Term& beta);
Term reduce_central(const Term& phi);
/// φ ∧ ⋁_{i≤n} (X_i ∧ X_i*). Requires n ≥ max_variable(φ) and n ≥ 1.
Term reduce_rho(const Term& phi, unsigned n);

}  // namespace afl
