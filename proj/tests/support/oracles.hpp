#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <cstdint>
#include <random>
#include <vector>

#include "afl/gamma.hpp"
#include "afl/rational.hpp"
#include "afl/term.hpp"

namespace afl::testing {

/// A term flattened into a straight-line program over its distinct nodes.
/// Evaluation at a rational point p works in the chain Ł_q, q the common
/// denominator of p: every intermediate value is an integer multiple of 1/q.
class CompiledTerm {
 public:
  explicit CompiledTerm(const Term& t);

  /// Value at j/q (one numerator per coordinate), scaled by q.
  std::int64_t eval_scaled(const std::vector<std::int64_t>& numerators, std::int64_t q) const;
  Rational eval(const Point& p) const;

 private:
  struct Op {
    Term::Kind kind;
    unsigned index;  // variable index, or operand slots
    std::uint32_t a = 0, b = 0;
  };
  std::vector<Op> ops_;
};

inline Rational eval_direct(const Term& t, const Point& p) { return CompiledTerm(t).eval(p); }

/// All rationals in [0,1] with denominator ≤ max_den, increasing.
std::vector<Rational> farey_points(std::int64_t max_den);

/// Random term over X1..X_vars of size at most max_size, using the derived
/// connectives as well as 0, *, ⊕.
Term random_term(std::mt19937_64& rng, unsigned vars, std::uint64_t max_size);

/// Like random_term, but compound subterms are checked on a small grid and
/// rebuilt (a few times) when small ones come out constant or larger ones
/// affine. Plain random terms mostly collapse to 0, 1 or a single affine
/// piece; these keep their breakpoints.
Term random_rich_term(std::mt19937_64& rng, unsigned vars, std::uint64_t max_size);

/// Random point of [0,1]^n with denominators ≤ max_den.
Point random_point(std::mt19937_64& rng, std::size_t n, std::int64_t max_den);

enum class KnownTheta { Golden, Sqrt2Minus1, InvE };

/// Sign of a + bθ from an MPFR enclosure of θ with ≥ 60 correct decimal
/// digits. Returns 0 only when a = b = 0; aborts if the enclosure cannot
/// decide (never happens for integer a, b of moderate size).
int interval_sign(KnownTheta which, long a, long b);

/// Whether θ > p/q, decided from the same enclosure.
bool interval_greater(KnownTheta which, const Rational& r);

/// Random element of a chain backend. Effros-Shen elements a + bθ have
/// |b| ≤ spread; Behncke-Leptin elements (a, b) have |b| ≤ spread.
GammaElement random_element(std::mt19937_64& rng, const GammaAlgebra& algebra,
                            std::int64_t spread = 50);

}  // namespace afl::testing
