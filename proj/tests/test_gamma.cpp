#include <doctest.h>

#include <random>

#include "afl/error.hpp"
#include "afl/gamma.hpp"
#include "support/oracles.hpp"

using namespace afl;
using testing::KnownTheta;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an afl::Error");
  return ErrorCode::InvalidArgument;
}

GammaAlgebra golden() { return GammaAlgebra::effros_shen(cf_from_surd(-1, 5, 2)); }

std::vector<GammaAlgebra> backends() {
  return {GammaAlgebra::chain(1),       GammaAlgebra::chain(4),
          GammaAlgebra::chain(7),       GammaAlgebra::behncke_leptin(2, 3),
          GammaAlgebra::behncke_leptin(3, 1), golden(),
          GammaAlgebra::effros_shen(cf_from_surd(-1, 2, 1)),
          GammaAlgebra::effros_shen(CfNumber::inv_e())};
}

/// Prime-quotient eccentricity order on a chain: a ⊑ b iff a lies on b's
/// side of b*, no further from the midpoint than b.
bool ecc_leq(const GammaAlgebra& g, const GammaElement& a, const GammaElement& b) {
  int side = g.compare(b, g.neg(b));  // > 0 when b < b*
  if (side > 0) return g.leq(a, b);
  if (side < 0) return g.leq(b, a);
  return true;
}

}  // namespace

TEST_CASE("chain arithmetic") {
  auto l4 = GammaAlgebra::chain(4);
  CHECK(l4.oplus(l4.element(3), l4.element(2)) == l4.element(4));
  CHECK(l4.oplus(l4.element(1), l4.element(2)) == l4.element(3));
  CHECK(l4.neg(l4.element(1)) == l4.element(3));
  CHECK(l4.leq(l4.element(1), l4.element(3)));
  CHECK_FALSE(l4.leq(l4.element(3), l4.element(1)));
  CHECK(code_of([&] { l4.element(5); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { l4.element(-1); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([] { GammaAlgebra::chain(0); }) == ErrorCode::InvalidArgument);
  CHECK(l4.format(l4.element(3)) == "3");
}

TEST_CASE("Behncke-Leptin arithmetic is lexicographic") {
  auto bl = GammaAlgebra::behncke_leptin(2, 3);
  CHECK(bl.oplus(bl.element(1, 5), bl.element(1, -1)) == bl.element(2, 3));  // (2,4) clipped
  CHECK(bl.oplus(bl.element(1, 5), bl.element(1, -3)) == bl.element(2, 2));
  CHECK(bl.oplus(bl.element(0, 1), bl.element(0, 7)) == bl.element(0, 8));
  CHECK(bl.neg(bl.element(0, 1)) == bl.element(2, 2));
  CHECK(bl.leq(bl.element(0, 1000), bl.element(1, -1000)));
  CHECK(bl.leq(bl.element(1, -1), bl.element(1, 0)));
  CHECK(code_of([&] { bl.element(0, -1); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { bl.element(2, 4); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { bl.element(3, -100); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([] { GammaAlgebra::behncke_leptin(0, 5); }) == ErrorCode::InvalidArgument);
  CHECK(bl.format(bl.element(1, -2)) == "(1,-2)");
  CHECK(bl.parse_element(" ( 1 , -2 ) ") == bl.element(1, -2));
}

TEST_CASE("Effros-Shen arithmetic on the golden ratio conjugate") {
  auto g = golden();
  auto theta = g.element(0, 1);
  CHECK(g.neg(theta) == g.element(1, -1));
  CHECK(g.oplus(theta, theta) == g.unit());  // 2θ > 1
  auto t2 = g.element(1, -1);                // 1 - θ ≈ 0.382
  CHECK(g.oplus(t2, t2) == g.element(2, -2));
  CHECK(g.leq(t2, theta));
  CHECK(code_of([&] { g.element(0, 2); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { g.element(-1, 1); }) == ErrorCode::ElementOutOfRange);
  CHECK(g.format(t2) == "1-theta");
  CHECK(g.format(g.element(2, -2)) == "2-2*theta");
  CHECK(g.format(theta) == "theta");
  CHECK(g.parse_element("1 - theta") == t2);
  CHECK(g.parse_element("-1+2*theta") == g.element(-1, 2));
  CHECK(g.parse_element("theta+theta-1") == g.element(-1, 2));
}

TEST_CASE("interpretation in chain backends") {
  auto g = golden();
  // X1 defaults to θ: θ ∧ θ* = 1 - θ
  CHECK(interpret(parse("(X1&X1*)"), g, {}) == g.element(1, -1));
  CHECK(interpret(parse("(X1+X1)"), g, {}) == g.unit());

  auto l4 = GammaAlgebra::chain(4);
  Assignment asg{{1, l4.element(1)}, {2, l4.element(3)}};
  CHECK(interpret(parse("X1.X2"), l4, asg) == l4.element(0));
  CHECK(interpret(parse("X2-X1"), l4, asg) == l4.element(2));
  CHECK(interpret(parse("X1|X2"), l4, asg) == l4.element(3));
  CHECK(code_of([&] { interpret(parse("X3"), l4, asg); }) == ErrorCode::UnassignedVariable);
  CHECK(code_of([&] { interpret(parse("X1"), g, asg); }) == ErrorCode::BackendMismatch);
}

TEST_CASE("assignment parsing") {
  auto bl = GammaAlgebra::behncke_leptin(2, 3);
  Assignment asg = parse_assignment("# preset\nX1 = (1,0)\n\nX2=(0,1)  # small\n", bl);
  CHECK(asg.size() == 2);
  CHECK(asg.at(1) == bl.element(1, 0));
  CHECK(asg.at(2) == bl.element(0, 1));
  CHECK(parse_assignment("X1 = 2; X3 = 0", GammaAlgebra::chain(3)).size() == 2);
  CHECK(code_of([&] { parse_assignment("X1 = (3,0)", bl); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { parse_assignment("Y1 = (1,0)", bl); }) != ErrorCode::EmptyInput);
  CHECK(code_of([&] { parse_assignment("X1 (1,0)", bl); }) != ErrorCode::EmptyInput);
}

TEST_CASE("Effros-Shen addition agrees with interval arithmetic") {
  std::mt19937_64 rng(5);
  for (KnownTheta which : {KnownTheta::Golden, KnownTheta::Sqrt2Minus1, KnownTheta::InvE}) {
    GammaAlgebra g = which == KnownTheta::Golden        ? golden()
                     : which == KnownTheta::Sqrt2Minus1 ? GammaAlgebra::effros_shen(cf_from_surd(-1, 2, 1))
                                                        : GammaAlgebra::effros_shen(CfNumber::inv_e());
    for (int i = 0; i < 300; ++i) {
      auto x = testing::random_element(rng, g, 1000);
      auto y = testing::random_element(rng, g, 1000);
      CHECK(testing::interval_sign(which, x.a, x.b) >= 0);
      CHECK(testing::interval_sign(which, 1 - x.a, -x.b) >= 0);
      bool saturates = testing::interval_sign(which, 1 - x.a - y.a, -x.b - y.b) <= 0;
      auto s = g.oplus(x, y);
      if (saturates) {
        CHECK(s == g.unit());
      } else {
        CHECK(s == GammaElement{GammaKind::EffrosShen, x.a + y.a, x.b + y.b});
      }
      CHECK(g.compare(x, y) == testing::interval_sign(which, y.a - x.a, y.b - x.b));
    }
  }
}

TEST_CASE("property: MV axioms and the order law in every chain backend") {
  std::mt19937_64 rng(11);
  for (const auto& g : backends()) {
    CAPTURE(g.describe());
    for (int i = 0; i < 300; ++i) {
      auto x = testing::random_element(rng, g);
      auto y = testing::random_element(rng, g);
      auto z = testing::random_element(rng, g);
      CHECK(g.oplus(x, g.oplus(y, z)) == g.oplus(g.oplus(x, y), z));
      CHECK(g.oplus(x, y) == g.oplus(y, x));
      CHECK(g.oplus(x, g.zero()) == x);
      CHECK(g.neg(g.neg(x)) == x);
      CHECK(g.oplus(x, g.neg(g.zero())) == g.neg(g.zero()));
      CHECK(g.oplus(g.neg(g.oplus(g.neg(x), y)), y) == g.oplus(g.neg(g.oplus(g.neg(y), x)), x));
      CHECK(g.leq(x, y) == (g.oplus(g.neg(x), y) == g.unit()));
      CHECK((g.leq(x, y) || g.leq(y, x)));
    }
  }
}

TEST_CASE("Boolean elements of a chain are exactly 0 and u") {
  for (std::int64_t k = 1; k <= 8; ++k) {
    auto g = GammaAlgebra::chain(k);
    for (std::int64_t j = 0; j <= k; ++j) {
      auto x = g.element(j);
      bool idempotent = g.oplus(x, x) == x;
      CHECK(idempotent == g.is_zero(g.meet(x, g.neg(x))));
      CHECK(idempotent == (j == 0 || j == k));
    }
  }
  std::mt19937_64 rng(3);
  for (const auto& g : backends()) {
    for (int i = 0; i < 500; ++i) {
      auto x = testing::random_element(rng, g);
      bool idempotent = g.oplus(x, x) == x;
      CHECK(idempotent == g.is_zero(g.meet(x, g.neg(x))));
      CHECK(idempotent == (x == g.zero() || x == g.unit()));
    }
  }
}

TEST_CASE("eccentricity-minimal elements of small chains are Boolean") {
  for (std::int64_t k = 1; k <= 6; ++k) {
    auto g = GammaAlgebra::chain(k);
    for (std::int64_t j = 0; j <= k; ++j) {
      auto x = g.element(j);
      bool minimal = true;
      for (std::int64_t i = 0; i <= k; ++i) {
        if (i != j && ecc_leq(g, g.element(i), x)) minimal = false;
      }
      CHECK(ecc_leq(g, x, x));
      CHECK(minimal == (g.oplus(x, x) == x));
    }
  }
}

TEST_CASE("overflow is reported, not wrapped") {
  auto bl = GammaAlgebra::behncke_leptin(1, 1);
  auto big = bl.element(0, INT64_MAX - 1);
  CHECK(code_of([&] { bl.oplus(big, big); }) == ErrorCode::ArithmeticOverflow);
}
