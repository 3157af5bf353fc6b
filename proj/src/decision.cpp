#include "afl/decision.hpp"

#include <algorithm>
#include <array>

#include "afl/error.hpp"

namespace afl {

namespace {

const Rational kHalf(1, 2);

std::size_t free_dimension(const FreeBackend& free, std::span<const Term> terms) {
  if (free.n != 0) return free.n;
  unsigned n = 1;
  for (const auto& t : terms) n = std::max(n, max_variable(t));
  return n;
}

Witness point_witness(Point p, std::span<const PwlComplex> fs) {
  Witness w;
  for (const auto& f : fs) w.values.push_back(eval_at(f, p));
  w.point = std::move(p);
  return w;
}

Point midpoint(const Point& a, const Point& b) {
  Point m(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) m[k] = (a[k] + b[k]) * kHalf;
  return m;
}

bool is_boolean_value(const Rational& v) { return sgn(v) == 0 || v == 1; }

/// A point where f ∉ {0,1}, or nothing when f is constantly 0 or 1.
std::optional<Point> non_boolean_point(const PwlComplex& f) {
  for (const auto& c : f.cells()) {
    const Point* zero_vertex = nullptr;
    const Point* one_vertex = nullptr;
    for (const auto& v : c.vertices) {
      Rational val = c.form(v);
      if (!is_boolean_value(val)) return v;
      (sgn(val) == 0 ? zero_vertex : one_vertex) = &v;
    }
    if (zero_vertex && one_vertex) return midpoint(*zero_vertex, *one_vertex);
  }
  return std::nullopt;
}

/// Where the pointwise eccentricity condition a ⊑ b fails on a cell of
/// the refinement (b is either ≤ 1/2 or ≥ 1/2 throughout the cell).
std::optional<Point> eccentricity_violation(const Cell& cell, const AffineForm& a,
                                            const AffineForm& b) {
  bool below = false, above = false;
  for (const auto& v : cell.vertices) {
    int s = cmp(b(v), kHalf);
    below |= s < 0;
    above |= s > 0;
  }
  if (!below && !above) return std::nullopt;  // b ≡ 1/2: no constraint
  // On the open part where b < 1/2 we need a ≤ b, where b > 1/2 we need a ≥ b.
  const int bad = below ? 1 : -1;
  auto gap = [&](const Point& p) { return Rational(a(p) - b(p)); };
  Point centroid(cell.vertices[0].size());
  for (const auto& v : cell.vertices) {
    for (std::size_t k = 0; k < v.size(); ++k) centroid[k] += v[k];
  }
  for (auto& x : centroid) x /= static_cast<long>(cell.vertices.size());
  Rational gc = gap(centroid);
  for (const auto& v : cell.vertices) {
    Rational gv = gap(v);
    if (sgn(gv) != bad) continue;
    if (cmp(b(v), kHalf) != 0) return v;
    // The segment from v to the centroid enters the open region at once; pick
    // a point on it where the gap still has the offending sign.
    if (sgn(gc) == bad) return centroid;
    Rational t = gv / (2 * (gv - gc));
    Point p(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) p[k] = v[k] + t * (centroid[k] - v[k]);
    return p;
  }
  return std::nullopt;
}

Verdict decide_free(Problem problem, std::size_t n, std::span<const Term> terms,
                    ComplexBudget& budget) {
  std::vector<PwlComplex> fs;
  for (const auto& t : terms) fs.push_back(interpret_free(t, n, budget));
  Verdict v;
  auto no_at = [&](Point p) {
    v.yes = false;
    v.witness = point_witness(std::move(p), fs);
  };
  switch (problem) {
    case Problem::P4: {
      auto p = find_nonzero(fs[0]);
      v.yes = !p;
      if (p) no_at(std::move(*p));
      break;
    }
    case Problem::P1:
    case Problem::P2: {
      v.yes = true;
      for (const auto& piece : overlay(fs[0], fs[1], budget)) {
        for (const auto& p : piece.cell.vertices) {
          int c = cmp(piece.cell.form(p), piece.other(p));
          if (problem == Problem::P1 ? c != 0 : c > 0) {
            no_at(p);
            return v;
          }
        }
      }
      break;
    }
    case Problem::P3: {
      v.yes = true;
      for (const auto& piece : overlay(fs[0], fs[1], budget)) {
        auto [low, high] = split_cell(piece.cell, piece.other, kHalf);
        for (const auto& part : {low, high}) {
          if (!part) continue;
          if (auto p = eccentricity_violation(*part, piece.cell.form, piece.other)) {
            no_at(std::move(*p));
            return v;
          }
        }
      }
      break;
    }
    case Problem::P5: {
      auto p = non_boolean_point(fs[0]);
      v.yes = !p;
      if (p) no_at(std::move(*p));
      break;
    }
    case Problem::P6:
    case Problem::P7: {
      auto p = non_boolean_point(fs[0]);
      if (problem == Problem::P7) {
        // Boolean elements of a free algebra are the constants 0 and 1.
        v.yes = false;
        if (p) no_at(std::move(*p));
        break;
      }
      v.yes = p.has_value();
      if (p) v.witness = point_witness(std::move(*p), fs);
      break;
    }
  }
  return v;
}

bool gamma_holds(Problem problem, const GammaAlgebra& alg, std::span<const GammaElement> xs) {
  switch (problem) {
    case Problem::P1: return xs[0] == xs[1];
    case Problem::P2: return alg.leq(xs[0], xs[1]);
    case Problem::P3: {
      const GammaElement& a = xs[0];
      const GammaElement& b = xs[1];
      int side = alg.compare(b, alg.neg(b));  // sign of b* - b
      if (side > 0) return alg.leq(a, b);
      if (side < 0) return alg.leq(b, a);
      return true;
    }
    case Problem::P4: return alg.is_zero(xs[0]);
    case Problem::P5: return alg.oplus(xs[0], xs[0]) == xs[0];
    case Problem::P6: return !alg.is_zero(xs[0]) && xs[0] != alg.unit();
    case Problem::P7:
      return gamma_holds(Problem::P5, alg, xs) && gamma_holds(Problem::P6, alg, xs);
  }
  return false;
}

Verdict decide_gamma(Problem problem, const GammaAlgebra& alg, std::span<const Term> terms,
                     const Assignment& asg) {
  std::vector<GammaElement> xs;
  for (const auto& t : terms) xs.push_back(interpret(t, alg, asg));
  Verdict v;
  v.yes = gamma_holds(problem, alg, xs);
  if (!v.yes || problem == Problem::P6) v.witness = Witness{std::nullopt, {}, xs};
  return v;
}

void check_arity(Problem problem, std::span<const Term> terms) {
  if (terms.size() != arity(problem)) {
    throw Error(ErrorCode::ArityMismatch,
                problem_name(problem) + " takes " + std::to_string(arity(problem)) +
                    " term(s), got " + std::to_string(terms.size()));
  }
}

/// Condition that a witness must exhibit, given the term values there.
/// `trivial` reports a value known to be exactly 0 or 1 in the algebra,
/// which only chain witnesses can certify.
template <typename Less, typename Eq, typename IsBool, typename Side, typename Trivial>
bool witness_condition(Problem problem, bool yes, std::size_t count, Less less, Eq eq,
                       IsBool is_bool, Side side, Trivial trivial) {
  switch (problem) {
    case Problem::P1: return !yes && count == 2 && !eq(0, 1);
    case Problem::P2: return !yes && count == 2 && less(1, 0);
    case Problem::P3: {
      if (yes || count != 2) return false;
      int s = side(1);  // > 0 when value 1 sits below the centre
      return (s > 0 && less(1, 0)) || (s < 0 && less(0, 1));
    }
    case Problem::P4: return !yes && count == 1 && !is_bool(0, true);
    case Problem::P5: return !yes && count == 1 && !is_bool(0, false);
    case Problem::P6: return count == 1 && (yes ? !is_bool(0, false) : trivial(0));
    case Problem::P7: return !yes && count == 1 && (!is_bool(0, false) || trivial(0));
  }
  return false;
}

}  // namespace

std::size_t arity(Problem p) { return p <= Problem::P3 ? 2 : 1; }

std::string problem_name(Problem p) { return "p" + std::to_string(static_cast<int>(p)); }

std::optional<Problem> parse_problem(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'p' || name[0] == 'P') && name[1] >= '1' &&
      name[1] <= '7') {
    return static_cast<Problem>(name[1] - '0');
  }
  return std::nullopt;
}

Verdict decide(Problem problem, const Backend& backend, std::span<const Term> terms,
               const Assignment& asg, const DecisionOptions& options) {
  check_arity(problem, terms);
  if (const auto* free = std::get_if<FreeBackend>(&backend)) {
    ComplexBudget budget{options.cell_budget, 0};
    Verdict v = decide_free(problem, free_dimension(*free, terms), terms, budget);
    v.cells_built = budget.cells_built;
    return v;
  }
  const auto& alg = std::get<GammaAlgebra>(backend);
  std::uint64_t before = alg.kind() == GammaKind::EffrosShen ? alg.theta().quotients_consumed() : 0;
  Verdict v = decide_gamma(problem, alg, terms, asg);
  if (alg.kind() == GammaKind::EffrosShen) {
    v.quotients_consumed = alg.theta().quotients_consumed() - before;
  }
  return v;
}

Verdict decide_by_reduction_path(Problem problem, Problem path, const Backend& backend,
                                 std::span<const Term> terms, const Assignment& asg,
                                 const DecisionOptions& options) {
  check_arity(problem, terms);
  if (problem == path) return decide(problem, backend, terms, asg, options);
  auto unary = [&](Problem target, const Term& t) {
    std::array<Term, 1> one_term{t};
    return decide(target, backend, one_term, asg, options);
  };
  auto binary = [&](Problem target, const Term& a, const Term& b) {
    std::array<Term, 2> two{a, b};
    return decide(target, backend, two, asg, options);
  };
  if (path == Problem::P4) {
    switch (problem) {
      case Problem::P1: return unary(Problem::P4, reduce_word(terms[0], terms[1]));
      case Problem::P2: return unary(Problem::P4, reduce_order(terms[0], terms[1]));
      case Problem::P3: return unary(Problem::P4, reduce_eccentricity(terms[0], terms[1]));
      case Problem::P5: return unary(Problem::P4, reduce_central(terms[0]));
      default: break;
    }
  }
  if (problem == Problem::P4) {
    switch (path) {
      case Problem::P1:
      case Problem::P2:
      case Problem::P3: return binary(path, terms[0], Term::zero());
      case Problem::P5: {
        const auto* alg = std::get_if<GammaAlgebra>(&backend);
        if (!alg) {
          throw Error(ErrorCode::NoKnownReduction,
                      "zero-to-central reduction is unsound on free algebras, which have "
                      "two-element quotients");
        }
        unsigned n = std::max(1u, max_variable(terms[0]));
        Assignment effective = alg->default_assignment();
        for (const auto& [i, x] : asg) effective[i] = x;
        bool generator_off_centre = false;
        for (unsigned i = 1; i <= n; ++i) {
          auto it = effective.find(i);
          if (it == effective.end()) {
            throw Error(ErrorCode::UnassignedVariable,
                        "zero-to-central reduction needs X" + std::to_string(i) + " assigned");
          }
          generator_off_centre |= alg->oplus(it->second, it->second) != it->second;
        }
        if (!generator_off_centre) {
          throw Error(ErrorCode::NoKnownReduction,
                      "every generator is Boolean, so the generated algebra is two-valued");
        }
        return unary(Problem::P5, reduce_rho(terms[0], n));
      }
      default: break;
    }
  }
  throw Error(ErrorCode::NoKnownReduction,
              "no reduction from " + problem_name(problem) + " to " + problem_name(path));
}

bool witness_confirms(Problem problem, const Backend& backend, std::span<const Term> terms,
                      const Assignment& asg, const Verdict& verdict) {
  if (!verdict.witness || terms.size() != arity(problem)) return false;
  const Witness& w = *verdict.witness;
  if (const auto* free = std::get_if<FreeBackend>(&backend)) {
    if (!w.point || w.values.size() != terms.size()) return false;
    std::size_t n = free_dimension(*free, terms);
    std::vector<Rational> vals;
    for (const auto& t : terms) vals.push_back(eval_at(interpret_free(t, n), *w.point));
    if (vals != w.values) return false;
    return witness_condition(
        problem, verdict.yes, vals.size(),
        [&](int i, int j) { return vals[i] < vals[j]; },
        [&](int i, int j) { return vals[i] == vals[j]; },
        [&](int i, bool zero_only) {
          return zero_only ? sgn(vals[i]) == 0 : is_boolean_value(vals[i]);
        },
        [&](int i) { return cmp(kHalf, vals[i]); }, [](int) { return false; });
  }
  const auto& alg = std::get<GammaAlgebra>(backend);
  std::vector<GammaElement> xs;
  for (const auto& t : terms) xs.push_back(interpret(t, alg, asg));
  if (xs != w.elements) return false;
  return witness_condition(
      problem, verdict.yes, xs.size(),
      [&](int i, int j) { return alg.compare(xs[i], xs[j]) > 0; },
      [&](int i, int j) { return xs[i] == xs[j]; },
      [&](int i, bool zero_only) {
        return zero_only ? alg.is_zero(xs[i]) : alg.oplus(xs[i], xs[i]) == xs[i];
      },
      [&](int i) { return alg.compare(xs[i], alg.neg(xs[i])); },
      [&](int i) { return alg.is_zero(xs[i]) || xs[i] == alg.unit(); });
}

}  // namespace afl
