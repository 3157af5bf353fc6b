#include "afl/mcnaughton.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "afl/error.hpp"

namespace afl {

namespace {

/// Rank of a set of rational row vectors (Gaussian elimination).
std::size_t rank_of(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Dimension of the affine hull of the points (-1 for the empty set).
long affine_dimension(const std::vector<const Point*>& pts, std::size_t n) {
  if (pts.empty()) return -1;
  std::vector<std::vector<Rational>> rows;
  rows.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = (*pts[i])[k] - (*pts[0])[k];
    rows.push_back(std::move(row));
  }
  return static_cast<long>(rank_of(std::move(rows), n));
}

HalfSpace make_halfspace(const std::vector<Rational>& normal, const Rational& offset) {
  Integer common = offset.get_den();
  for (const auto& a : normal) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), a.get_den_mpz_t());
  HalfSpace h;
  h.normal.reserve(normal.size());
  Integer g = 0;
  for (const auto& a : normal) {
    Integer v = a.get_num() * (common / a.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    h.normal.push_back(std::move(v));
  }
  h.offset = offset.get_num() * (common / offset.get_den());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.offset.get_mpz_t());
  if (g > 1) {
    for (auto& v : h.normal) v /= g;
    h.offset /= g;
  }
  return h;
}

/// form(x) - threshold ≥ 0 when `upper` is false, threshold - form(x) ≥ 0 otherwise.
HalfSpace halfspace_from_form(const AffineForm& form, const Rational& threshold,
                              bool upper) {
  std::vector<Rational> normal(form.coefficients.size());
  for (std::size_t i = 0; i < normal.size(); ++i) {
    normal[i] = upper ? Rational(-form.coefficients[i]) : Rational(form.coefficients[i]);
  }
  Rational offset = upper ? Rational(threshold - form.constant)
                          : Rational(form.constant - threshold);
  return make_halfspace(normal, offset);
}

std::vector<HalfSpace> cube_facets(std::size_t n) {
  std::vector<HalfSpace> facets;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> lower(n, 0), upper(n, 0);
    lower[i] = 1;   // x_i ≥ 0
    upper[i] = -1;  // 1 - x_i ≥ 0
    facets.push_back(make_halfspace(lower, 0));
    facets.push_back(make_halfspace(upper, 1));
  }
  return facets;
}

std::vector<Point> cube_vertices(std::size_t n) {
  std::vector<Point> vs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? 1 : 0;
    vs.push_back(std::move(p));
  }
  return vs;
}

/// Drops inequalities that do not support a facet, and duplicates.
void prune_facets(Cell& cell, std::size_t n) {
  std::vector<HalfSpace> kept;
  for (auto& h : cell.facets) {
    if (std::find(kept.begin(), kept.end(), h) != kept.end()) continue;
    std::vector<const Point*> tight;
    for (const auto& v : cell.vertices) {
      if (sgn(h(v)) == 0) tight.push_back(&v);
    }
    if (affine_dimension(tight, n) == static_cast<long>(n) - 1) {
      kept.push_back(std::move(h));
    }
  }
  cell.facets = std::move(kept);
}

/// The part of `cell` where h ≥ 0, or nothing when that part is lower
/// dimensional. One step of the double-description method: edges of the
/// cell are recognised combinatorially from the facets tight at both ends.
std::optional<Cell> clip(const Cell& cell, const HalfSpace& h, std::size_t n) {
  const auto& vs = cell.vertices;
  std::vector<Rational> vals(vs.size());
  bool any_pos = false, any_neg = false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vals[i] = h(vs[i]);
    int s = sgn(vals[i]);
    any_pos |= s > 0;
    any_neg |= s < 0;
  }
  if (!any_neg) return cell;
  if (!any_pos) return std::nullopt;

  std::vector<std::vector<bool>> tight(vs.size(), std::vector<bool>(cell.facets.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (sgn(vals[i]) == 0) continue;  // only crossing endpoints are queried
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      tight[i][f] = sgn(cell.facets[f](vs[i])) == 0;
    }
  }
  auto adjacent = [&](std::size_t a, std::size_t b) {
    std::vector<std::vector<Rational>> normals;
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      if (tight[a][f] && tight[b][f]) {
        std::vector<Rational> row(n);
        for (std::size_t k = 0; k < n; ++k) row[k] = cell.facets[f].normal[k];
        normals.push_back(std::move(row));
      }
    }
    return rank_of(std::move(normals), n) + 1 == n;
  };

  Cell out;
  out.form = cell.form;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (sgn(vals[i]) >= 0) out.vertices.push_back(vs[i]);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (sgn(vals[i]) <= 0) continue;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (sgn(vals[j]) >= 0 || !adjacent(i, j)) continue;
      Rational t = vals[i] / (vals[i] - vals[j]);
      Point p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = vs[i][k] + t * (vs[j][k] - vs[i][k]);
      out.vertices.push_back(std::move(p));
    }
  }
  out.facets = cell.facets;
  out.facets.push_back(h);
  prune_facets(out, n);
  return out;
}

struct Box {
  std::vector<Rational> lo, hi;
};

Box bounding_box(const Cell& c, std::size_t n) {
  Box b{c.vertices[0], c.vertices[0]};
  for (const auto& v : c.vertices) {
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k] < b.lo[k]) b.lo[k] = v[k];
      if (v[k] > b.hi[k]) b.hi[k] = v[k];
    }
  }
  return b;
}

bool boxes_overlap(const Box& a, const Box& b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (std::max(a.lo[k], b.lo[k]) >= std::min(a.hi[k], b.hi[k])) return false;
  }
  return true;
}

Cell interval_cell(const Rational& lo, const Rational& hi, AffineForm form) {
  Cell c;
  c.vertices = {Point{lo}, Point{hi}};
  c.form = std::move(form);
  c.facets = {make_halfspace({Rational(1)}, -lo), make_halfspace({Rational(-1)}, hi)};
  return c;
}

// Cells of a one-dimensional complex are intervals kept sorted left to
// right; vertices[0] is the left endpoint.
std::vector<OverlayPiece> overlay_line(const PwlComplex& f, const PwlComplex& g) {
  std::vector<OverlayPiece> out;
  const auto& a = f.cells();
  const auto& b = g.cells();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = std::max(a[i].vertices[0][0], b[j].vertices[0][0]);
    const Rational& ra = a[i].vertices[1][0];
    const Rational& rb = b[j].vertices[1][0];
    const Rational& hi = std::min(ra, rb);
    if (lo < hi) out.push_back({interval_cell(lo, hi, a[i].form), b[j].form});
    if (ra <= rb) ++i;
    if (rb <= ra) ++j;
  }
  return out;
}

void sort_and_merge_line(std::vector<Cell>& cells) {
  for (auto& c : cells) {
    if (c.vertices[1][0] < c.vertices[0][0]) std::swap(c.vertices[0], c.vertices[1]);
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    return x.vertices[0][0] < y.vertices[0][0];
  });
  std::vector<Cell> merged;
  for (auto& c : cells) {
    if (!merged.empty() && merged.back().form == c.form &&
        merged.back().vertices[1][0] == c.vertices[0][0]) {
      merged.back() = interval_cell(merged.back().vertices[0][0], c.vertices[1][0],
                                    std::move(c.form));
    } else {
      merged.push_back(std::move(c));
    }
  }
  cells = std::move(merged);
}

void charge(ComplexBudget& budget, std::size_t cells) {
  budget.cells_built += cells;
  if (cells > budget.max_cells) {
    throw Error(ErrorCode::CellBudgetExceeded,
                "complex has " + std::to_string(cells) + " cells, budget is " +
                    std::to_string(budget.max_cells));
  }
}

std::string render_form(const AffineForm& f) {
  std::ostringstream os;
  os << f.constant.get_str();
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
    const Integer& c = f.coefficients[i];
    if (c == 0) continue;
    os << (c < 0 ? " - " : " + ");
    Integer mag = abs(c);
    if (mag != 1) os << mag.get_str() << '*';
    os << 'x' << (i + 1);
  }
  return os.str();
}

}  // namespace

AffineForm AffineForm::constant_form(std::size_t n, long value) {
  return AffineForm{Integer(value), std::vector<Integer>(n, Integer(0))};
}

AffineForm AffineForm::coordinate_form(std::size_t n, std::size_t i) {
  AffineForm f = constant_form(n, 0);
  f.coefficients[i] = 1;
  return f;
}

Rational AffineForm::operator()(const Point& p) const {
  Rational v(constant);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] != 0) v += coefficients[i] * p[i];
  }
  return v;
}

AffineForm AffineForm::complement() const {
  AffineForm f{1 - constant, coefficients};
  for (auto& c : f.coefficients) c = -c;
  return f;
}

AffineForm AffineForm::plus(const AffineForm& other) const {
  AffineForm f{constant + other.constant, coefficients};
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) f.coefficients[i] += other.coefficients[i];
  return f;
}

bool AffineForm::is_constant(long value) const {
  return constant == value &&
         std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Integer& c) { return c == 0; });
}

Rational HalfSpace::operator()(const Point& p) const {
  Rational v(offset);
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i] != 0) v += normal[i] * p[i];
  }
  return v;
}

bool Cell::contains(const Point& p) const {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const HalfSpace& h) { return sgn(h(p)) >= 0; });
}

PwlComplex PwlComplex::constant(std::size_t n, long value) {
  Cell c{cube_vertices(n), AffineForm::constant_form(n, value), cube_facets(n)};
  return PwlComplex(n, {std::move(c)});
}

PwlComplex PwlComplex::coordinate(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "coordinate " + std::to_string(i) + " outside dimension " + std::to_string(n));
  }
  Cell c{cube_vertices(n), AffineForm::coordinate_form(n, i - 1), cube_facets(n)};
  return PwlComplex(n, {std::move(c)});
}

std::string PwlComplex::dump() const {
  std::ostringstream os;
  for (const auto& c : cells_) {
    os << '[';
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      if (v) os << ' ';
      os << '(';
      for (std::size_t k = 0; k < dimension_; ++k) {
        if (k) os << ',';
        os << c.vertices[v][k].get_str();
      }
      os << ')';
    }
    os << "] : " << render_form(c.form) << '\n';
  }
  return os.str();
}

PwlComplex neg(const PwlComplex& f) {
  std::vector<Cell> cells = f.cells();
  for (auto& c : cells) c.form = c.form.complement();
  return PwlComplex(f.dimension(), std::move(cells));
}

std::vector<OverlayPiece> overlay(const PwlComplex& f, const PwlComplex& g,
                                  ComplexBudget& budget) {
  if (f.dimension() != g.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "complexes live in different dimensions");
  }
  const std::size_t n = f.dimension();
  if (n == 1) return overlay_line(f, g);

  std::vector<Box> boxes_g;
  boxes_g.reserve(g.cells().size());
  for (const auto& c : g.cells()) boxes_g.push_back(bounding_box(c, n));

  std::vector<OverlayPiece> out;
  for (const auto& a : f.cells()) {
    Box box_a = bounding_box(a, n);
    for (std::size_t j = 0; j < g.cells().size(); ++j) {
      if (!boxes_overlap(box_a, boxes_g[j], n)) continue;
      std::optional<Cell> piece = a;
      for (const auto& h : g.cells()[j].facets) {
        piece = clip(*piece, h, n);
        if (!piece) break;
      }
      if (piece) {
        out.push_back({std::move(*piece), g.cells()[j].form});
        if (out.size() > budget.max_cells) charge(budget, out.size());
      }
    }
  }
  return out;
}

std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(
    const Cell& cell, const AffineForm& form, const Rational& threshold) {
  const std::size_t n = form.coefficients.size();
  return {clip(cell, halfspace_from_form(form, threshold, true), n),
          clip(cell, halfspace_from_form(form, threshold, false), n)};
}

PwlComplex oplus(const PwlComplex& f, const PwlComplex& g, ComplexBudget& budget) {
  const std::size_t n = f.dimension();
  std::vector<Cell> cells;
  const AffineForm unit = AffineForm::constant_form(n, 1);
  for (auto& piece : overlay(f, g, budget)) {
    AffineForm sum = piece.cell.form.plus(piece.other);
    bool below = false, above = false;
    for (const auto& v : piece.cell.vertices) {
      int s = cmp(sum(v), 1);
      below |= s < 0;
      above |= s > 0;
    }
    if (!above) {
      piece.cell.form = std::move(sum);
      cells.push_back(std::move(piece.cell));
    } else if (!below) {
      piece.cell.form = unit;
      cells.push_back(std::move(piece.cell));
    } else {
      auto [low, high] = split_cell(piece.cell, sum, Rational(1));
      low->form = std::move(sum);
      high->form = unit;
      cells.push_back(std::move(*low));
      cells.push_back(std::move(*high));
    }
  }
  if (n == 1) sort_and_merge_line(cells);
  charge(budget, cells.size());
  return PwlComplex(n, std::move(cells));
}

PwlComplex oplus(const PwlComplex& f, const PwlComplex& g) {
  ComplexBudget budget;
  return oplus(f, g, budget);
}

PwlComplex interpret_free(const Term& phi, std::size_t n, ComplexBudget& budget) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "free algebra needs n >= 1");
  if (max_variable(phi) > n) {
    throw Error(ErrorCode::VariableIndexExceedsN,
                "term mentions X" + std::to_string(max_variable(phi)) +
                    " but the free algebra has " + std::to_string(n) + " generators");
  }
  std::unordered_map<const void*, PwlComplex> memo;
  auto go = [&](auto&& self, const Term& t) -> const PwlComplex& {
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    PwlComplex result = [&] {
      switch (t.kind()) {
        case Term::Kind::Zero: return PwlComplex::constant(n, 0);
        case Term::Kind::Var: return PwlComplex::coordinate(t.index(), n);
        case Term::Kind::Neg: return neg(self(self, t.arg()));
        case Term::Kind::Oplus: {
          const PwlComplex& l = self(self, t.left());
          const PwlComplex& r = self(self, t.right());
          return oplus(l, r, budget);
        }
      }
      return PwlComplex::constant(n, 0);
    }();
    return memo.emplace(t.id(), std::move(result)).first->second;
  };
  return go(go, phi);
}

PwlComplex interpret_free(const Term& phi, std::size_t n) {
  ComplexBudget budget;
  return interpret_free(phi, n, budget);
}

Rational eval_at(const PwlComplex& f, const Point& p) {
  if (p.size() != f.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
  }
  for (const auto& x : p) {
    if (sgn(x) < 0 || x > 1) throw Error(ErrorCode::PointOutOfCube, "point outside [0,1]^n");
  }
  for (const auto& c : f.cells()) {
    if (c.contains(p)) return c.form(p);
  }
  throw Error(ErrorCode::InvalidArgument, "complex does not cover the point");
}

std::optional<Point> find_nonzero(const PwlComplex& f) {
  for (const auto& c : f.cells()) {
    for (const auto& v : c.vertices) {
      if (sgn(c.form(v)) != 0) return v;
    }
  }
  return std::nullopt;
}

Integer max_vertex_denominator(const PwlComplex& f) {
  Integer best = 1;
  for (const auto& c : f.cells()) {
    for (const auto& v : c.vertices) {
      for (const auto& x : v) {
        if (x.get_den() > best) best = x.get_den();
      }
    }
  }
  return best;
}

}  // namespace afl
