#pragma once

// Exact McNaughton functions: continuous piecewise-linear maps [0,1]^n -> [0,1]
// with integer-coefficient affine pieces, stored as a complex of convex cells.
// These are the elements of the free MV-algebra on n generators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afl/rational.hpp"
#include "afl/term.hpp"

namespace afl {

/// constant + Σ coefficients[i] · x_{i+1}, integer coefficients throughout.
struct AffineForm {
  Integer constant;
  std::vector<Integer> coefficients;

  static AffineForm constant_form(std::size_t n, long value);
  static AffineForm coordinate_form(std::size_t n, std::size_t i);

  Rational operator()(const Point& p) const;
  AffineForm complement() const;  // 1 - f
  AffineForm plus(const AffineForm& other) const;
  bool is_constant(long value) const;
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// normal · x + offset ≥ 0, scaled to a primitive integer vector.
struct HalfSpace {
  std::vector<Integer> normal;
  Integer offset;

  Rational operator()(const Point& p) const;
  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

struct Cell {
  std::vector<Point> vertices;
  AffineForm form;
  /// Facet inequalities of the cell; kept alongside the vertices so that
  /// cells can be cut without recomputing a hull.
  std::vector<HalfSpace> facets;

  bool contains(const Point& p) const;
};

/// Accounting shared by a run of complex operations.
struct ComplexBudget {
  std::size_t max_cells = 1'000'000;
  std::uint64_t cells_built = 0;
};

class PwlComplex {
 public:
  PwlComplex(std::size_t dimension, std::vector<Cell> cells)
      : dimension_(dimension), cells_(std::move(cells)) {}

  static PwlComplex constant(std::size_t n, long value);
  static PwlComplex coordinate(std::size_t i, std::size_t n);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  /// Text dump: one cell per line, vertices as fractions, then the form.
  std::string dump() const;

 private:
  std::size_t dimension_;
  std::vector<Cell> cells_;
};

PwlComplex neg(const PwlComplex& f);
PwlComplex oplus(const PwlComplex& f, const PwlComplex& g, ComplexBudget& budget);
PwlComplex oplus(const PwlComplex& f, const PwlComplex& g);

PwlComplex interpret_free(const Term& phi, std::size_t n, ComplexBudget& budget);
PwlComplex interpret_free(const Term& phi, std::size_t n);

Rational eval_at(const PwlComplex& f, const Point& p);

/// Empty optional means "f is identically zero"; otherwise a vertex where
/// f does not vanish.
std::optional<Point> find_nonzero(const PwlComplex& f);
inline bool is_zero(const PwlComplex& f) { return !find_nonzero(f).has_value(); }

/// A cell of the common refinement of two complexes, carrying both forms.
struct OverlayPiece {
  Cell cell;  // cell.form is the form of the first complex
  AffineForm other;
};
std::vector<OverlayPiece> overlay(const PwlComplex& f, const PwlComplex& g,
                                  ComplexBudget& budget);

/// Cuts a cell by the hyperplane form(x) = threshold. Returns the parts on
/// which form ≤ threshold and form ≥ threshold; a part is absent when it is
/// lower dimensional.
std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(
    const Cell& cell, const AffineForm& form, const Rational& threshold);

/// Largest denominator among all vertex coordinates.
Integer max_vertex_denominator(const PwlComplex& f);

}  // namespace afl
