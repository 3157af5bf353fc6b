#include "afl/term.hpp"

#include <cctype>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace afl {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::MalformedVariable: return "MalformedVariable";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::VariableIndexExceedsN: return "VariableIndexExceedsN";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
    case ErrorCode::PointOutOfCube: return "PointOutOfCube";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::DIsPerfectSquare: return "DIsPerfectSquare";
    case ErrorCode::InvalidQuotients: return "InvalidQuotients";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::UnassignedVariable: return "UnassignedVariable";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NoKnownReduction: return "NoKnownReduction";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Term Term::zero() {
  static const Term z{std::make_shared<const Node>(Node{Kind::Zero, 0, {Term{}, Term{}}})};
  return z;
}

Term Term::var(unsigned index) {
  if (index == 0) {
    throw Error(ErrorCode::MalformedVariable, "variable indices start at 1");
  }
  return Term{std::make_shared<const Node>(Node{Kind::Var, index, {Term{}, Term{}}})};
}

Term Term::neg(Term arg) {
  return Term{std::make_shared<const Node>(Node{Kind::Neg, 0, {std::move(arg), Term{}}})};
}

Term Term::oplus(Term left, Term right) {
  return Term{std::make_shared<const Node>(
      Node{Kind::Oplus, 0, {std::move(left), std::move(right)}})};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Var: return a.index() == b.index();
    case Term::Kind::Neg: return a.arg() == b.arg();
    case Term::Kind::Oplus: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

void render_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      out += '0';
      break;
    case Term::Kind::Var:
      out += 'X';
      out += std::to_string(t.index());
      break;
    case Term::Kind::Neg:
      render_into(t.arg(), out);
      out += '*';
      break;
    case Term::Kind::Oplus:
      out += '(';
      render_into(t.left(), out);
      out += '+';
      render_into(t.right(), out);
      out += ')';
      break;
  }
}

// Recursive descent over the surface grammar
//
//   expr    := postfix (binop postfix)*        binop ∈ { + . - | & }
//   postfix := primary '*'*
//   primary := '0' | '1' | 'X' digits | '(' expr ')'
//
// All binary operators share one precedence level and associate to the left.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_all() {
    skip_space();
    if (pos_ == text_.size()) {
      throw Error(ErrorCode::EmptyInput, "empty term", 0);
    }
    check_balance();
    Term t = expr();
    skip_space();
    if (pos_ != text_.size()) fail_at_current();
    return t;
  }

 private:
  // Parenthesis balance is checked up front so that "((X1+X2)" reports the
  // unmatched parenthesis rather than an unexpected end of input.
  void check_balance() const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '(') {
        open.push_back(i);
      } else if (text_[i] == ')') {
        if (open.empty()) {
          throw Error(ErrorCode::UnbalancedParenthesis,
                      "unmatched ')' at offset " + std::to_string(i), i);
        }
        open.pop_back();
      }
    }
    if (!open.empty()) {
      throw Error(ErrorCode::UnbalancedParenthesis,
                  "unmatched '(' at offset " + std::to_string(open.back()),
                  open.back());
    }
  }

  static bool is_binop(char c) {
    return c == '+' || c == '.' || c == '-' || c == '|' || c == '&';
  }

  static bool is_known(char c) {
    return is_binop(c) || c == '0' || c == '1' || c == 'X' || c == '*' ||
           c == '(' || c == ')';
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail_at_current() const {
    if (pos_ >= text_.size()) {
      throw Error(ErrorCode::UnexpectedToken, "unexpected end of term", pos_);
    }
    char c = text_[pos_];
    if (!is_known(c)) {
      throw Error(ErrorCode::UnknownSymbol,
                  std::string("unknown symbol '") + c + "' at offset " +
                      std::to_string(pos_),
                  pos_);
    }
    throw Error(ErrorCode::UnexpectedToken,
                std::string("unexpected '") + c + "' at offset " +
                    std::to_string(pos_),
                pos_);
  }

  Term expr() {
    Term lhs = postfix();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || !is_binop(text_[pos_])) return lhs;
      char op = text_[pos_++];
      Term rhs = postfix();
      switch (op) {
        case '+': lhs = Term::oplus(std::move(lhs), std::move(rhs)); break;
        case '.': lhs = times(lhs, rhs); break;
        case '-': lhs = minus(lhs, rhs); break;
        case '|': lhs = join(lhs, rhs); break;
        case '&': lhs = meet(lhs, rhs); break;
      }
    }
  }

  Term postfix() {
    Term t = primary();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        t = Term::neg(std::move(t));
      } else {
        return t;
      }
    }
  }

  Term primary() {
    skip_space();
    if (pos_ >= text_.size()) fail_at_current();
    char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw Error(ErrorCode::UnknownSymbol,
                    "numeric literal at offset " + std::to_string(pos_ - 1) +
                        " (only 0 and 1 are constants)",
                    pos_ - 1);
      }
      return c == '0' ? Term::zero() : one();
    }
    if (c == 'X') {
      std::size_t start = pos_++;
      std::size_t digits_begin = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      std::string_view digits = text_.substr(digits_begin, pos_ - digits_begin);
      if (digits.empty() || digits.front() == '0' || digits.size() > 9) {
        throw Error(ErrorCode::MalformedVariable,
                    "malformed variable at offset " + std::to_string(start), start);
      }
      return Term::var(static_cast<unsigned>(std::stoul(std::string(digits))));
    }
    if (c == '(') {
      ++pos_;
      Term inner = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail_at_current();
      ++pos_;
      return inner;
    }
    fail_at_current();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse(std::string_view input) { return Parser(input).parse_all(); }

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

TermSize size(const Term& t) {
  // Memoized on shared nodes; the derived connectives reuse subterms heavily.
  std::unordered_map<const void*, std::uint64_t> memo;
  auto go = [&](auto&& self, const Term& s) -> std::uint64_t {
    if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
    std::uint64_t v = 0;
    switch (s.kind()) {
      case Term::Kind::Zero:
      case Term::Kind::Var: v = 1; break;
      case Term::Kind::Neg: v = self(self, s.arg()) + 1; break;
      case Term::Kind::Oplus: v = self(self, s.left()) + self(self, s.right()) + 3; break;
    }
    memo.emplace(s.id(), v);
    return v;
  };
  return TermSize{go(go, t)};
}

unsigned max_variable(const Term& t) {
  std::unordered_map<const void*, unsigned> memo;
  auto go = [&](auto&& self, const Term& s) -> unsigned {
    if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
    unsigned v = 0;
    switch (s.kind()) {
      case Term::Kind::Zero: break;
      case Term::Kind::Var: v = s.index(); break;
      case Term::Kind::Neg: v = self(self, s.arg()); break;
      case Term::Kind::Oplus: v = std::max(self(self, s.left()), self(self, s.right())); break;
    }
    memo.emplace(s.id(), v);
    return v;
  };
  return go(go, t);
}

Term one() { return Term::neg(Term::zero()); }

Term times(const Term& a, const Term& b) {
  return Term::neg(Term::oplus(Term::neg(a), Term::neg(b)));
}

Term minus(const Term& a, const Term& b) {
  return Term::neg(Term::oplus(Term::neg(a), b));
}

Term join(const Term& a, const Term& b) {
  return Term::oplus(Term::neg(Term::oplus(Term::neg(a), b)), b);
}

Term meet(const Term& a, const Term& b) {
  return Term::neg(join(Term::neg(a), Term::neg(b)));
}

Term dist(const Term& a, const Term& b) {
  return Term::oplus(times(a, Term::neg(b)), times(b, Term::neg(a)));
}

Term reduce_order(const Term& phi, const Term& psi) { return minus(phi, psi); }

Term reduce_word(const Term& phi, const Term& psi) {
  return Term::oplus(minus(phi, psi), minus(psi, phi));
}

Term reduce_eccentricity(const Term& alpha, const Term& beta) {
  Term beta_neg = Term::neg(beta);
  Term low = join(minus(beta, beta_neg), minus(alpha, beta));
  Term high = join(minus(beta_neg, beta), minus(beta, alpha));
  return meet(low, high);
}

Term reduce_central(const Term& phi) { return meet(phi, Term::neg(phi)); }

Term reduce_rho(const Term& phi, unsigned n) {
  if (n == 0 || max_variable(phi) > n) {
    throw Error(ErrorCode::VariableIndexExceedsN,
                "rho needs n >= 1 and n >= every variable index of the term");
  }
  auto flat = [](unsigned i) {
    Term x = Term::var(i);
    return meet(x, Term::neg(x));
  };
  Term acc = flat(1);
  for (unsigned i = 2; i <= n; ++i) acc = join(acc, flat(i));
  return meet(phi, acc);
}

}  // namespace afl
