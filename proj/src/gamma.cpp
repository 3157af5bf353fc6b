#include "afl/gamma.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

#include "afl/error.hpp"

namespace afl {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) {
    throw Error(ErrorCode::ArithmeticOverflow, "group coordinate overflow");
  }
  return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) {
    throw Error(ErrorCode::ArithmeticOverflow, "group coordinate overflow");
  }
  return r;
}

int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + s + "' in " + context);
  }
  return v;
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

GammaAlgebra GammaAlgebra::effros_shen(CfNumber theta) {
  return GammaAlgebra(GammaKind::EffrosShen, 1, 0, std::move(theta));
}

GammaAlgebra GammaAlgebra::behncke_leptin(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::InvalidArgument, "Behncke-Leptin parameters must be positive");
  }
  return GammaAlgebra(GammaKind::BehnckeLeptin, m, n, std::nullopt);
}

GammaAlgebra GammaAlgebra::chain(std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "chain length must be positive");
  return GammaAlgebra(GammaKind::Chain, k, 0, std::nullopt);
}

const CfNumber& GammaAlgebra::theta() const {
  if (!theta_) throw Error(ErrorCode::BackendMismatch, "only Effros-Shen algebras carry theta");
  return *theta_;
}

int GammaAlgebra::group_sign(std::int64_t a, std::int64_t b) const {
  switch (kind_) {
    case GammaKind::Chain: return sign_of(a);
    case GammaKind::BehnckeLeptin: return a != 0 ? sign_of(a) : sign_of(b);
    case GammaKind::EffrosShen:
      switch (sign_a_plus_b_theta(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)),
                                  *theta_)) {
        case Sign::negative: return -1;
        case Sign::zero: return 0;
        case Sign::positive: return 1;
      }
  }
  return 0;
}

void GammaAlgebra::check_same(const GammaElement& x) const {
  if (x.kind != kind_) throw Error(ErrorCode::BackendMismatch, "element from another backend");
}

GammaElement GammaAlgebra::element(std::int64_t a, std::int64_t b) const {
  if (kind_ == GammaKind::Chain && b != 0) {
    throw Error(ErrorCode::ElementOutOfRange, "chain elements have one coordinate");
  }
  if (group_sign(a, b) < 0 ||
      group_sign(checked_sub(unit_a_, a), checked_sub(unit_b_, b)) < 0) {
    throw Error(ErrorCode::ElementOutOfRange,
                "element outside [0, u] in " + describe());
  }
  return {kind_, a, b};
}

int GammaAlgebra::compare(const GammaElement& x, const GammaElement& y) const {
  check_same(x);
  check_same(y);
  if (x == y) return 0;
  return group_sign(checked_sub(y.a, x.a), checked_sub(y.b, x.b));
}

GammaElement GammaAlgebra::oplus(const GammaElement& x, const GammaElement& y) const {
  check_same(x);
  check_same(y);
  GammaElement sum{kind_, checked_add(x.a, y.a), checked_add(x.b, y.b)};
  return compare(sum, unit()) > 0 ? sum : unit();
}

GammaElement GammaAlgebra::neg(const GammaElement& x) const {
  check_same(x);
  return {kind_, checked_sub(unit_a_, x.a), checked_sub(unit_b_, x.b)};
}

bool GammaAlgebra::is_zero(const GammaElement& x) const {
  check_same(x);
  return x.a == 0 && x.b == 0;
}

Assignment GammaAlgebra::default_assignment() const {
  if (kind_ == GammaKind::EffrosShen) return {{1u, GammaElement{kind_, 0, 1}}};
  return {};
}

std::string GammaAlgebra::format(const GammaElement& x) const {
  check_same(x);
  switch (kind_) {
    case GammaKind::Chain: return std::to_string(x.a);
    case GammaKind::BehnckeLeptin:
      return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
    case GammaKind::EffrosShen: {
      auto theta_term = [](std::int64_t b) {
        std::string mag = (b == 1 || b == -1) ? "" : std::to_string(b < 0 ? -b : b) + "*";
        return mag + "theta";
      };
      if (x.b == 0) return std::to_string(x.a);
      if (x.a == 0) return (x.b < 0 ? "-" : "") + theta_term(x.b);
      return std::to_string(x.a) + (x.b < 0 ? "-" : "+") + theta_term(x.b);
    }
  }
  return "";
}

GammaElement GammaAlgebra::parse_element(const std::string& literal) const {
  std::string s = strip_spaces(literal);
  const std::string context = "element literal '" + literal + "'";
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty " + context);
  switch (kind_) {
    case GammaKind::Chain: return element(parse_int(s, context));
    case GammaKind::BehnckeLeptin: {
      auto comma = s.find(',');
      if (s.front() != '(' || s.back() != ')' || comma == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "expected (a,b) in " + context);
      }
      return element(parse_int(s.substr(1, comma - 1), context),
                     parse_int(s.substr(comma + 1, s.size() - comma - 2), context));
    }
    case GammaKind::EffrosShen: {
      // Sum of signed terms, each an integer, "theta", or "<int>*theta".
      std::int64_t a = 0, b = 0;
      std::size_t i = 0;
      while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string tok = s.substr(i, j - i);
        bool negative = false;
        if (tok[0] == '+' || tok[0] == '-') {
          negative = tok[0] == '-';
          tok.erase(0, 1);
        }
        if (tok.empty()) throw Error(ErrorCode::InvalidArgument, "dangling sign in " + context);
        const std::string suffix = "theta";
        if (tok.size() >= suffix.size() &&
            tok.compare(tok.size() - suffix.size(), suffix.size(), suffix) == 0) {
          std::string coef = tok.substr(0, tok.size() - suffix.size());
          std::int64_t c = 1;
          if (!coef.empty()) {
            if (coef.back() != '*') {
              throw Error(ErrorCode::InvalidArgument, "expected '*theta' in " + context);
            }
            c = parse_int(coef.substr(0, coef.size() - 1), context);
          }
          b = checked_add(b, negative ? -c : c);
        } else {
          std::int64_t c = parse_int(tok, context);
          a = checked_add(a, negative ? -c : c);
        }
        i = j;
      }
      return element(a, b);
    }
  }
  throw Error(ErrorCode::InvalidArgument, context);
}

std::string GammaAlgebra::describe() const {
  switch (kind_) {
    case GammaKind::Chain: return "chain:" + std::to_string(unit_a_);
    case GammaKind::BehnckeLeptin:
      return "behncke-leptin:" + std::to_string(unit_a_) + "," + std::to_string(unit_b_);
    case GammaKind::EffrosShen: return "effros-shen";
  }
  return "";
}

GammaElement interpret(const Term& phi, const GammaAlgebra& algebra, const Assignment& asg) {
  const Assignment fallback = algebra.default_assignment();
  std::unordered_map<const void*, GammaElement> memo;
  auto go = [&](auto&& self, const Term& t) -> GammaElement {
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    GammaElement v = algebra.zero();
    switch (t.kind()) {
      case Term::Kind::Zero: break;
      case Term::Kind::Var: {
        const GammaElement* value = nullptr;
        if (auto it = asg.find(t.index()); it != asg.end()) {
          value = &it->second;
        } else if (auto dt = fallback.find(t.index()); dt != fallback.end()) {
          value = &dt->second;
        } else {
          throw Error(ErrorCode::UnassignedVariable,
                      "no value assigned to X" + std::to_string(t.index()));
        }
        if (value->kind != algebra.kind()) {
          throw Error(ErrorCode::BackendMismatch,
                      "X" + std::to_string(t.index()) + " is assigned an element of another backend");
        }
        v = *value;
        break;
      }
      case Term::Kind::Neg: v = algebra.neg(self(self, t.arg())); break;
      case Term::Kind::Oplus: {
        GammaElement l = self(self, t.left());
        GammaElement r = self(self, t.right());
        v = algebra.oplus(l, r);
        break;
      }
    }
    memo.emplace(t.id(), v);
    return v;
  };
  return go(go, phi);
}

Interpretation interpret(const Term& phi, const Backend& backend, const Assignment& asg,
                         ComplexBudget& budget) {
  if (const auto* free = std::get_if<FreeBackend>(&backend)) {
    std::size_t n = free->n != 0 ? free->n : std::max(1u, max_variable(phi));
    return interpret_free(phi, n, budget);
  }
  return interpret(phi, std::get<GammaAlgebra>(backend), asg);
}

Assignment parse_assignment(const std::string& text, const GammaAlgebra& algebra) {
  Assignment asg;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ';') c = '\n';
  }
  std::istringstream in(normalized);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "assignment line without '=': " + line);
    }
    std::string lhs = trim(line.substr(0, eq));
    if (lhs.size() < 2 || lhs[0] != 'X' ||
        lhs.find_first_not_of("0123456789", 1) != std::string::npos || lhs[1] == '0') {
      throw Error(ErrorCode::InvalidArgument, "bad variable '" + lhs + "' in assignment");
    }
    unsigned index = static_cast<unsigned>(std::stoul(lhs.substr(1)));
    asg[index] = algebra.parse_element(trim(line.substr(eq + 1)));
  }
  return asg;
}

}  // namespace afl
