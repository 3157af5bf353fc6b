#include "afl/continued_fraction.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <utility>

#include "afl/error.hpp"

namespace afl {

struct CfNumber::State {
  enum class Kind { Periodic, InvE, Stream } kind;
  std::vector<Integer> preperiod;
  std::vector<Integer> period;
  Provider provider;
  std::size_t budget = kDefaultCfBudget;  // unused for periodic sources

  mutable std::mutex mutex;
  mutable std::vector<Integer> cache{Integer(0)};  // cache[k] = a_k
  mutable std::atomic<std::uint64_t> consumed{0};
};

namespace {

void require_positive(const std::vector<Integer>& qs, const char* what) {
  for (const auto& a : qs) {
    if (a < 1) {
      throw Error(ErrorCode::InvalidQuotients,
                  std::string(what) + " partial quotients must be >= 1");
    }
  }
}

Integer inv_e_quotient(std::size_t k) {
  if (k == 1) return 2;
  // a_k of 1/e is the (k-1)-th quotient of e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]
  if ((k - 1) % 3 == 2) return Integer(static_cast<unsigned long>(2 * k / 3));
  return 1;
}

}  // namespace

CfNumber CfNumber::periodic(std::vector<Integer> preperiod, std::vector<Integer> period) {
  if (period.empty()) {
    throw Error(ErrorCode::InvalidQuotients, "periodic continued fraction needs a nonempty period");
  }
  require_positive(preperiod, "preperiod");
  require_positive(period, "period");
  auto s = std::make_shared<State>();
  s->kind = State::Kind::Periodic;
  s->preperiod = std::move(preperiod);
  s->period = std::move(period);
  return CfNumber(std::move(s));
}

CfNumber CfNumber::inv_e() {
  auto s = std::make_shared<State>();
  s->kind = State::Kind::InvE;
  return CfNumber(std::move(s));
}

CfNumber CfNumber::stream(Provider provider, std::size_t budget) {
  auto s = std::make_shared<State>();
  s->kind = State::Kind::Stream;
  s->provider = std::move(provider);
  s->budget = budget;
  return CfNumber(std::move(s));
}

CfNumber CfNumber::stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open quotient stream '" + path + "'");
  auto quotients = std::make_shared<std::vector<Integer>>();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    Integer a;
    if (tok.find_first_not_of("0123456789") != std::string::npos || a.set_str(tok, 10) != 0 ||
        a < 1) {
      throw Error(ErrorCode::InvalidQuotients,
                  path + ":" + std::to_string(lineno) + ": expected a positive integer");
    }
    quotients->push_back(std::move(a));
  }
  std::size_t budget = quotients->size();
  return stream(
      [quotients](std::size_t k) -> std::optional<Integer> {
        if (k == 0 || k > quotients->size()) return std::nullopt;
        return (*quotients)[k - 1];
      },
      budget);
}

Integer CfNumber::partial_quotient(std::size_t k) const {
  const State& s = *state_;
  if (k == 0) return 0;
  if (s.kind == State::Kind::Periodic) {
    if (k <= s.preperiod.size()) return s.preperiod[k - 1];
    return s.period[(k - 1 - s.preperiod.size()) % s.period.size()];
  }
  std::lock_guard lock(s.mutex);
  if (k < s.cache.size()) return s.cache[k];
  if (k > s.budget) {
    throw Error(ErrorCode::StreamExhausted,
                "partial quotient a_" + std::to_string(k) + " is beyond the budget of " +
                    std::to_string(s.budget));
  }
  while (s.cache.size() <= k) {
    std::size_t next = s.cache.size();
    if (s.kind == State::Kind::InvE) {
      s.cache.push_back(inv_e_quotient(next));
      continue;
    }
    std::optional<Integer> a = s.provider(next);
    if (!a) {
      throw Error(ErrorCode::StreamExhausted,
                  "quotient stream ended before a_" + std::to_string(next));
    }
    if (*a < 1) {
      throw Error(ErrorCode::InvalidQuotients,
                  "stream produced a_" + std::to_string(next) + " < 1");
    }
    s.cache.push_back(std::move(*a));
  }
  return s.cache[k];
}

Convergent CfNumber::convergent(std::size_t k) const {
  Integer p_prev = 1, q_prev = 0;  // index -1
  Integer p = 0, q = 1;            // index 0, since a_0 = 0
  for (std::size_t i = 1; i <= k; ++i) {
    Integer a = partial_quotient(i);
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return Convergent{p, q, k};
}

bool CfNumber::is_periodic() const { return state_->kind == State::Kind::Periodic; }

std::optional<std::size_t> CfNumber::budget() const {
  if (is_periodic()) return std::nullopt;
  std::lock_guard lock(state_->mutex);
  return state_->budget;
}

void CfNumber::limit_budget(std::size_t cap) const {
  if (is_periodic()) return;
  std::lock_guard lock(state_->mutex);
  state_->budget = std::min(state_->budget, cap);
}

std::uint64_t CfNumber::quotients_consumed() const { return state_->consumed.load(); }

void CfNumber::note_consumed(std::uint64_t count) const { state_->consumed += count; }

const std::vector<Integer>& CfNumber::preperiod() const { return state_->preperiod; }
const std::vector<Integer>& CfNumber::period() const { return state_->period; }

CfNumber cf_from_surd(const Integer& P_in, const Integer& D_in, const Integer& Q_in) {
  if (D_in <= 0) throw Error(ErrorCode::InvalidArgument, "surd radicand must be positive");
  if (Q_in == 0) throw Error(ErrorCode::InvalidArgument, "surd denominator must be nonzero");
  if (mpz_perfect_square_p(D_in.get_mpz_t())) {
    throw Error(ErrorCode::DIsPerfectSquare, "D = " + D_in.get_str() + " is a perfect square");
  }
  Integer P = P_in, D = D_in, Q = Q_in;
  if (((D - P * P) % Q) != 0) {
    // (P + √D)/Q = (P|Q| + √(D Q²)) / (Q|Q|)
    Integer aq = abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  Integer root;
  mpz_sqrt(root.get_mpz_t(), D.get_mpz_t());

  auto floor_step = [&](const Integer& p, const Integer& q) {
    Integer a;
    if (q > 0) {
      Integer num = p + root;
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    } else {
      // floor(-(p+√D)/|q|) = -(floor((p+⌊√D⌋)/|q|) + 1) since the quotient is irrational
      Integer num = p + root, aq = -q;
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), aq.get_mpz_t());
      a = -(a + 1);
    }
    return a;
  };

  Integer a0 = floor_step(P, Q);
  if (a0 != 0) {
    throw Error(ErrorCode::ThetaOutOfRange, "surd value is not in (0,1)");
  }
  std::vector<Integer> quotients;
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  auto advance = [&](const Integer& a) {
    Integer p_next = a * Q - P;
    Integer q_next = (D - p_next * p_next) / Q;
    P = std::move(p_next);
    Q = std::move(q_next);
  };
  advance(a0);
  for (;;) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      std::vector<Integer> pre(quotients.begin(), quotients.begin() + it->second);
      std::vector<Integer> per(quotients.begin() + it->second, quotients.end());
      return CfNumber::periodic(std::move(pre), std::move(per));
    }
    seen.emplace(std::move(key), quotients.size());
    Integer a = floor_step(P, Q);
    quotients.push_back(a);
    advance(a);
  }
}

std::vector<Integer> rational_cf(const Rational& r) {
  std::vector<Integer> out;
  Integer num = r.get_num(), den = r.get_den();
  while (den != 0) {
    Integer a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(a);
    num = std::move(den);
    den = std::move(rem);
  }
  return out;
}

Ordering compare_rational(const CfNumber& theta, const Rational& r) {
  if (sgn(r) < 0 || r > 1) {
    throw Error(ErrorCode::InvalidArgument, "comparison target must lie in [0,1]");
  }
  std::vector<Integer> digits = rational_cf(r);
  std::uint64_t used = 0;
  struct Tally {
    const CfNumber& theta;
    std::uint64_t& used;
    ~Tally() { theta.note_consumed(used); }
  } tally{theta, used};
  // Digitwise rule: at an even position the larger digit makes the larger
  // number, at an odd position the smaller one does. A terminated expansion
  // behaves like an infinite digit.
  for (std::size_t i = 0;; ++i) {
    const bool even = i % 2 == 0;
    if (i >= digits.size()) return even ? Ordering::less : Ordering::greater;
    Integer a = 0;
    if (i > 0) {
      a = theta.partial_quotient(i);
      ++used;
    }
    if (a != digits[i]) {
      bool theta_bigger_digit = a > digits[i];
      return (theta_bigger_digit == even) ? Ordering::greater : Ordering::less;
    }
  }
}

Sign sign_a_plus_b_theta(const Integer& a, const Integer& b, const CfNumber& theta) {
  if (b == 0) {
    int s = sgn(a);
    return s > 0 ? Sign::positive : s < 0 ? Sign::negative : Sign::zero;
  }
  // a + bθ > 0  ⇔  θ > -a/b when b > 0, θ < -a/b when b < 0
  Rational r(-a, b);
  r.canonicalize();
  bool theta_above;
  if (sgn(r) <= 0) {
    theta_above = true;
  } else if (r >= 1) {
    theta_above = false;
  } else {
    theta_above = compare_rational(theta, r) == Ordering::greater;
  }
  bool positive = (b > 0) == theta_above;
  return positive ? Sign::positive : Sign::negative;
}

}  // namespace afl
