#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "precision.hpp"

namespace cmvlab {

struct CfExpansion {
  std::vector<long long> a;  // partial quotients a_1..a_n
  bool terminated = false;   // input was rational (at working precision)
};

// Gauss-map expansion theta = [0; a_1, a_2, ...]. Stops early with
// terminated=true when the remainder vanishes within the guard radius.
// Throws PrecisionExhausted once the convergent denominators outgrow the
// trust radius 2^((P-64)/2) of the working precision P.
inline CfExpansion cf_expand(const BigReal& theta, int n_terms) {
  if (!(theta > 0 && theta < 1)) throw DomainError("cf_expand needs theta in (0,1)");
  if (n_terms < 1) throw BadConfig("cf_expand needs n_terms >= 1");

  BigInt trust = BigInt(1) << ((precision_bits() - 64) / 2);
  BigReal g = endpoint_guard();
  CfExpansion out;
  BigInt q_prev = 1, q_cur = 0;  // q_0 = 1 and a virtual q_{-1} = 0
  BigReal x = theta;
  for (int j = 1; j <= n_terms; ++j) {
    BigReal y = 1 / x;
    BigReal f = floor(y);
    BigReal r = y - f;
    if (r > 1 - g)
      throw PrecisionExhausted("partial quotient undecidable at working precision");
    if (f > BigReal(9.2e18))
      throw PrecisionExhausted("partial quotient exceeds 2^63");
    long long aj = static_cast<long long>(f);
    out.a.push_back(aj);
    BigInt q_next = aj * q_prev + q_cur;
    q_cur = q_prev;
    q_prev = q_next;
    if (q_prev > trust)
      throw PrecisionExhausted("convergent denominator beyond trust radius");
    if (r < g) {
      out.terminated = true;
      break;
    }
    x = r;
  }
  return out;
}

struct Convergents {
  std::vector<BigInt> p;  // p_0..p_n
  std::vector<BigInt> q;  // q_0..q_n

  // Classical identity p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}, plus gcd 1.
  bool verify() const {
    for (size_t n = 1; n < p.size(); ++n) {
      BigInt det = p[n] * q[n - 1] - p[n - 1] * q[n];
      if (det != ((n % 2 == 1) ? 1 : -1)) return false;
      if (gcd(p[n], q[n]) != 1) return false;
    }
    return true;
  }
};

// p_0=0, p_1=1, q_0=1, q_1=a_1, then x_n = a_n x_{n-1} + x_{n-2}.
inline Convergents convergents(std::span<const long long> cf, int n) {
  if (n < 0 || static_cast<size_t>(n) > cf.size())
    throw BadConfig("convergents: n out of range of supplied quotients");
  Convergents c;
  c.p.reserve(n + 1);
  c.q.reserve(n + 1);
  c.p.push_back(0);
  c.q.push_back(1);
  for (int j = 1; j <= n; ++j) {
    long long aj = cf[j - 1];
    if (aj < 1) throw DomainError("partial quotients must be >= 1");
    BigInt pn = (j == 1) ? BigInt(1) : aj * c.p[j - 1] + c.p[j - 2];
    BigInt qn = (j == 1) ? BigInt(aj) : aj * c.q[j - 1] + c.q[j - 2];
    c.p.push_back(pn);
    c.q.push_back(qn);
  }
  return c;
}

// Frequency theta in (0,1), either a quadratic irrational given by a
// repeating continued-fraction block (exact quotients, value from the
// fixed-point quadratic) or a decimal literal (quotients via cf_expand).
class Frequency {
 public:
  static Frequency golden() { return periodic({1}, "golden"); }
  static Frequency silver() { return periodic({2}, "silver"); }

  static Frequency periodic(std::vector<long long> block, std::string name = "") {
    if (block.empty()) throw BadConfig("empty continued-fraction block");
    for (long long b : block)
      if (b < 1) throw DomainError("partial quotients must be >= 1");
    Frequency f;
    f.block_ = std::move(block);
    f.name_ = name.empty() ? describe_block(f.block_) : std::move(name);
    return f;
  }

  static Frequency decimal(const std::string& text) {
    init_precision();
    Frequency f;
    f.literal_ = text;
    f.name_ = text;
    BigReal v;
    try {
      v = BigReal(text);
    } catch (const std::exception&) {
      throw DomainError("unparseable decimal frequency: " + text);
    }
    if (!(v > 0 && v < 1)) throw DomainError("frequency must lie in (0,1)");
    return f;
  }

  bool is_periodic_cf() const { return !block_.empty(); }
  const std::string& name() const { return name_; }

  // The positive fixed point of x -> block applied to x, i.e. the exact
  // quadratic irrational with purely periodic expansion [0; block, block, ...].
  BigReal value() const {
    init_precision();
    if (!is_periodic_cf()) return BigReal(literal_);
    // Moebius matrix of x -> 1/(b + x) is [[0,1],[1,b]]; compose the block.
    BigInt A = 1, B = 0, C = 0, D = 1;
    for (long long b : block_) {
      // [[A,B],[C,D]] * [[0,1],[1,b]]
      BigInt A2 = B, B2 = A + B * b;
      BigInt C2 = D, D2 = C + D * b;
      A = A2;
      B = B2;
      C = C2;
      D = D2;
    }
    // Fixed point of x = (Ax+B)/(Cx+D): C x^2 + (D-A) x - B = 0.
    BigReal disc = sqrt(BigReal(BigInt((D - A) * (D - A) + 4 * B * C)));
    BigReal theta = (BigReal(BigInt(A - D)) + disc) / (2 * BigReal(C));
    if (!(theta > 0 && theta < 1))
      throw InvariantViolation("periodic continued fraction fixed point not in (0,1)");
    return theta;
  }

  // First n partial quotients: exact repetition for periodic mode, cf_expand
  // of the literal otherwise.
  std::vector<long long> quotients(int n) const {
    if (n < 0) throw BadConfig("quotients: negative count");
    if (is_periodic_cf()) {
      std::vector<long long> a(n);
      for (int j = 0; j < n; ++j) a[j] = block_[j % block_.size()];
      return a;
    }
    CfExpansion e = cf_expand(value(), n);
    if (static_cast<int>(e.a.size()) < n)
      throw PrecisionExhausted("literal frequency is rational or too short for requested quotients");
    return e.a;
  }

 private:
  static std::string describe_block(const std::vector<long long>& b) {
    std::string s = "cf:";
    for (size_t i = 0; i < b.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(b[i]);
    }
    return s;
  }

  std::vector<long long> block_;
  std::string literal_;
  std::string name_;
};

}  // namespace cmvlab
