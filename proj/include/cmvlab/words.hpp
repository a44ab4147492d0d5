#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contfrac.hpp"
#include "errors.hpp"
#include "precision.hpp"

namespace cmvlab {

enum class WordOrigin { mechanical_floor, mechanical_ceiling, rotation_coding, substitution };

inline const char* word_origin_name(WordOrigin o) {
  switch (o) {
    case WordOrigin::mechanical_floor: return "mechanical-floor";
    case WordOrigin::mechanical_ceiling: return "mechanical-ceiling";
    case WordOrigin::rotation_coding: return "rotation-coding";
    case WordOrigin::substitution: return "substitution";
  }
  return "?";
}

// Finite binary word over {0,1}. symbols[i] sits at ambient position
// origin_index + i of the bi-infinite sequence it was cut from.
struct Word {
  std::string symbols;
  long long origin_index = 0;
  WordOrigin provenance = WordOrigin::substitution;

  long long lo() const { return origin_index; }
  long long hi() const { return origin_index + static_cast<long long>(symbols.size()); }

  int at_ambient(long long n) const {
    if (n < lo() || n >= hi()) throw OutOfWindow("word index outside generated window");
    return symbols[static_cast<size_t>(n - origin_index)] - '0';
  }
};

// s_{theta,phi}(n) = floor((n+1)theta+phi) - floor(n theta+phi); the ceiling
// variant replaces both floors by ceilings.
inline int mechanical_bit(const BigReal& theta, const BigReal& phi, long long n,
                          bool ceiling = false) {
  init_precision();
  if (!(theta > 0 && theta < 1)) throw DomainError("mechanical_bit needs theta in (0,1)");
  BigReal lo = n * theta + phi;
  BigReal hi = lo + theta;
  BigInt d = ceiling ? checked_ceil(hi) - checked_ceil(lo) : checked_floor(hi) - checked_floor(lo);
  return static_cast<int>(d);
}

inline Word mechanical_word(const BigReal& theta, const BigReal& phi, long long n0,
                            long long len, bool ceiling = false) {
  if (!(theta > 0 && theta < 1)) throw DomainError("mechanical_word needs theta in (0,1)");
  if (len < 0) throw BadConfig("mechanical_word: negative length");
  Word w;
  w.origin_index = n0;
  w.provenance = ceiling ? WordOrigin::mechanical_ceiling : WordOrigin::mechanical_floor;
  w.symbols.reserve(static_cast<size_t>(len));
  BigInt prev = ceiling ? checked_ceil(n0 * theta + phi) : checked_floor(n0 * theta + phi);
  for (long long n = n0; n < n0 + len; ++n) {
    BigReal x = (n + 1) * theta + phi;
    BigInt cur = ceiling ? checked_ceil(x) : checked_floor(x);
    w.symbols.push_back(static_cast<char>('0' + static_cast<int>(cur - prev)));
    prev = cur;
  }
  return w;
}

// Arc of the circle R/Z from left to right (counterclockwise); wraps through
// 0 when right <= left. Endpoint membership is governed by the closed flags.
struct RotationInterval {
  BigReal left, right;
  bool left_closed = true;
  bool right_closed = false;

  RotationInterval(BigReal l, BigReal r, bool lc = true, bool rc = false)
      : left(std::move(l)), right(std::move(r)), left_closed(lc), right_closed(rc) {
    init_precision();
    if (left < 0 || left >= 1 || right <= 0 || right > 1)
      throw DomainError("interval endpoints must satisfy left in [0,1), right in (0,1]");
    BigReal len = arc_length();
    if (len <= 0 || len >= 1)
      throw DomainError("interval must be nondegenerate: length strictly between 0 and 1");
  }

  static RotationInterval sturmian_floor(const BigReal& theta) {
    return RotationInterval(1 - theta, BigReal(1), true, false);  // [1-theta, 1)
  }
  static RotationInterval sturmian_ceiling(const BigReal& theta) {
    return RotationInterval(1 - theta, BigReal(1), false, true);  // (1-theta, 1]
  }

  BigReal arc_length() const {
    BigReal len = right - left;
    if (len <= 0) len += 1;
    return len;
  }

  // chi_I(x) for x in [0,1). A point within the guard radius of an endpoint
  // (circle distance) is only decidable when it equals the endpoint exactly.
  bool contains(const BigReal& x) const {
    BigReal g = endpoint_guard();
    bool at_left = circle_equal(x, left);
    bool at_right = circle_equal(x, right);
    if (at_left) return left_closed;
    if (at_right) return right_closed;
    if (circle_dist(x, left) < g || circle_dist(x, right) < g)
      throw PrecisionExhausted("rotation orbit within 2^-64 of an interval endpoint");
    if (right > left) return x > left && x < right;
    return x > left || x < right;  // wrapping arc
  }

 private:
  static BigReal circle_dist(const BigReal& x, const BigReal& y) {
    BigReal d = abs(x - y);
    if (d > BigReal(0.5)) d = 1 - d;
    return d;
  }
  static bool circle_equal(const BigReal& x, const BigReal& y) {
    BigReal d = abs(x - y);
    return d == 0 || d == 1;
  }
};

inline int rotation_bit(const BigReal& theta, const BigReal& phi, const RotationInterval& I,
                        long long n) {
  if (!(theta > 0 && theta < 1)) throw DomainError("rotation_bit needs theta in (0,1)");
  return I.contains(frac_part(n * theta + phi)) ? 1 : 0;
}

inline Word rotation_word(const BigReal& theta, const BigReal& phi, const RotationInterval& I,
                          long long n0, long long len) {
  Word w;
  w.origin_index = n0;
  w.provenance = WordOrigin::rotation_coding;
  w.symbols.reserve(static_cast<size_t>(len));
  for (long long n = n0; n < n0 + len; ++n)
    w.symbols.push_back(static_cast<char>('0' + rotation_bit(theta, phi, I, n)));
  return w;
}

// v_{-1} = "1", v_0 = "0", v_1 = v_0^{a_1 - 1} v_{-1}, v_n = v_{n-1}^{a_n} v_{n-2}.
// |v_k| = q_k for k >= 0.
inline Word substitution_word(std::span<const long long> cf, int k,
                              size_t max_len = size_t(1) << 24) {
  if (k < -1) throw BadConfig("substitution_word needs k >= -1");
  std::string prev = "1";  // v_{-1}
  std::string cur = "0";   // v_0
  if (k == -1) return {prev, 0, WordOrigin::substitution};
  for (int n = 1; n <= k; ++n) {
    if (static_cast<size_t>(n) > cf.size())
      throw BadConfig("substitution_word: not enough partial quotients");
    long long an = cf[n - 1];
    if (an < 1) throw DomainError("partial quotients must be >= 1");
    long long reps = (n == 1) ? an - 1 : an;
    if ((reps + 1) * cur.size() + prev.size() > max_len)
      throw BadConfig("substitution_word exceeds the length cap");
    std::string next;
    next.reserve(static_cast<size_t>(reps) * cur.size() + prev.size());
    for (long long r = 0; r < reps; ++r) next += cur;
    next += prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur, 0, WordOrigin::substitution};
}

// v_k = omega_0|[0, q_k - 1] with omega_0 = s_{theta,theta}, valid for k >= 1.
inline bool check_prefix_identity(const Frequency& freq, int k) {
  if (k < 1) throw BadConfig("prefix identity holds for k >= 1");
  std::vector<long long> cf = freq.quotients(k);
  Word v = substitution_word(cf, k);
  BigReal theta = freq.value();
  Word w = mechanical_word(theta, theta, 0, static_cast<long long>(v.symbols.size()));
  return v.symbols == w.symbols;
}

// Number of distinct length-n factors in the word. The window must be
// comfortably longer than n for the count to be meaningful.
inline size_t factor_complexity(const Word& w, int n) {
  if (n < 1) throw BadConfig("factor_complexity needs n >= 1");
  if (w.symbols.size() < static_cast<size_t>(11) * n)
    throw WindowTooSmall("factor_complexity window shorter than 11*n");
  std::set<std::string_view> factors;
  std::string_view s(w.symbols);
  for (size_t i = 0; i + n <= s.size(); ++i) factors.insert(s.substr(i, n));
  return factors.size();
}

struct GordonScale {
  long long n_k = 0;
  int candidate = -1;  // index into {q_{k-1}, q_k, q_{k+1}, q_k + q_{k+1}}
  bool two_block = false;
  bool three_block = false;
};

// Finds a repetition scale n_k among the four candidates such that
// omega(j) = omega(j + n_k) for 0 <= j < n_k; also reports whether the
// stronger centered repetition omega(j - n_k) = omega(j) holds (only
// checkable when the word covers [-n_k, 0)).
inline GordonScale gordon_scales(const Word& w, const Convergents& conv, int k) {
  if (k < 3) throw BadConfig("gordon_scales needs k >= 3");
  if (static_cast<size_t>(k + 1) >= conv.q.size())
    throw BadConfig("gordon_scales: convergents too short for k+1");
  const BigInt cand_big[4] = {conv.q[k - 1], conv.q[k], conv.q[k + 1],
                              conv.q[k] + conv.q[k + 1]};
  bool skipped_uncheckable = false;
  for (int ci = 0; ci < 4; ++ci) {
    if (cand_big[ci] > BigInt(1) << 40) throw BadConfig("repetition scale too large");
    long long n = static_cast<long long>(cand_big[ci]);
    if (w.lo() > 0 || w.hi() < 2 * n) {
      skipped_uncheckable = true;  // window cannot certify this candidate
      continue;
    }
    bool ok = true;
    for (long long j = 0; j < n && ok; ++j)
      ok = w.at_ambient(j) == w.at_ambient(j + n);
    if (!ok) continue;
    GordonScale g;
    g.n_k = n;
    g.candidate = ci;
    g.two_block = true;
    if (w.lo() <= -n) {
      bool three = true;
      for (long long j = 0; j < n && three; ++j)
        three = w.at_ambient(j - n) == w.at_ambient(j);
      g.three_block = three;
    }
    return g;
  }
  if (skipped_uncheckable)
    throw OutOfWindow("word window too short to certify the remaining candidate scales");
  throw NoRepetitionFound("no candidate scale verifies for k=" + std::to_string(k));
}

}  // namespace cmvlab
