#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace cmvlab {

// Arbitrary-precision real with runtime-selected mantissa width. All BigReal
// work in the library happens at the precision installed by init_precision /
// PrecisionScope; mixing widths mid-computation is not supported.
using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline unsigned bits_to_digits10(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 2;
}

inline int& precision_bits_storage() {
  static int bits = 0;
  return bits;
}

}  // namespace detail

inline void set_precision_bits(int bits) {
  if (bits < 64 || bits > 1 << 20)
    throw BadConfig("precision must be between 64 and 2^20 bits, got " + std::to_string(bits));
  detail::precision_bits_storage() = bits;
  BigReal::default_precision(detail::bits_to_digits10(bits));
}

// Reads CMVLAB_PRECISION (bits) on first use; default 256.
inline int precision_bits() {
  int& bits = detail::precision_bits_storage();
  if (bits == 0) {
    int want = 256;
    if (const char* env = std::getenv("CMVLAB_PRECISION")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0')
        throw BadConfig(std::string("CMVLAB_PRECISION is not an integer: ") + env);
      want = static_cast<int>(v);
    }
    set_precision_bits(want);
  }
  return bits;
}

// Entry points that begin BigReal work call this so the working precision is
// installed before the first arithmetic allocates a result.
inline void init_precision() {
  (void)precision_bits();
}

// Temporarily raises (never lowers) working precision. Not thread safe: the
// underlying default is process global.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : saved_(precision_bits()) {
    if (bits > saved_) set_precision_bits(bits);
  }
  ~PrecisionScope() { set_precision_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

// Minimal complex type over BigReal. std::complex is only specified for the
// builtin floating types, so we carry our own.
template <typename T>
struct Cx {
  T re{}, im{};

  Cx() = default;
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cx(T r) : re(std::move(r)), im(T(0)) {}

  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator-() const { return {-re, -im}; }
  Cx operator*(const Cx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cx operator*(const T& s) const { return {re * s, im * s}; }
  Cx operator/(const T& s) const { return {re / s, im / s}; }
  Cx operator/(const Cx& o) const {
    T d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const Cx& o) const { return re == o.re && im == o.im; }
};

template <typename T>
Cx<T> conj(const Cx<T>& c) {
  return {c.re, -c.im};
}
template <typename T>
T norm(const Cx<T>& c) {  // squared magnitude
  return c.re * c.re + c.im * c.im;
}
template <typename T>
T abs(const Cx<T>& c) {
  using std::sqrt;
  return sqrt(norm(c));
}
template <typename T>
T real(const Cx<T>& c) {
  return c.re;
}
template <typename T>
T imag(const Cx<T>& c) {
  return c.im;
}

using BigComplex = Cx<BigReal>;

// e^{i*angle} at working precision.
inline BigComplex big_unit(const BigReal& angle) {
  return {cos(angle), sin(angle)};
}

// Guard radius for decisions that depend on which side of an integer (or an
// interval endpoint) a computed value falls. Values closer than this are
// ambiguous at any supported precision and must not be silently rounded.
inline BigReal endpoint_guard() {
  init_precision();
  return ldexp(BigReal(1), -64);
}

// floor with an ambiguity guard. An argument that is exactly an integer is
// accepted (it was constructed as one); anything merely within the guard of
// an integer cannot be trusted after upstream rounding.
inline BigInt checked_floor(const BigReal& x) {
  BigReal f = floor(x);
  BigReal d = x - f;
  if (d != 0) {
    BigReal g = endpoint_guard();
    if (d < g || d > 1 - g)
      throw PrecisionExhausted("floor argument within 2^-64 of an integer");
  }
  return static_cast<BigInt>(f);
}

inline BigInt checked_ceil(const BigReal& x) {
  return -checked_floor(-x);
}

// Fractional part in [0,1). No guard: as a point on the circle R/Z the
// result is continuous in x, so callers that compare it against endpoints
// apply their own guard in circle distance.
inline BigReal frac_part(const BigReal& x) {
  BigReal f = x - floor(x);
  if (f >= 1) f -= 1;  // defensive: rounding could land exactly on 1
  if (f < 0) f += 1;
  return f;
}

}  // namespace cmvlab
