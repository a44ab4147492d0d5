#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <cmvlab/contfrac.hpp>

using namespace cmvlab;

TEST_CASE("convergents follow the classical recursion", "[contfrac]") {
  long long golden_cf[] = {1, 1, 1, 1};
  Convergents c = convergents(golden_cf, 4);
  REQUIRE(c.p == std::vector<BigInt>{0, 1, 1, 2, 3});
  REQUIRE(c.q == std::vector<BigInt>{1, 1, 2, 3, 5});
  REQUIRE(c.verify());

  long long silver_cf[] = {2, 2};
  Convergents s = convergents(silver_cf, 2);
  REQUIRE(s.p == std::vector<BigInt>{0, 1, 2});
  REQUIRE(s.q == std::vector<BigInt>{1, 2, 5});
  REQUIRE(s.verify());
}

TEST_CASE("determinant identity holds for random quotients", "[contfrac]") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<long long> dist(1, 9);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<long long> cf(12);
    for (auto& a : cf) a = dist(rng);
    Convergents c = convergents(cf, 12);
    REQUIRE(c.verify());
    for (size_t n = 1; n < c.p.size(); ++n) {
      BigInt det = c.p[n] * c.q[n - 1] - c.p[n - 1] * c.q[n];
      REQUIRE(det == ((n % 2 == 1) ? 1 : -1));
    }
  }
}

TEST_CASE("golden denominators are Fibonacci numbers", "[contfrac]") {
  std::vector<long long> ones(15, 1);
  Convergents c = convergents(ones, 15);
  REQUIRE(c.q[15] == 987);
}

TEST_CASE("cf_expand recovers quotients of named irrationals", "[contfrac]") {
  precision_bits();
  CfExpansion g = cf_expand(Frequency::golden().value(), 20);
  REQUIRE(g.a == std::vector<long long>(20, 1));
  REQUIRE_FALSE(g.terminated);

  CfExpansion s = cf_expand(Frequency::silver().value(), 15);
  REQUIRE(s.a == std::vector<long long>(15, 2));

  CfExpansion m = cf_expand(Frequency::periodic({1, 2}).value(), 14);
  std::vector<long long> expect;
  for (int i = 0; i < 7; ++i) {
    expect.push_back(1);
    expect.push_back(2);
  }
  REQUIRE(m.a == expect);
}

TEST_CASE("cf_expand terminates on rationals", "[contfrac]") {
  CfExpansion e = cf_expand(BigReal(1) / 4, 10);
  REQUIRE(e.terminated);
  REQUIRE(e.a == std::vector<long long>{4});
}

TEST_CASE("cf_expand rejects out-of-range input", "[contfrac]") {
  REQUIRE_THROWS_AS(cf_expand(BigReal(0), 5), DomainError);
  REQUIRE_THROWS_AS(cf_expand(BigReal(1.5), 5), DomainError);
  REQUIRE_THROWS_AS(cf_expand(BigReal(0.5), 0), BadConfig);
}

TEST_CASE("periodic frequencies evaluate to their quadratic fixed points", "[contfrac]") {
  BigReal golden = Frequency::golden().value();
  REQUIRE(abs(golden - (sqrt(BigReal(5)) - 1) / 2) < 1e-60);

  BigReal silver = Frequency::silver().value();
  REQUIRE(abs(silver - (sqrt(BigReal(2)) - 1)) < 1e-60);

  BigReal onetwo = Frequency::periodic({1, 2}).value();
  REQUIRE(abs(onetwo - (sqrt(BigReal(3)) - 1)) < 1e-60);
}

TEST_CASE("frequency quotients repeat the block exactly", "[contfrac]") {
  Frequency f = Frequency::periodic({3, 1, 4});
  std::vector<long long> a = f.quotients(8);
  REQUIRE(a == std::vector<long long>{3, 1, 4, 3, 1, 4, 3, 1});
  REQUIRE(f.is_periodic_cf());
  REQUIRE(f.name() == "cf:3,1,4");
}

TEST_CASE("decimal frequencies parse and validate", "[contfrac]") {
  Frequency f = Frequency::decimal("0.7548776662466927");
  REQUIRE_FALSE(f.is_periodic_cf());
  std::vector<long long> a = f.quotients(5);
  REQUIRE(a.size() == 5);
  REQUIRE_THROWS_AS(Frequency::decimal("not-a-number"), DomainError);
  REQUIRE_THROWS_AS(Frequency::decimal("1.25"), DomainError);
  REQUIRE_THROWS_AS(Frequency::decimal("0.5").quotients(6), PrecisionExhausted);
}
