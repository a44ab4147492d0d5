#include <catch2/catch_amalgamated.hpp>

#include <cmvlab/contfrac.hpp>
#include <cmvlab/words.hpp>

using namespace cmvlab;

TEST_CASE("golden mechanical word matches the hand-computed prefix", "[words]") {
  BigReal theta = Frequency::golden().value();
  Word w = mechanical_word(theta, theta, 0, 10);
  REQUIRE(w.symbols == "1011010110");
  REQUIRE(w.provenance == WordOrigin::mechanical_floor);

  Word neg = mechanical_word(theta, theta, -3, 3);
  REQUIRE(neg.symbols == "110");
  REQUIRE(neg.lo() == -3);
  REQUIRE(neg.at_ambient(-1) == 0);
  REQUIRE_THROWS_AS(neg.at_ambient(0), OutOfWindow);
}

TEST_CASE("substitution words follow the standard recursion", "[words]") {
  std::vector<long long> golden(6, 1);
  REQUIRE(substitution_word(golden, -1).symbols == "1");
  REQUIRE(substitution_word(golden, 0).symbols == "0");
  REQUIRE(substitution_word(golden, 1).symbols == "1");
  REQUIRE(substitution_word(golden, 2).symbols == "10");
  REQUIRE(substitution_word(golden, 3).symbols == "101");
  REQUIRE(substitution_word(golden, 4).symbols == "10110");

  std::vector<long long> silver(4, 2);
  REQUIRE(substitution_word(silver, 1).symbols == "01");
  REQUIRE(substitution_word(silver, 2).symbols == "01010");
}

TEST_CASE("substitution word lengths equal convergent denominators", "[words]") {
  std::vector<long long> cf = {1, 2, 1, 3, 2, 1, 1, 2};
  Convergents conv = convergents(cf, 8);
  for (int k = 1; k <= 8; ++k) {
    Word v = substitution_word(cf, k);
    REQUIRE(BigInt(v.symbols.size()) == conv.q[static_cast<size_t>(k)]);
  }
}

TEST_CASE("prefix identity holds for named frequencies", "[words]") {
  for (const Frequency& f :
       {Frequency::golden(), Frequency::silver(), Frequency::periodic({1, 2})}) {
    for (int k = 1; k <= 12; ++k) REQUIRE(check_prefix_identity(f, k));
  }
  REQUIRE_THROWS_AS(check_prefix_identity(Frequency::golden(), 0), BadConfig);
}

TEST_CASE("rotation coding with the Sturmian interval matches mechanical words", "[words]") {
  BigReal theta = Frequency::silver().value();
  BigReal phi = BigReal(1) / 7;
  RotationInterval floor_iv = RotationInterval::sturmian_floor(theta);
  RotationInterval ceil_iv = RotationInterval::sturmian_ceiling(theta);
  Word mf = mechanical_word(theta, phi, -60, 120, false);
  Word mc = mechanical_word(theta, phi, -60, 120, true);
  Word rf = rotation_word(theta, phi, floor_iv, -60, 120);
  Word rc = rotation_word(theta, phi, ceil_iv, -60, 120);
  REQUIRE(mf.symbols == rf.symbols);
  REQUIRE(mc.symbols == rc.symbols);
  REQUIRE(rf.provenance == WordOrigin::rotation_coding);
}

TEST_CASE("floor and ceiling variants differ only on orbit hits of the endpoint", "[words]") {
  BigReal theta = Frequency::golden().value();
  BigReal phi = BigReal(2) / 11;
  Word f = mechanical_word(theta, phi, 0, 200, false);
  Word c = mechanical_word(theta, phi, 0, 200, true);
  // an irrational orbit never hits the endpoint, so the codings coincide
  REQUIRE(f.symbols == c.symbols);
  REQUIRE(f.provenance == WordOrigin::mechanical_floor);
  REQUIRE(c.provenance == WordOrigin::mechanical_ceiling);
}

TEST_CASE("rotation intervals guard ambiguous endpoint decisions", "[words]") {
  RotationInterval iv(BigReal(0.25), BigReal(0.75));
  REQUIRE(iv.contains(BigReal(0.5)));
  REQUIRE(iv.contains(BigReal(0.25)));      // closed left endpoint
  REQUIRE_FALSE(iv.contains(BigReal(0.75)));  // open right endpoint
  REQUIRE_FALSE(iv.contains(BigReal(0.1)));
  BigReal near = BigReal(0.25) + ldexp(BigReal(1), -100);
  REQUIRE_THROWS_AS(iv.contains(near), PrecisionExhausted);
  REQUIRE_THROWS_AS(RotationInterval(BigReal(1.5), BigReal(1)), DomainError);
  REQUIRE_THROWS_AS(RotationInterval(BigReal(0.3), BigReal(0.3)), DomainError);
}

TEST_CASE("wrapping intervals classify both sides of zero", "[words]") {
  RotationInterval iv(BigReal(0.8), BigReal(0.2));
  REQUIRE(iv.contains(BigReal(0.9)));
  REQUIRE(iv.contains(BigReal(0.1)));
  REQUIRE_FALSE(iv.contains(BigReal(0.5)));
  REQUIRE(iv.arc_length() == BigReal(0.2) - BigReal(0.8) + 1);
}

TEST_CASE("factor complexity of Sturmian words is n + 1", "[words]") {
  BigReal theta = Frequency::golden().value();
  Word w = mechanical_word(theta, theta, 0, 400);
  for (int n = 1; n <= 30; ++n) REQUIRE(factor_complexity(w, n) == static_cast<size_t>(n) + 1);
  REQUIRE_THROWS_AS(factor_complexity(w, 40), WindowTooSmall);

  Word s = mechanical_word(Frequency::silver().value(), BigReal(1) / 3, 0, 300);
  for (int n = 1; n <= 20; ++n) REQUIRE(factor_complexity(s, n) == static_cast<size_t>(n) + 1);
}

TEST_CASE("gordon_scales finds the golden repetition scale at k = 3", "[words]") {
  BigReal theta = Frequency::golden().value();
  Word w = mechanical_word(theta, theta, -10, 40);
  std::vector<long long> ones(6, 1);
  Convergents conv = convergents(ones, 5);
  GordonScale g = gordon_scales(w, conv, 3);
  REQUIRE(g.n_k == 3);
  REQUIRE(g.candidate == 1);
  REQUIRE(g.two_block);
  REQUIRE_FALSE(g.three_block);
}

TEST_CASE("gordon_scales certifies a two-block repetition at every k in range", "[words]") {
  BigReal theta = Frequency::golden().value();
  std::vector<long long> ones(12, 1);
  Convergents conv = convergents(ones, 11);
  long long n_top = static_cast<long long>(conv.q[10] + conv.q[11]);
  Word w = mechanical_word(theta, theta, -n_top, 3 * n_top);
  for (int k = 3; k <= 9; ++k) {
    GordonScale g = gordon_scales(w, conv, k);
    REQUIRE(g.two_block);
    bool is_candidate = false;
    for (const BigInt& c : {conv.q[k - 1], conv.q[k], conv.q[k + 1], BigInt(conv.q[k] + conv.q[k + 1])})
      is_candidate = is_candidate || BigInt(g.n_k) == c;
    REQUIRE(is_candidate);
  }
}

TEST_CASE("gordon_scales reports uncheckable windows", "[words]") {
  BigReal theta = Frequency::golden().value();
  // a 6-site window already certifies the k = 3 scale n_k = 3
  std::vector<long long> ones(6, 1);
  Convergents conv = convergents(ones, 5);
  Word w6 = mechanical_word(theta, theta, 0, 6);
  GordonScale g = gordon_scales(w6, conv, 3);
  REQUIRE(g.n_k == 3);
  REQUIRE(g.two_block);
  REQUIRE_FALSE(g.three_block);  // sites [-3, 0) not covered
  // 3 sites cannot certify any candidate in {2, 3, 5, 8}
  Word w3 = mechanical_word(theta, theta, 0, 3);
  REQUIRE_THROWS_AS(gordon_scales(w3, conv, 3), OutOfWindow);
}
