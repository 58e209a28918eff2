#include <doctest.h>

#include <random>

#include "foxfree/ringmat.hpp"

using namespace foxfree;

namespace {

// One Laurent variable, phi' = augmentation.
LaurentRing ring1() { return LaurentRing::augmentation_ring(1); }

LaurentPoly random_entry(const LaurentRing& r, std::mt19937& rng) {
  // Random product of (t_i +- 1) factors and a small constant.
  std::uniform_int_distribution<int> nfact(0, 3);
  std::uniform_int_distribution<int> var(0, r.nvars() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  LaurentPoly out = r.constant(coef(rng));
  int n = nfact(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<int64_t> e(static_cast<size_t>(r.nvars()), 0);
    e[static_cast<size_t>(var(rng))] = 1;
    LaurentPoly f = r.monomial(e);
    f = sign(rng) ? r.add(f, r.one()) : r.sub(f, r.one());
    out = r.mul(out, f);
  }
  return out;
}

}  // namespace

TEST_SUITE("ringmat") {
  TEST_CASE("laurent parse/format round-trip") {
    LaurentRing r = LaurentRing::augmentation_ring(2);
    CHECK(r.format(r.parse("2*t1^-1 - 1")) == "2*t1^-1 - 1");
    CHECK(r.format(r.parse("t1*t2^-1 + 3")) == "3 + t1*t2^-1");
    CHECK(r.format(r.zero()) == "0");
    CHECK(r.parse("0").is_zero());
    CHECK(r.parse("t1 - t1").is_zero());
    std::mt19937 rng(51);
    for (int i = 0; i < 200; ++i) {
      LaurentPoly p = random_entry(r, rng);
      CHECK(r.parse(r.format(p)) == p);
    }
  }

  TEST_CASE("laurent valuation examples") {
    LaurentRing r = ring1();
    CHECK(r.valuation(r.constant(3)) == Valuation{false, 0});
    CHECK(r.valuation(r.parse("t1 - 1")) == Valuation{false, 1});
    CHECK(r.valuation(r.zero()) == Valuation{true, 0});
    CHECK(r.valuation(r.parse("t1^2 - 2*t1 + 1")) == Valuation{false, 2});
    CHECK(r.valuation(r.parse("t1^-1 - 1")) == Valuation{false, 1});

    // Residue map killing only t2.
    LaurentRing partial(2, {0, 0}, {1});
    CHECK(partial.valuation(partial.parse("t1 - 1")) == Valuation{false, 0});
    CHECK(partial.valuation(partial.parse("t2 - 1")) == Valuation{false, 1});
    CHECK(partial.valuation(partial.parse("t1*t2 - t1")) == Valuation{false, 1});
  }

  TEST_CASE("valuation is multiplicative and min-superadditive") {
    LaurentRing r = LaurentRing::augmentation_ring(2);
    std::mt19937 rng(52);
    for (int i = 0; i < 1000; ++i) {
      LaurentPoly a = random_entry(r, rng), b = random_entry(r, rng);
      Valuation va = r.valuation(a), vb = r.valuation(b);
      Valuation vab = r.valuation(r.mul(a, b));
      if (va.infinite || vb.infinite) {
        CHECK(vab.infinite);
      } else {
        CHECK(vab == Valuation{false, va.v + vb.v});
      }
      Valuation vsum = r.valuation(r.add(a, b));
      Valuation lower = va <= vb ? va : vb;
      CHECK(lower <= vsum);
    }
  }

  TEST_CASE("ore pair") {
    LaurentRing r = ring1();
    LaurentPoly a = r.parse("t1 - 1"), b = r.parse("t1 + 1");
    auto [c, d] = r.ore_pair(a, b);
    CHECK(c == b);
    CHECK(d == a);
    CHECK(r.mul(a, c) == r.mul(b, d));
    CHECK_THROWS_AS(r.ore_pair(r.zero(), b), DomainError);
  }

  TEST_CASE("zero divisor detection in torsion rings") {
    LaurentRing torsion(2, {2, 0}, {0, 1});
    CHECK(torsion.is_zero_divisor(torsion.parse("t1 + 1")));
    CHECK(torsion.is_zero_divisor(torsion.parse("t1 - 1")));
    CHECK(!torsion.is_zero_divisor(torsion.parse("t1 + 2")));
    CHECK(!torsion.is_zero_divisor(torsion.parse("t2 - 1")));
    CHECK(!torsion.is_zero_divisor(torsion.zero()));
    CHECK(torsion.mul(torsion.parse("t1 + 1"), torsion.parse("t1 - 1")).is_zero());

    LaurentRing z3(1, {3}, {0});
    CHECK(z3.is_zero_divisor(z3.parse("t1^2 + t1 + 1")));
    CHECK(z3.is_zero_divisor(z3.parse("t1 - 1")));
    CHECK(!z3.is_zero_divisor(z3.parse("t1 + 1")));  // unit: (t+1)(t^2+1) = ... nonzero chars

    LaurentRing free_ring = ring1();
    CHECK(!free_ring.is_zero_divisor(free_ring.parse("t1 - 1")));
  }

  TEST_CASE("elementary step examples") {
    LaurentRing r = ring1();
    RingMatrix<LaurentRing> m = parse_matrix(r, "t1 - 1, 1");
    RingMatrix<LaurentRing> swapped =
        apply_elementary(r, m, {StepKind::SwapCols, 0, 1, r.zero()});
    CHECK(format_matrix(r, swapped) == "1, -1 + t1");

    RingMatrix<LaurentRing> unit = parse_matrix(r, "1, 0");
    RingMatrix<LaurentRing> scaled =
        apply_elementary(r, unit, {StepKind::ScaleRow, 0, 0, r.parse("t1")});
    CHECK(format_matrix(r, scaled) == "t1, 0");

    RingMatrix<LaurentRing> two = parse_matrix(r, "t1 - 1, 1; t1^2 - 1, t1 + 1");
    RingMatrix<LaurentRing> cleared =
        apply_elementary(r, two, {StepKind::AddScaledRow, 0, 1, r.parse("-1 - t1")});
    CHECK(r.is_zero(cleared.at(1, 0)));
    CHECK(r.is_zero(cleared.at(1, 1)));

    CHECK_THROWS_AS(apply_elementary(r, two, {StepKind::AddScaledRow, 1, 0, r.one()}),
                    DomainError);
    CHECK_THROWS_AS(apply_elementary(r, two, {StepKind::ScaleRow, 0, 0, r.zero()}),
                    DomainError);
    CHECK_THROWS_AS(apply_elementary(r, two, {StepKind::SwapCols, 0, 5, r.zero()}),
                    DomainError);
  }

  TEST_CASE("triangularize the paper-style 2x2 example") {
    LaurentRing r = ring1();
    RingMatrix<LaurentRing> m = parse_matrix(r, "t1 - 1, 1; t1^2 - 1, t1 + 1");
    Triangularization<LaurentRing> tri = triangularize(r, m);
    CHECK(tri.rank == 1);
    // The second row is eliminated entirely.
    CHECK(r.is_zero(tri.matrix.at(1, 0)));
    CHECK(r.is_zero(tri.matrix.at(1, 1)));
    CHECK(!r.is_zero(tri.matrix.at(0, 0)));
    CHECK(replay(r, m, tri.log) == tri.matrix);
    // psi-minimal pivot: the constant 1 is moved into the corner.
    CHECK(r.valuation(tri.matrix.at(0, 0)) == Valuation{false, 0});
  }

  TEST_CASE("identity stays put with an empty log") {
    LaurentRing r = ring1();
    RingMatrix<LaurentRing> m = parse_matrix(r, "1, 0; 0, 1");
    Triangularization<LaurentRing> tri = triangularize(r, m);
    CHECK(tri.rank == 2);
    CHECK(tri.log.empty());
    CHECK(tri.matrix == m);
  }

  TEST_CASE("pivot with smaller valuation is swapped in") {
    LaurentRing r = ring1();
    RingMatrix<LaurentRing> m = parse_matrix(r, "t1 - 1, 2");
    Triangularization<LaurentRing> tri = triangularize(r, m);
    CHECK(tri.rank == 1);
    CHECK(format_matrix(r, tri.matrix) == "2, -1 + t1");
    REQUIRE(tri.log.size() == 1);
    CHECK(tri.log[0].kind == StepKind::SwapCols);
  }

  TEST_CASE("triangularization contract on random laurent matrices") {
    LaurentRing r = LaurentRing::augmentation_ring(2);
    std::mt19937 rng(53);
    for (int iter = 0; iter < 60; ++iter) {
      RingMatrix<LaurentRing> m = RingMatrix<LaurentRing>::filled(r, 3, 5);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) m.at(i, j) = random_entry(r, rng);

      Triangularization<LaurentRing> tri = triangularize(r, m);
      // Triangular shape.
      for (int k = 0; k < tri.rank; ++k) {
        CHECK(!r.is_zero(tri.matrix.at(k, k)));
        for (int n = 0; n < k; ++n) CHECK(r.is_zero(tri.matrix.at(k, n)));
      }
      for (int k = tri.rank; k < 3; ++k)
        for (int n = 0; n < 5; ++n) CHECK(r.is_zero(tri.matrix.at(k, n)));
      // Pivot valuations are row-minimal.
      for (int k = 0; k < tri.rank; ++k)
        for (int n = k; n < 5; ++n)
          CHECK(r.valuation(tri.matrix.at(k, k)) <= r.valuation(tri.matrix.at(k, n)));
      // Replay is bit-exact.
      CHECK(replay(r, m, tri.log) == tri.matrix);
      // The rank matches the fraction-field rank of the input.
      CHECK(tri.rank == minor_rank(r, m));
    }
  }

  TEST_CASE("integer domain triangularization") {
    IntegerRing z;
    RingMatrix<IntegerRing> m = parse_matrix(z, "2, 4, 1; 3, 6, 2");
    Triangularization<IntegerRing> tri = triangularize(z, m);
    CHECK(tri.rank == 2);
    CHECK(replay(z, m, tri.log) == tri.matrix);
    CHECK(minor_rank(z, m) == 2);
  }

  TEST_CASE("log serialization round-trips and replays") {
    LaurentRing r = LaurentRing::augmentation_ring(2);
    std::mt19937 rng(54);
    RingMatrix<LaurentRing> m = RingMatrix<LaurentRing>::filled(r, 3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = random_entry(r, rng);
    Triangularization<LaurentRing> tri = triangularize(r, m);
    std::string text = format_log(r, tri.log);
    TransformLog<LaurentRing> parsed = parse_log(r, text);
    REQUIRE(parsed.size() == tri.log.size());
    CHECK(replay(r, m, parsed) == tri.matrix);
    CHECK(format_log(r, parsed) == text);
  }

  TEST_CASE("matrix text round-trip") {
    LaurentRing r = LaurentRing::augmentation_ring(2);
    std::string text = "2*t1^-1 - 1, t2; 0, 1 + t1*t2";
    RingMatrix<LaurentRing> m = parse_matrix(r, text);
    CHECK(format_matrix(r, m) == text);
    CHECK_THROWS_AS(parse_matrix(r, "1, 2; 3"), DomainError);
  }
}
