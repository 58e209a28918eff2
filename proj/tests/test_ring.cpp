#include <doctest.h>

#include <random>

#include "foxfree/magnus.hpp"
#include "foxfree/ring.hpp"

using namespace foxfree;

namespace {

FactorTable free2() { return FactorTable::free_letters({"a", "b"}); }

RingElement minus_one(const FactorTable& t, const Word& w) {
  RingElement e{w};
  e.add_term(Word{}, -1);
  return e;
}

Word random_word(const FactorTable& t, std::mt19937& rng, int max_letters) {
  std::uniform_int_distribution<int> len(0, max_letters);
  std::uniform_int_distribution<int> factor(0, t.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Syllable> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back({factor(rng), sign(rng) ? 1 : -1});
  return t.normalize(raw);
}

RingElement random_ring(const FactorTable& t, std::mt19937& rng, int terms, int max_letters) {
  std::uniform_int_distribution<int> coef(-3, 3);
  RingElement out;
  for (int i = 0; i < terms; ++i) out.add_term(random_word(t, rng, max_letters), coef(rng));
  return out;
}

}  // namespace

TEST_SUITE("ring") {
  TEST_CASE("(a-1)(b-1) expands") {
    FactorTable t = free2();
    RingElement p = ring_mul(t, minus_one(t, t.parse("a")), minus_one(t, t.parse("b")));
    RingElement expect{t.parse("a b")};
    expect.add_term(t.parse("a"), -1);
    expect.add_term(t.parse("b"), -1);
    expect.add_term(Word{}, 1);
    CHECK(p == expect);
  }

  TEST_CASE("commutator identity (a-1)(b-1) = (b-1)(a-1) + ba([a,b]-1)") {
    FactorTable t = free2();
    Word a = t.parse("a"), b = t.parse("b");
    RingElement lhs = ring_mul(t, minus_one(t, a), minus_one(t, b));
    RingElement rhs = ring_mul(t, minus_one(t, b), minus_one(t, a)) +
                      word_mul(t, t.mul(b, a), minus_one(t, t.commutator(a, b)));
    CHECK(lhs == rhs);
  }

  TEST_CASE("multiplication by zero") {
    FactorTable t = free2();
    std::mt19937 rng(7);
    RingElement u = random_ring(t, rng, 5, 4);
    CHECK(ring_mul(t, u, RingElement::zero()).is_zero());
    CHECK(ring_mul(t, RingElement::zero(), u).is_zero());
  }

  TEST_CASE("augmentation examples and homomorphism property") {
    FactorTable t = free2();
    RingElement u(t.parse("a b"), 2);
    u.add_term(Word{}, -3);
    CHECK(augmentation(u) == -1);
    CHECK(augmentation(minus_one(t, t.parse("a"))) == 0);

    std::mt19937 rng(8);
    for (int i = 0; i < 200; ++i) {
      RingElement x = random_ring(t, rng, 4, 4), y = random_ring(t, rng, 4, 4);
      CHECK(augmentation(ring_mul(t, x, y)) == augmentation(x) * augmentation(y));
      CHECK(augmentation(x + y) == augmentation(x) + augmentation(y));
    }
  }

  TEST_CASE("ring axioms exhaustively on tiny supports") {
    FactorTable t = free2();
    std::vector<Word> words = {Word{}, t.parse("a"), t.parse("b"), t.parse("a b"),
                               t.parse("b a"), t.parse("a^-1")};
    std::vector<RingElement> elems;
    for (const Word& w : words)
      for (int c = -2; c <= 2; ++c) elems.push_back(RingElement(w, c));
    for (const auto& x : elems)
      for (const auto& y : elems) {
        CHECK(ring_mul(t, x, y + y) == ring_mul(t, x, y) + ring_mul(t, x, y));
        for (const auto& z : elems)
          CHECK(ring_mul(t, ring_mul(t, x, y), z) == ring_mul(t, x, ring_mul(t, y, z)));
      }
  }

  TEST_CASE("coset_collapse examples over the abelianization") {
    FactorTable t = free2();
    QuotientHom q = QuotientHom::abelianization(t);
    RingElement u{t.parse("a b")};
    u.add_term(t.parse("b a"), -1);
    CHECK(collapse_is_zero(coset_collapse(u, q)));  // same exponent vector

    CHECK(!collapse_is_zero(coset_collapse(minus_one(t, t.parse("a")), q)));
  }

  TEST_CASE("coset_collapse kills f(n-1) exactly for kernel n") {
    FactorTable t = free2();
    QuotientHom q = QuotientHom::abelianization(t);
    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
      Word f = random_word(t, rng, 5);
      Word n = t.commutator(random_word(t, rng, 3), random_word(t, rng, 3));
      RingElement fn1 = word_mul(t, f, minus_one(t, n));
      CHECK(collapse_is_zero(coset_collapse(fn1, q)));

      // And the collapse detects non-kernel right factors.
      Word g = random_word(t, rng, 4);
      RingElement fg1 = word_mul(t, f, minus_one(t, g));
      CHECK(collapse_is_zero(coset_collapse(fg1, q)) == q.in_kernel(g));
    }
  }

  TEST_CASE("power congruence n(a-1) = (a^n - 1) mod next filtration ideal") {
    // For a of Magnus weight k, n(a-1) - (a^n - 1) has weight >= k + 1.
    FactorTable t = free2();
    const int cap = 5;
    std::vector<std::pair<Word, int>> samples = {
        {t.parse("a"), 1},
        {t.commutator(t.parse("a"), t.parse("b")), 2},
        {t.commutator(t.commutator(t.parse("a"), t.parse("b")), t.parse("b")), 3},
    };
    for (const auto& [a, k] : samples) {
      for (int n = -3; n <= 3; ++n) {
        RingElement diff = minus_one(t, a) * Int(n) - minus_one(t, t.pow(a, n));
        WeightReport w = magnus_weight(t, diff, cap);
        CHECK(w.at_least(k + 1));
      }
    }
  }

  TEST_CASE("serialization is canonical") {
    FactorTable t = free2();
    RingElement u{t.parse("a b")};
    u.add_term(t.parse("a"), -1);
    u.add_term(t.parse("b"), -1);
    u.add_term(Word{}, 1);
    CHECK(format_ring(t, u) == "1*1 - 1*a - 1*b + 1*a b");
    CHECK(format_ring(t, RingElement::zero()) == "0");
    RingElement v(t.parse("a^-1"), -1);
    CHECK(format_ring(t, v) == "-1*a^-1");
  }
}
