#include <doctest.h>

#include <random>

#include "foxfree/words.hpp"

using namespace foxfree;

namespace {

FactorTable mixed3() {
  return FactorTable({{0, FactorKind::FiniteCyclic, 3, "a"},
                      {1, FactorKind::InfiniteCyclic, 0, "b"},
                      {2, FactorKind::FreeLetter, 0, "x"}});
}

FactorTable inf2() {
  return FactorTable({{0, FactorKind::InfiniteCyclic, 0, "a"},
                      {1, FactorKind::InfiniteCyclic, 0, "b"}});
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

// All normal-form words of at most `max_syllables` syllables drawn from the
// given syllable pool.
std::vector<Word> enumerate_words(const FactorTable& t, const std::vector<Syllable>& pool,
                                  int max_syllables) {
  std::vector<Word> out = {Word{}};
  std::vector<Word> frontier = {Word{}};
  for (int l = 1; l <= max_syllables; ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Syllable& s : pool) {
        if (!w.syllables.empty() && w.syllables.back().factor == s.factor) continue;
        Word m = w;
        m.syllables.push_back(s);
        next.push_back(std::move(m));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("normalize cancels inverse pairs") {
    FactorTable t = inf2();
    Word w = t.normalize({{0, 1}, {1, 1}, {1, -1}, {0, 1}});
    CHECK(w == t.parse("a^2"));
  }

  TEST_CASE("normalize reduces finite-cyclic order") {
    FactorTable t = mixed3();
    CHECK(t.normalize({{0, 3}}).is_identity());
    CHECK(t.normalize({{0, 5}}) == t.parse("a^2"));
    CHECK(t.normalize({{0, -1}}) == t.parse("a^2"));
  }

  TEST_CASE("normalize fixes already-normal words") {
    FactorTable t = inf2();
    Word w = t.parse("a b");
    CHECK(t.normalize(w.syllables) == w);
  }

  TEST_CASE("normalize rejects unknown factor ids") {
    FactorTable t = inf2();
    CHECK_THROWS_AS(t.normalize({{7, 1}}), DomainError);
  }

  TEST_CASE("mul basic examples") {
    FactorTable t = inf2();
    CHECK(t.mul(t.parse("a b"), t.parse("b^-1 a^-1")).is_identity());
    CHECK(t.mul(t.parse("a"), t.parse("a")) == t.parse("a^2"));
    CHECK(t.mul(t.parse("a b"), t.parse("a")) == t.parse("a b a"));
  }

  TEST_CASE("invert examples") {
    FactorTable t = mixed3();
    CHECK(t.invert(t.parse("a b")) == t.parse("b^-1 a^2"));
    CHECK(t.invert(Word{}).is_identity());
    CHECK(t.invert(t.parse("a^2")) == t.parse("a"));
    CHECK(t.mul(t.parse("a^2"), t.invert(t.parse("a^2"))).is_identity());
  }

  TEST_CASE("cyclic_reduce examples") {
    FactorTable t = inf2();
    auto [core1, conj1] = t.cyclic_reduce(t.parse("b^-1 a b"));
    CHECK(core1 == t.parse("a"));
    CHECK(conj1 == t.parse("b^-1"));

    auto [core2, conj2] = t.cyclic_reduce(t.parse("a b"));
    CHECK(core2 == t.parse("a b"));
    CHECK(conj2.is_identity());

    // Repeated first/last merging until a fixed point: conjugating away the
    // leading syllable twice collapses this one to a single letter.
    Word w = t.parse("b^-1 a b a^-1 b");
    auto [core3, conj3] = t.cyclic_reduce(w);
    CHECK(core3 == t.parse("b"));
    CHECK(conj3 == t.parse("b^-1 a"));
    CHECK(t.mul(t.mul(conj3, core3), t.invert(conj3)) == w);
  }

  TEST_CASE("cyclic_reduce reassembles the input") {
    FactorTable t = mixed3();
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
      Word w = random_word(t, rng, 10);
      auto [core, conj] = t.cyclic_reduce(w);
      CHECK(t.mul(t.mul(conj, core), t.invert(conj)) == w);
      if (core.syllables.size() >= 2)
        CHECK(core.syllables.front().factor != core.syllables.back().factor);
    }
  }

  TEST_CASE("normalize is idempotent on enumerated words") {
    FactorTable t = mixed3();
    std::vector<Syllable> pool = {{0, 1}, {0, 2}, {1, 1}, {1, -1}, {2, 1}, {2, -1}};
    for (const Word& w : enumerate_words(t, pool, 4)) {
      Word n = t.normalize(w.syllables);
      CHECK(t.normalize(n.syllables) == n);
    }
  }

  TEST_CASE("mul is associative (exhaustive on short words)") {
    FactorTable t = mixed3();
    std::vector<Syllable> pool = {{0, 1}, {0, 2}, {1, 1}, {1, -1}, {2, 1}, {2, -1}};
    std::vector<Word> words = enumerate_words(t, pool, 2);
    for (const Word& u : words)
      for (const Word& v : words)
        for (const Word& w : words)
          CHECK(t.mul(u, t.mul(v, w)) == t.mul(t.mul(u, v), w));
  }

  TEST_CASE("mul is associative (random longer words)") {
    FactorTable t = mixed3();
    std::mt19937 rng(12);
    for (int i = 0; i < 1000; ++i) {
      Word u = random_word(t, rng, 4), v = random_word(t, rng, 4), w = random_word(t, rng, 4);
      CHECK(t.mul(u, t.mul(v, w)) == t.mul(t.mul(u, v), w));
      CHECK(t.mul(u, Word{}) == u);
      CHECK(t.mul(Word{}, u) == u);
    }
  }

  TEST_CASE("invert is an involution and gives inverses") {
    FactorTable t = mixed3();
    std::mt19937 rng(13);
    for (int i = 0; i < 1000; ++i) {
      Word u = random_word(t, rng, 8);
      CHECK(t.invert(t.invert(u)) == u);
      CHECK(t.mul(u, t.invert(u)).is_identity());
      CHECK(t.mul(t.invert(u), u).is_identity());
    }
  }

  TEST_CASE("serialization round-trips bit-exactly") {
    FactorTable t = mixed3();
    std::mt19937 rng(14);
    CHECK(t.format(Word{}) == "");
    CHECK(t.parse("").is_identity());
    CHECK(t.format(t.parse("a^2 b^-1")) == "a^2 b^-1");
    for (int i = 0; i < 500; ++i) {
      Word u = random_word(t, rng, 8);
      CHECK(t.parse(t.format(u)) == u);
    }
  }

  TEST_CASE("canonical ordering is shortlex") {
    FactorTable t = inf2();
    CHECK(word_less(Word{}, t.parse("a")));
    CHECK(word_less(t.parse("a"), t.parse("a b")));
    CHECK(word_less(t.parse("a"), t.parse("b")));
    CHECK(word_less(t.parse("a"), t.parse("a^-1")));
    CHECK(word_less(t.parse("a^2"), t.parse("a^-1")));
    CHECK(!word_less(t.parse("a"), t.parse("a")));
  }

  TEST_CASE("letters and letter_length") {
    FactorTable t = mixed3();
    Word w = t.parse("b^3 a^2 x^-2");
    CHECK(t.letter_length(w) == 6);
    CHECK(t.letters(w).size() == 6);
    Word prefix = t.drop_last_letter(w);
    CHECK(prefix == t.parse("b^3 a^2 x^-1"));
  }

  TEST_CASE("table validation") {
    CHECK_THROWS_AS(FactorTable({{0, FactorKind::FiniteCyclic, 1, "a"}}), DomainError);
    CHECK_THROWS_AS(FactorTable({{0, FactorKind::FreeLetter, 0, "a"},
                                 {1, FactorKind::FreeLetter, 0, "a"}}),
                    DomainError);
    CHECK_THROWS_AS(FactorTable({{0, FactorKind::FreeLetter, 0, "2x"}}), DomainError);
  }
}
