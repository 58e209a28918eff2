#include <doctest.h>

#include <random>

#include "foxfree/schreier.hpp"

using namespace foxfree;

namespace {

Word random_kernel_word(const FactorTable& t, const QuotientHom& q, std::mt19937& rng,
                        int max_letters) {
  std::uniform_int_distribution<int> len(1, max_letters / 2);
  std::uniform_int_distribution<int> factor(0, t.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  while (true) {
    // Random word, then cancel its image by appending inverse letters of a
    // word with the same image.
    std::vector<Syllable> raw;
    int n = len(rng);
    for (int i = 0; i < n; ++i) raw.push_back({factor(rng), sign(rng) ? 1 : -1});
    Word u = t.normalize(raw);
    Word v = t.normalize(raw);  // same image, so u * shuffle(v)^-1 is in N
    std::shuffle(raw.begin(), raw.end(), rng);
    Word w = t.mul(u, t.invert(t.normalize(raw)));
    if (q.in_kernel(w) && !w.is_identity()) return w;
    (void)v;
  }
}

}  // namespace

TEST_SUITE("schreier") {
  TEST_CASE("index-2 table of F(x,y) -> Z/2") {
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q(f, {Int(2)}, {{Int(1)}, {Int(0)}});
    Transversal t(f, q, {}, 2);
    CHECK(t.reps().size() == 2);
    CHECK(t.rep({Int(0)}).is_identity());
    CHECK(t.rep({Int(1)}) == f.parse("x"));
  }

  TEST_CASE("alpha/beta classes over Z^3") {
    FactorTable f({{0, FactorKind::InfiniteCyclic, 0, "a"},
                   {1, FactorKind::InfiniteCyclic, 0, "b"},
                   {2, FactorKind::InfiniteCyclic, 0, "c"}});
    QuotientHom q = QuotientHom::abelianization(f);
    Transversal t(f, q, {0, 1}, 3);

    CosetKey k_ab = {Int(1), Int(1), Int(0)};
    CHECK(t.tag(k_ab) == CosetTag::Alpha);
    CHECK(t.rep(k_ab) == f.parse("a b"));

    CosetKey k_c = {Int(0), Int(0), Int(1)};
    CHECK(t.tag(k_c) == CosetTag::Beta);
    CHECK(t.rep(k_c) == f.parse("c"));

    CHECK(t.tag(q.identity_key()) == CosetTag::Alpha);
    CHECK(t.rep(q.identity_key()).is_identity());

    CHECK(classify_coset(k_ab, t) == CosetTag::Alpha);
    CHECK_THROWS_AS(classify_coset({Int(9), Int(9), Int(9)}, t), DomainError);
  }

  TEST_CASE("alpha representatives stay inside the distinguished subgroup") {
    FactorTable f({{0, FactorKind::InfiniteCyclic, 0, "a"},
                   {1, FactorKind::InfiniteCyclic, 0, "b"},
                   {2, FactorKind::InfiniteCyclic, 0, "c"}});
    QuotientHom q = QuotientHom::abelianization(f);
    Transversal t(f, q, {0, 1}, 3);
    for (const auto& [key, rep] : t.reps()) {
      if (t.tag(key) != CosetTag::Alpha) continue;
      for (const Syllable& s : rep.syllables) CHECK((s.factor == 0 || s.factor == 1));
    }
  }

  TEST_CASE("representative set is prefix-closed") {
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q(f, {Int(2), Int(3)}, {{Int(1), Int(0)}, {Int(0), Int(1)}});
    Transversal t(f, q, {0}, 6);
    CHECK(t.reps().size() == 6);
    std::set<Word, WordLess> reps;
    for (const auto& [key, rep] : t.reps()) reps.insert(rep);
    for (Word rep : reps) {
      while (!rep.is_identity()) {
        rep = f.drop_last_letter(rep);
        CHECK(reps.count(rep) == 1);
      }
    }

    // Also with a torsion factor in the table itself.
    FactorTable g({{0, FactorKind::FiniteCyclic, 4, "s"},
                   {1, FactorKind::InfiniteCyclic, 0, "u"}});
    QuotientHom q2 = QuotientHom::abelianization(g);
    Transversal t2(g, q2, {}, 4);
    std::set<Word, WordLess> reps2;
    for (const auto& [key, rep] : t2.reps()) reps2.insert(rep);
    for (Word rep : reps2) {
      while (!rep.is_identity()) {
        rep = g.drop_last_letter(rep);
        CHECK(reps2.count(rep) == 1);
      }
    }
  }

  TEST_CASE("rewrite matches the worked example") {
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q(f, {Int(2)}, {{Int(1)}, {Int(0)}});
    Transversal t(f, q, {}, 6);

    // Spec table: generators y, x^2, x y x^-1 in canonical order.
    REQUIRE(t.generators().size() == 3);
    Word w = f.parse("x^2 y");
    auto expr = t.rewrite(w);
    REQUIRE(expr.size() == 2);
    CHECK(t.generators()[static_cast<size_t>(expr[0].first)] == f.parse("x^2"));
    CHECK(expr[0].second == 1);
    CHECK(t.generators()[static_cast<size_t>(expr[1].first)] == f.parse("y"));
    CHECK(expr[1].second == 1);

    auto expr_y = t.rewrite(f.parse("y"));
    REQUIRE(expr_y.size() == 1);
    CHECK(t.generators()[static_cast<size_t>(expr_y[0].first)] == f.parse("y"));

    CHECK_THROWS_AS(t.rewrite(f.parse("x")), DomainError);
  }

  TEST_CASE("rewrite reassembles kernel words exactly") {
    struct Target {
      FactorTable table;
      QuotientHom q;
    };
    FactorTable f1 = FactorTable::free_letters({"x", "y"});
    FactorTable f2 = FactorTable::free_letters({"x", "y", "z"});
    std::vector<Target> targets;
    targets.push_back({f1, QuotientHom(f1, {Int(2)}, {{Int(1)}, {Int(0)}})});
    targets.push_back({f1, QuotientHom::abelianization(f1)});
    targets.push_back({f2, QuotientHom(f2, {Int(2), Int(2)},
                                       {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}})});
    std::mt19937 rng(41);
    for (const Target& target : targets) {
      Transversal t(target.table, target.q, {}, 10);
      for (int i = 0; i < 100; ++i) {
        Word w = random_kernel_word(target.table, target.q, rng, 6);
        auto expr = t.rewrite(w);
        Word product;
        for (const auto& [idx, e] : expr)
          product = target.table.mul(product,
                                     target.table.pow(t.generators()[static_cast<size_t>(idx)], e));
        CHECK(product == w);
      }
    }
  }

  TEST_CASE("nielsen-schreier rank formula for finite index") {
    // Free rank r, index n: the kernel has rank n(r-1) + 1.
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q2(f, {Int(2)}, {{Int(1)}, {Int(0)}});
    Transversal t2(f, q2, {}, 8);
    CHECK(t2.generators().size() == 2 * (2 - 1) + 1);

    QuotientHom q3(f, {Int(3)}, {{Int(1)}, {Int(0)}});
    Transversal t3(f, q3, {}, 8);
    CHECK(t3.generators().size() == 3 * (2 - 1) + 1);

    FactorTable g = FactorTable::free_letters({"x", "y", "z"});
    QuotientHom q32(g, {Int(3)}, {{Int(1)}, {Int(1)}, {Int(2)}});
    Transversal t32(g, q32, {}, 8);
    CHECK(t32.generators().size() == 3 * (3 - 1) + 1);
  }

  TEST_CASE("radius exhaustion is reported") {
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q = QuotientHom::abelianization(f);
    Transversal t(f, q, {}, 2);
    // x^3 y x^-3 y^-1 is in the kernel but scans beyond radius 2.
    Word w = f.mul(f.mul(f.parse("x^3 y"), f.parse("x^-3")), f.parse("y^-1"));
    CHECK_THROWS_AS(t.rewrite(w), DomainError);
  }

  TEST_CASE("dump is deterministic and tagged") {
    FactorTable f = FactorTable::free_letters({"x", "y"});
    QuotientHom q(f, {Int(2)}, {{Int(1)}, {Int(0)}});
    Transversal t(f, q, {}, 2);
    CHECK(t.dump() == "0 |  | alpha\n1 | x | beta\n");
  }
}
