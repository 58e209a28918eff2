#include "foxfree/fox.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace foxfree {

namespace {

// D_k of a single syllable.
RingElement syllable_derivative(const FactorTable& t, int k, const Syllable& s) {
  if (s.factor != k) return RingElement::zero();
  const FactorSpec& f = t.factor(s.factor);
  if (f.kind == FactorKind::FreeLetter) {
    // D(g^e) = 1 + g + ... + g^{e-1}  (e > 0),  -(g^-1 + ... + g^e)  (e < 0).
    RingElement out;
    if (s.exp > 0) {
      for (int64_t i = 0; i < s.exp; ++i) out.add_term(t.letter(k, i), 1);
    } else {
      for (int64_t i = 1; i <= -s.exp; ++i) out.add_term(t.letter(k, -i), -1);
    }
    return out;
  }
  // Cyclic factor: the syllable is one factor element, D(a) = a - 1.
  RingElement out(Word{{s}});
  out.add_term(Word{}, -1);
  return out;
}

}  // namespace

RingElement derivative(const FactorTable& t, int k, const Word& w) {
  if (k < 0 || k >= t.size()) throw DomainError("derivative: unknown generator id");
  RingElement out;
  // d(s_1 ... s_n) = sum_p d(s_p) * (s_{p+1} ... s_n), since eps = 1 on words.
  for (size_t p = 0; p < w.syllables.size(); ++p) {
    RingElement d = syllable_derivative(t, k, w.syllables[p]);
    if (d.is_zero()) continue;
    Word tail{std::vector<Syllable>(w.syllables.begin() + static_cast<long>(p) + 1,
                                    w.syllables.end())};
    out += mul_word(t, d, tail);
  }
  return out;
}

RingElement derivative(const FactorTable& t, int k, const RingElement& u) {
  RingElement out;
  for (const auto& [w, c] : u.terms()) out += derivative(t, k, w) * c;
  return out;
}

DerivativeVector derivative_vector(const FactorTable& t, const RingElement& u) {
  DerivativeVector out;
  for (int k = 0; k < t.size(); ++k) {
    RingElement d = derivative(t, k, u);
    if (!d.is_zero()) out.emplace(k, std::move(d));
  }
  return out;
}

RingElement fundamental_defect(const FactorTable& t, const RingElement& u) {
  RingElement defect = u;
  defect.add_term(Word{}, -augmentation(u));
  for (int k = 0; k < t.size(); ++k) {
    RingElement d = derivative(t, k, u);
    if (d.is_zero()) continue;
    if (t.factor(k).kind == FactorKind::FreeLetter) {
      RingElement g_minus_1(t.letter(k));
      g_minus_1.add_term(Word{}, -1);
      defect -= ring_mul(t, g_minus_1, d);
    } else {
      defect -= d;
    }
  }
  return defect;
}

BasisExpression rewrite_in_basis(const FactorTable& t, const Word& v,
                                 const std::vector<Word>& basis, int max_depth) {
  for (const Word& b : basis)
    if (b.is_identity()) throw DomainError("rewrite_in_basis: identity basis word");

  // Depth-first left-quotient search.  Only steps that do not lengthen the
  // remainder are taken, which suffices for Nielsen-reduced bases.
  struct Move {
    Word quotient;
    int index;
    int sign;
  };
  std::vector<std::pair<int, int>> path;
  std::set<Word, WordLess> on_path;

  std::function<bool(const Word&)> dfs = [&](const Word& rest) -> bool {
    if (rest.is_identity()) return true;
    if (static_cast<int>(path.size()) >= max_depth) return false;
    std::vector<Move> moves;
    for (size_t i = 0; i < basis.size(); ++i) {
      for (int sign : {+1, -1}) {
        Word g = sign > 0 ? basis[i] : t.invert(basis[i]);
        Word rem = t.mul(t.invert(g), rest);
        if (t.letter_length(rem) <= t.letter_length(rest))
          moves.push_back({std::move(rem), static_cast<int>(i), sign});
      }
    }
    // Prefer strict progress.
    std::stable_sort(moves.begin(), moves.end(), [&](const Move& a, const Move& b) {
      return t.letter_length(a.quotient) < t.letter_length(b.quotient);
    });
    for (const Move& m : moves) {
      if (on_path.count(m.quotient)) continue;
      path.emplace_back(m.index, m.sign);
      on_path.insert(m.quotient);
      if (dfs(m.quotient)) return true;
      on_path.erase(m.quotient);
      path.pop_back();
    }
    return false;
  };

  on_path.insert(v);
  if (!dfs(v))
    throw BoundExhausted("rewrite_in_basis: no expression within depth " +
                         std::to_string(max_depth));
  BasisExpression out;
  out.letters = std::move(path);
  return out;
}

RingElement chain_rule_decompose(const FactorTable& t, const Word& v,
                                 const std::vector<Word>& basis, int k,
                                 const std::optional<BasisExpression>& expr, int max_depth) {
  BasisExpression e = expr ? *expr : rewrite_in_basis(t, v, basis, max_depth);

  // Sanity: the expression must evaluate back to v.
  Word check;
  for (auto [i, sign] : e.letters) {
    const Word& b = basis.at(static_cast<size_t>(i));
    check = t.mul(check, sign > 0 ? b : t.invert(b));
  }
  if (!(check == v)) throw DomainError("chain_rule_decompose: expression does not evaluate to v");

  // Fresh free alphabet, one letter per basis word.
  std::vector<std::string> names;
  names.reserve(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) names.push_back("z" + std::to_string(i));
  FactorTable fresh = FactorTable::free_letters(names);

  std::vector<Syllable> raw;
  raw.reserve(e.letters.size());
  for (auto [i, sign] : e.letters) raw.push_back({i, sign});
  Word v_fresh = fresh.normalize(raw);

  // Substitution homomorphism Z[<z_i>] -> Z[F], z_i -> basis[i].
  auto substitute = [&](const RingElement& u) {
    RingElement out;
    for (const auto& [w, c] : u.terms()) {
      Word img;
      for (const Syllable& s : w.syllables)
        img = t.mul(img, t.pow(basis[static_cast<size_t>(s.factor)], s.exp));
      out.add_term(img, c);
    }
    return out;
  };

  RingElement total;
  for (size_t z = 0; z < basis.size(); ++z) {
    RingElement partial = derivative(fresh, static_cast<int>(z), v_fresh);
    if (partial.is_zero()) continue;
    total += ring_mul(t, derivative(t, k, basis[z]), substitute(partial));
  }
  return total;
}

bool conjugation_congruence_check(const FactorTable& t, const Word& n, const Word& f,
                                  const QuotientHom& q, int k) {
  if (!q.in_kernel(n)) throw DomainError("conjugation_congruence_check: n is not in ker q");
  RingElement lhs = derivative(t, k, t.conj(n, f));
  RingElement rhs = mul_word(t, derivative(t, k, n), f);
  return collapse_is_zero(coset_collapse(lhs - rhs, q));
}

}  // namespace foxfree
