#include "foxfree/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace foxfree {

bool word_less(const Word& a, const Word& b) {
  if (a.syllables.size() != b.syllables.size())
    return a.syllables.size() < b.syllables.size();
  for (size_t i = 0; i < a.syllables.size(); ++i) {
    const Syllable& x = a.syllables[i];
    const Syllable& y = b.syllables[i];
    if (x.factor != y.factor) return x.factor < y.factor;
    int sx = x.exp < 0 ? 1 : 0;
    int sy = y.exp < 0 ? 1 : 0;
    if (sx != sy) return sx < sy;
    int64_t ax = std::abs(x.exp);
    int64_t ay = std::abs(y.exp);
    if (ax != ay) return ax < ay;
  }
  return false;
}

namespace {

bool valid_name(const std::string& n) {
  if (n.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(n[0]))) return false;
  for (char c : n) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

FactorTable::FactorTable(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  for (size_t i = 0; i < factors_.size(); ++i) {
    FactorSpec& f = factors_[i];
    if (f.id != static_cast<int>(i))
      throw DomainError("factor ids must be 0..n-1 in order");
    if (!valid_name(f.name))
      throw DomainError("invalid factor name '" + f.name + "'");
    if (f.kind == FactorKind::FiniteCyclic) {
      if (f.order < 2) throw DomainError("finite-cyclic order must be >= 2");
    } else if (f.order != 0) {
      throw DomainError("order is only meaningful for finite-cyclic factors");
    }
    for (size_t j = 0; j < i; ++j)
      if (factors_[j].name == f.name)
        throw DomainError("duplicate factor name '" + f.name + "'");
  }
}

FactorTable FactorTable::free_letters(const std::vector<std::string>& names) {
  std::vector<FactorSpec> fs;
  for (size_t i = 0; i < names.size(); ++i)
    fs.push_back({static_cast<int>(i), FactorKind::FreeLetter, 0, names[i]});
  return FactorTable(std::move(fs));
}

const FactorSpec& FactorTable::factor(int id) const {
  check_id(id);
  return factors_[static_cast<size_t>(id)];
}

bool FactorTable::has_name(const std::string& name) const {
  for (const auto& f : factors_)
    if (f.name == name) return true;
  return false;
}

int FactorTable::id_of(const std::string& name) const {
  for (const auto& f : factors_)
    if (f.name == name) return f.id;
  throw DomainError("unknown factor name '" + name + "'");
}

bool FactorTable::torsion_free() const {
  for (const auto& f : factors_)
    if (f.kind == FactorKind::FiniteCyclic) return false;
  return true;
}

void FactorTable::check_id(int id) const {
  if (id < 0 || id >= size()) throw DomainError("unknown factor id " + std::to_string(id));
}

int64_t FactorTable::reduce_exp(int factor, int64_t e) const {
  const FactorSpec& f = factors_[static_cast<size_t>(factor)];
  if (f.kind != FactorKind::FiniteCyclic) return e;
  int64_t m = f.order;
  int64_t r = e % m;
  if (r < 0) r += m;
  return r;
}

void FactorTable::push_syllable(std::vector<Syllable>& stack, const Syllable& s) const {
  check_id(s.factor);
  int64_t e = reduce_exp(s.factor, s.exp);
  if (e == 0) return;
  if (!stack.empty() && stack.back().factor == s.factor) {
    int64_t merged = reduce_exp(s.factor, stack.back().exp + e);
    stack.pop_back();
    if (merged != 0) {
      // Re-push so a fresh adjacency with the new top is handled too.
      push_syllable(stack, {s.factor, merged});
    }
    return;
  }
  stack.push_back({s.factor, e});
}

Word FactorTable::normalize(const std::vector<Syllable>& raw) const {
  std::vector<Syllable> stack;
  stack.reserve(raw.size());
  for (const Syllable& s : raw) push_syllable(stack, s);
  return Word{std::move(stack)};
}

Word FactorTable::mul(const Word& u, const Word& v) const {
  std::vector<Syllable> stack = u.syllables;
  for (const Syllable& s : v.syllables) push_syllable(stack, s);
  return Word{std::move(stack)};
}

Word FactorTable::invert(const Word& u) const {
  std::vector<Syllable> out;
  out.reserve(u.syllables.size());
  for (auto it = u.syllables.rbegin(); it != u.syllables.rend(); ++it)
    out.push_back({it->factor, -it->exp});
  return normalize(out);
}

Word FactorTable::pow(const Word& u, int64_t k) const {
  if (k == 0) return Word{};
  if (u.syllables.size() == 1) {
    const Syllable& s = u.syllables[0];
    return normalize({{s.factor, s.exp * k}});
  }
  Word base = k > 0 ? u : invert(u);
  int64_t n = std::abs(k);
  Word acc;
  for (int64_t i = 0; i < n; ++i) acc = mul(acc, base);
  return acc;
}

Word FactorTable::conj(const Word& w, const Word& f) const {
  return mul(mul(invert(f), w), f);
}

Word FactorTable::commutator(const Word& u, const Word& v) const {
  return mul(mul(invert(u), invert(v)), mul(u, v));
}

Word FactorTable::letter(int factor, int64_t exp) const {
  return normalize({{factor, exp}});
}

FactorTable::CyclicReduction FactorTable::cyclic_reduce(const Word& u) const {
  Word core = u;
  Word conjugator;  // accumulated left conjugator: u = conjugator core conjugator^-1
  while (core.syllables.size() >= 2 &&
         core.syllables.front().factor == core.syllables.back().factor) {
    Syllable head = core.syllables.front();
    std::vector<Syllable> mid(core.syllables.begin() + 1, core.syllables.end());
    // head^-1 * core * head = mid * head, and the tail of mid merges with head.
    std::vector<Syllable> next = std::move(mid);
    Word rotated = mul(Word{std::move(next)}, Word{{head}});
    if (rotated.syllables.size() >= core.syllables.size()) break;
    conjugator = mul(conjugator, Word{{head}});
    core = std::move(rotated);
  }
  return {core, conjugator};
}

Word FactorTable::retract(const Word& w, const std::vector<int>& keep) const {
  std::vector<Syllable> out;
  for (const Syllable& s : w.syllables) {
    if (std::find(keep.begin(), keep.end(), s.factor) != keep.end()) out.push_back(s);
  }
  return normalize(out);
}

std::vector<Syllable> FactorTable::letters(const Word& w) const {
  std::vector<Syllable> out;
  for (const Syllable& s : w.syllables) {
    const FactorSpec& f = factor(s.factor);
    if (f.kind == FactorKind::FiniteCyclic) {
      out.push_back(s);
    } else {
      int64_t step = s.exp > 0 ? 1 : -1;
      for (int64_t i = 0; i < std::abs(s.exp); ++i) out.push_back({s.factor, step});
    }
  }
  return out;
}

int64_t FactorTable::letter_length(const Word& w) const {
  int64_t n = 0;
  for (const Syllable& s : w.syllables) {
    const FactorSpec& f = factor(s.factor);
    n += (f.kind == FactorKind::FiniteCyclic) ? 1 : std::abs(s.exp);
  }
  return n;
}

Word FactorTable::drop_last_letter(const Word& w) const {
  if (w.is_identity()) throw DomainError("drop_last_letter on identity");
  std::vector<Syllable> out = w.syllables;
  Syllable& last = out.back();
  const FactorSpec& f = factor(last.factor);
  if (f.kind == FactorKind::FiniteCyclic || std::abs(last.exp) == 1) {
    out.pop_back();
  } else {
    last.exp -= last.exp > 0 ? 1 : -1;
  }
  return Word{std::move(out)};
}

std::string FactorTable::format(const Word& w) const {
  std::string out;
  for (size_t i = 0; i < w.syllables.size(); ++i) {
    if (i) out += ' ';
    const Syllable& s = w.syllables[i];
    out += factor(s.factor).name;
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

Word FactorTable::parse(const std::string& text) const {
  std::vector<Syllable> raw;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::string name = token;
    int64_t exp = 1;
    size_t caret = token.rfind('^');
    if (caret != std::string::npos) {
      name = token.substr(0, caret);
      std::string es = token.substr(caret + 1);
      try {
        size_t pos = 0;
        exp = std::stoll(es, &pos);
        if (pos != es.size()) throw std::invalid_argument(es);
      } catch (const std::exception&) {
        throw DomainError("bad exponent in token '" + token + "'");
      }
    }
    raw.push_back({id_of(name), exp});
  }
  return normalize(raw);
}

}  // namespace foxfree
