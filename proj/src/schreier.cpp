#include "foxfree/schreier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace foxfree {

Transversal::Transversal(const FactorTable& table, QuotientHom q, std::vector<int> P, int radius)
    : table_(&table), q_(std::move(q)), p_(std::move(P)), radius_(radius) {
  if (radius_ < 1) throw DomainError("transversal radius must be >= 1");
  std::sort(p_.begin(), p_.end());
  p_.erase(std::unique(p_.begin(), p_.end()), p_.end());
  for (int p : p_)
    if (p < 0 || p >= table.size()) throw DomainError("transversal: P contains unknown factor id");
  build();
  register_generators();
}

std::vector<Syllable> Transversal::positive_letters(bool restrict_to_p) const {
  // Canonical letter order: factor id ascending; for a torsion-free factor
  // the single step x^+1, for a finite-cyclic factor the elements a^1..a^{m-1}.
  std::vector<Syllable> out;
  for (const FactorSpec& f : table_->factors()) {
    if (restrict_to_p && !std::binary_search(p_.begin(), p_.end(), f.id)) continue;
    if (f.kind == FactorKind::FiniteCyclic) {
      for (int64_t e = 1; e < f.order; ++e) out.push_back({f.id, e});
    } else {
      out.push_back({f.id, 1});
    }
  }
  return out;
}

void Transversal::build() {
  // BFS letter order within one source: positive exponent before negative.
  auto signed_letters = [&](bool restrict_to_p) {
    std::vector<Syllable> out;
    for (const Syllable& s : positive_letters(restrict_to_p)) {
      out.push_back(s);
      if (table_->factor(s.factor).kind != FactorKind::FiniteCyclic)
        out.push_back({s.factor, -1});
    }
    return out;
  };

  // Classic breadth-first order: buckets by class length, FIFO discovery
  // order inside a bucket, so representatives follow the paper's induction on
  // class length.  discovery records the order cosets were first reached.
  std::vector<CosetKey> discovery;
  auto bfs = [&](std::vector<std::vector<CosetKey>> buckets, const std::vector<Syllable>& letters) {
    buckets.resize(static_cast<size_t>(radius_) + 1);
    for (size_t len = 0; len < buckets.size(); ++len) {
      for (size_t at = 0; at < buckets[len].size(); ++at) {
        CosetKey key = buckets[len][at];
        if (static_cast<int>(len) >= radius_) continue;
        const Word rep_word = reps_.at(key);
        for (const Syllable& letter : letters) {
          CosetKey next = key;
          CosetKey delta = q_.image_of_letter(letter.factor, letter.exp);
          for (size_t c = 0; c < next.size(); ++c) next[c] += delta[c];
          next = q_.reduce(std::move(next));
          if (reps_.count(next)) continue;
          reps_.emplace(next, table_->mul(rep_word, Word{{letter}}));
          discovery.push_back(next);
          buckets[len + 1].push_back(std::move(next));
        }
      }
    }
  };

  // Phase 1: alpha classes served first, representatives inside H.
  reps_.emplace(q_.identity_key(), Word{});
  discovery.push_back(q_.identity_key());
  {
    std::vector<std::vector<CosetKey>> init(1);
    init[0].push_back(q_.identity_key());
    bfs(std::move(init), signed_letters(true));
  }

  // Phase 2: the rest of the table over the full letter set, seeded with the
  // phase-1 cosets in discovery order.
  {
    std::vector<std::vector<CosetKey>> seed(static_cast<size_t>(radius_) + 1);
    for (const CosetKey& key : discovery)
      seed[static_cast<size_t>(table_->letter_length(reps_.at(key)))].push_back(key);
    bfs(std::move(seed), signed_letters(false));
  }

  // Exact alpha/beta tags via lattice membership.
  for (const auto& [key, rep_word] : reps_)
    tags_.emplace(key, q_.in_subgroup_image(key, p_) ? CosetTag::Alpha : CosetTag::Beta);
}

void Transversal::register_generators() {
  for (const auto& [key, s] : reps_) {
    for (const Syllable& x : positive_letters(false)) {
      CosetKey target = key;
      CosetKey delta = q_.image_of_letter(x.factor, x.exp);
      for (size_t c = 0; c < target.size(); ++c) target[c] += delta[c];
      target = q_.reduce(std::move(target));
      auto it = reps_.find(target);
      if (it == reps_.end()) continue;
      Word g = table_->mul(table_->mul(s, Word{{x}}), table_->invert(it->second));
      if (g.is_identity() || gen_index_.count(g)) continue;
      gen_index_.emplace(g, static_cast<int>(gens_.size()));
      gens_.push_back(std::move(g));
    }
  }
}

const Word& Transversal::rep(const CosetKey& key) const {
  auto it = reps_.find(key);
  if (it == reps_.end()) throw DomainError("transversal: coset not explored at this radius");
  return it->second;
}

CosetTag Transversal::tag(const CosetKey& key) const {
  auto it = tags_.find(key);
  if (it == tags_.end()) throw DomainError("transversal: coset not explored at this radius");
  return it->second;
}

int Transversal::generator_index(const Word& g) const {
  auto it = gen_index_.find(g);
  if (it == gen_index_.end()) throw DomainError("transversal: unknown schreier generator");
  return it->second;
}

std::vector<std::pair<int, int64_t>> Transversal::rewrite(const Word& w) const {
  if (!q_.in_kernel(w)) throw DomainError("rewrite: word is not in the kernel");
  std::vector<std::pair<int, int64_t>> out;
  auto emit = [&](int idx, int64_t e) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second += e;
      if (out.back().second == 0) out.pop_back();
    } else {
      out.emplace_back(idx, e);
    }
  };

  CosetKey state = q_.identity_key();
  for (const Syllable& letter : table_->letters(w)) {
    CosetKey next = state;
    CosetKey delta = q_.image_of_letter(letter.factor, letter.exp);
    for (size_t c = 0; c < next.size(); ++c) next[c] += delta[c];
    next = q_.reduce(std::move(next));
    const Word& s = rep(state);  // throws when the scan leaves the table
    const Word& target = rep(next);
    if (letter.exp > 0 || table_->factor(letter.factor).kind == FactorKind::FiniteCyclic) {
      Word g = table_->mul(table_->mul(s, Word{{letter}}), table_->invert(target));
      if (!g.is_identity()) emit(generator_index(g), 1);
    } else {
      // Scanning x^-1 at s emits the inverse of the positive generator read
      // from the target coset: (t x (overline{t x})^-1)^-1 with t = s x^-1.
      Word g = table_->mul(table_->mul(target, table_->letter(letter.factor, 1)),
                           table_->invert(s));
      if (!g.is_identity()) emit(generator_index(g), -1);
    }
    state = std::move(next);
  }
  return out;
}

std::string Transversal::dump() const {
  std::ostringstream out;
  for (const auto& [key, rep_word] : reps_) {
    for (size_t c = 0; c < key.size(); ++c) {
      if (c) out << ',';
      out << key[c];
    }
    out << " | " << table_->format(rep_word) << " | "
        << (tags_.at(key) == CosetTag::Alpha ? "alpha" : "beta") << '\n';
  }
  return out.str();
}

Transversal build_transversal(const FactorTable& table, const QuotientHom& q,
                              const std::vector<int>& P, int radius) {
  return Transversal(table, q, P, radius);
}

CosetTag classify_coset(const CosetKey& key, const Transversal& t) { return t.tag(key); }

}  // namespace foxfree
