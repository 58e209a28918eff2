#include "foxfree/ring.hpp"

#include <sstream>

namespace foxfree {

Int RingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Int(0) : it->second;
}

void RingElement::add_term(const Word& w, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

RingElement operator-(const RingElement& a) {
  RingElement out;
  for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
  return out;
}

RingElement operator*(const RingElement& a, const Int& c) {
  RingElement out;
  if (c == 0) return out;
  for (const auto& [w, k] : a.terms_) out.terms_.emplace(w, k * c);
  return out;
}

RingElement ring_mul(const FactorTable& t, const RingElement& a, const RingElement& b) {
  RingElement out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out.add_term(t.mul(u, v), cu * cv);
  return out;
}

RingElement mul_word(const FactorTable& t, const RingElement& a, const Word& w) {
  RingElement out;
  for (const auto& [u, c] : a.terms()) out.add_term(t.mul(u, w), c);
  return out;
}

RingElement word_mul(const FactorTable& t, const Word& w, const RingElement& a) {
  RingElement out;
  for (const auto& [u, c] : a.terms()) out.add_term(t.mul(w, u), c);
  return out;
}

Int augmentation(const RingElement& a) {
  Int s = 0;
  for (const auto& [w, c] : a.terms()) s += c;
  return s;
}

CosetSum coset_collapse(const RingElement& a, const QuotientHom& q) {
  CosetSum out;
  for (const auto& [w, c] : a.terms()) {
    CosetKey key = q.image(w);
    auto it = out.find(key);
    if (it == out.end()) {
      out.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

bool collapse_is_zero(const CosetSum& s) { return s.empty(); }

std::string format_ring(const FactorTable& t, const RingElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    out << mag << '*' << (w.is_identity() ? "1" : t.format(w));
  }
  return out.str();
}

}  // namespace foxfree
