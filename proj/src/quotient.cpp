#include "foxfree/quotient.hpp"

namespace foxfree {

QuotientHom::QuotientHom(const FactorTable& table, std::vector<Int> moduli,
                         std::vector<std::vector<Int>> images)
    : moduli_(std::move(moduli)), images_(std::move(images)) {
  for (const Int& m : moduli_)
    if (m != 0 && m < 2) throw DomainError("quotient modulus must be 0 or >= 2");
  if (images_.size() != static_cast<size_t>(table.size()))
    throw DomainError("quotient needs one image per factor");
  for (auto& img : images_) {
    if (img.size() != moduli_.size()) throw DomainError("image dimension mismatch");
    img = reduce(img);
  }
  // Well-definedness on factor relations: a finite-cyclic factor of order m
  // must map to an element killed by m.
  for (const auto& f : table.factors()) {
    if (f.kind != FactorKind::FiniteCyclic) continue;
    const auto& img = images_[static_cast<size_t>(f.id)];
    for (size_t c = 0; c < moduli_.size(); ++c) {
      Int v = img[c] * f.order;
      if (moduli_[c] == 0) {
        if (v != 0) throw DomainError("image of torsion factor '" + f.name + "' has infinite order");
      } else if (v % moduli_[c] != 0) {
        throw DomainError("factor order of '" + f.name + "' incompatible with target modulus");
      }
    }
  }
}

QuotientHom QuotientHom::abelianization(const FactorTable& table) {
  size_t n = static_cast<size_t>(table.size());
  std::vector<Int> moduli(n, 0);
  std::vector<std::vector<Int>> images(n, std::vector<Int>(n, 0));
  for (const auto& f : table.factors()) {
    size_t i = static_cast<size_t>(f.id);
    if (f.kind == FactorKind::FiniteCyclic) moduli[i] = f.order;
    images[i][i] = 1;
  }
  return QuotientHom(table, std::move(moduli), std::move(images));
}

QuotientHom::Kind QuotientHom::kind() const {
  bool any_free = false, any_torsion = false;
  for (const Int& m : moduli_) (m == 0 ? any_free : any_torsion) = true;
  if (!any_torsion) return Kind::FreeAbelian;
  if (!any_free) return Kind::FiniteCyclicProduct;
  return Kind::Mixed;
}

CosetKey QuotientHom::reduce(CosetKey key) const {
  for (size_t c = 0; c < moduli_.size(); ++c) {
    if (moduli_[c] == 0) continue;
    key[c] %= moduli_[c];
    if (key[c] < 0) key[c] += moduli_[c];
  }
  return key;
}

CosetKey QuotientHom::image(const Word& w) const {
  CosetKey key(target_dim(), 0);
  for (const Syllable& s : w.syllables) {
    const auto& img = images_.at(static_cast<size_t>(s.factor));
    for (size_t c = 0; c < key.size(); ++c) key[c] += img[c] * s.exp;
  }
  return reduce(std::move(key));
}

CosetKey QuotientHom::image_of_letter(int factor, int64_t exp) const {
  CosetKey key(target_dim(), 0);
  const auto& img = images_.at(static_cast<size_t>(factor));
  for (size_t c = 0; c < key.size(); ++c) key[c] = img[c] * exp;
  return reduce(std::move(key));
}

bool QuotientHom::in_kernel(const Word& w) const {
  CosetKey key = image(w);
  for (const Int& v : key)
    if (v != 0) return false;
  return true;
}

bool QuotientHom::in_subgroup_image(const CosetKey& key, const std::vector<int>& P) const {
  // Columns: generator images for P, plus m_c * e_c for each torsion
  // coordinate so congruences become integer equalities.
  size_t dim = target_dim();
  std::vector<std::vector<Int>> cols;
  for (int p : P) cols.push_back(images_.at(static_cast<size_t>(p)));
  for (size_t c = 0; c < dim; ++c) {
    if (moduli_[c] == 0) continue;
    std::vector<Int> e(dim, 0);
    e[c] = moduli_[c];
    cols.push_back(std::move(e));
  }
  IntMat a(dim, std::vector<Int>(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < dim; ++i) a[i][j] = cols[j][i];
  return solve_integer(a, key);
}

}  // namespace foxfree
