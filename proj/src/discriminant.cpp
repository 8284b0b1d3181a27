#include "charplab/discriminant.hpp"

#include <algorithm>

#include "charplab/errors.hpp"
#include "charplab/ideal_ops.hpp"

namespace charplab {

FiniteExtension::FiniteExtension(const Polynomial& f, std::string_view z)
    : ring_(f.ring()), f_(f) {
  auto idx = ring_->index_of(z);
  if (!idx) {
    throw InputError("unknown extension variable '" + std::string(z) + "'");
  }
  z_ = *idx;
  coeffs_ = z_coefficients(f);
  const std::size_t n = coeffs_.size() - 1;
  if (f.is_zero() || n == 0) {
    throw InputError("relation must have positive degree in " +
                     std::string(z));
  }
  if (!(coeffs_[n] == Polynomial::constant(ring_, 1))) {
    throw InputError("relation must be monic in " + std::string(z));
  }
}

std::vector<Polynomial> FiniteExtension::z_coefficients(
    const Polynomial& g) const {
  const std::size_t top = g.is_zero() ? 0 : g.degree_in(z_);
  std::vector<std::vector<Term>> parts(top + 1);
  for (const auto& t : g.terms()) {
    Monomial m = t.monomial;
    const std::size_t k = m[z_];
    m.set(z_, 0);
    parts[k].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.push_back(Polynomial::from_terms(ring_, std::move(p)));
  return out;
}

std::vector<Polynomial> FiniteExtension::reduce(const Polynomial& g) const {
  if (!g.ring()->same_as(*ring_)) {
    throw InputError("element belongs to a different ring");
  }
  const std::size_t n = degree();
  std::vector<Polynomial> c = z_coefficients(g);
  // Replace z^n by -(f_0 + ... + f_{n-1} z^{n-1}) from the top down.
  for (std::size_t k = c.size(); k-- > n;) {
    if (c[k].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!coeffs_[j].is_zero()) c[k - n + j] -= c[k] * coeffs_[j];
    }
  }
  c.resize(n, Polynomial(ring_));
  return c;
}

PolyMatrix FiniteExtension::mult_matrix(const Polynomial& g) const {
  const std::size_t n = degree();
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(ring_)));
  const Polynomial z = Polynomial::variable(ring_, z_);
  Polynomial shifted = g;
  for (std::size_t i = 0; i < n; ++i) {
    const auto col = reduce(shifted);
    for (std::size_t j = 0; j < n; ++j) m[j][i] = col[j];
    shifted = shifted * z;
  }
  return m;
}

PolyMatrix FiniteExtension::trace_matrix() const {
  const std::size_t n = degree();
  // Tr(z^k) is the sum over i of the z^i coordinate of z^{k+i}.
  std::vector<std::vector<Polynomial>> powers;
  std::vector<Polynomial> cur(n, Polynomial(ring_));
  cur[0] = Polynomial::constant(ring_, 1);
  for (std::size_t k = 0; k + 2 < 3 * n; ++k) {
    powers.push_back(cur);
    // Multiply the reduced element by z once more.
    std::vector<Polynomial> next(n, Polynomial(ring_));
    for (std::size_t j = 0; j + 1 < n; ++j) next[j + 1] = cur[j];
    const Polynomial& top = cur[n - 1];
    if (!top.is_zero()) {
      for (std::size_t j = 0; j < n; ++j) next[j] -= top * coeffs_[j];
    }
    cur = std::move(next);
  }
  std::vector<Polynomial> traces;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    Polynomial t(ring_);
    for (std::size_t i = 0; i < n; ++i) t += powers[k + i][i];
    traces.push_back(std::move(t));
  }
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(ring_)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = traces[i + j];
  }
  return m;
}

Polynomial bareiss_determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) throw InputError("determinant of an empty matrix");
  for (const auto& row : m) {
    if (row.size() != n) throw InputError("determinant needs a square matrix");
  }
  const RingPtr ring = m[0][0].ring();
  bool negate = false;
  Polynomial previous = Polynomial::constant(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(ring);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(num, previous);
      }
    }
    previous = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Polynomial discriminant(const FiniteExtension& ext) {
  return bareiss_determinant(ext.trace_matrix());
}

std::optional<std::uint64_t> order_of_vanishing(const Polynomial& d) {
  if (d.is_zero()) return std::nullopt;
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& t : d.terms()) best = std::min(best, t.monomial.degree());
  return best;
}

CongruenceReport disc_congruence_check(const FiniteExtension& ext,
                                       const Polynomial& eps,
                                       std::uint64_t n_target) {
  if (!eps.is_zero() && eps.degree_in(ext.z()) >= ext.degree()) {
    throw InputError("perturbation must have degree below n in the "
                     "extension variable");
  }
  const std::string& z = ext.ring()->variables()[ext.z()];
  const FiniteExtension moved(ext.relation() + eps, z);
  CongruenceReport r{discriminant(ext), discriminant(moved), std::nullopt,
                     std::nullopt, n_target, false};
  if (!eps.is_zero()) {
    std::uint64_t best = ~std::uint64_t{0};
    for (const auto& t : eps.terms()) {
      best = std::min<std::uint64_t>(best,
                                     t.monomial.degree() - t.monomial[ext.z()]);
    }
    r.perturbation_order = best;
  }
  r.congruence_order = order_of_vanishing(r.perturbed - r.base);
  r.pass = !r.congruence_order || *r.congruence_order >= n_target;
  return r;
}

}  // namespace charplab
