#pragma once

// Slow, independent reference computations for the tests. Nothing here
// uses the library's arithmetic: coefficients live in Z/p (or in
// coordinate vectors modulo an explicit polynomial) and ideals are
// handled by plain row reduction over monomial boxes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Zp {
  u32 p;

  u32 add(u32 a, u32 b) const { return (a + b) % p; }
  u32 sub(u32 a, u32 b) const { return (a + p - b) % p; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(u64{a} * b % p); }
  u32 pow(u32 a, u64 k) const {
    u32 r = 1 % p;
    for (; k; k >>= 1, a = mul(a, a)) {
      if (k & 1) r = mul(r, a);
    }
    return r;
  }
  u32 inv(u32 a) const {
    if (a % p == 0) throw std::domain_error("inverse of zero");
    return pow(a, p - 2);
  }
};

/// F_p[g]/(modulus) on coordinate vectors, modulus monic and given from
/// the constant term up.
struct ExtField {
  Zp base;
  std::vector<u32> modulus;

  std::size_t degree() const { return modulus.size() - 1; }

  std::vector<u32> mul(const std::vector<u32>& a,
                       const std::vector<u32>& b) const {
    const std::size_t m = degree();
    std::vector<u32> prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
      }
    }
    for (std::size_t k = 2 * m; k-- > m;) {
      const u32 c = prod[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= m; ++i) {
        prod[k - m + i] = base.sub(prod[k - m + i], base.mul(c, modulus[i]));
      }
    }
    prod.resize(m);
    return prod;
  }
  std::vector<u32> add(const std::vector<u32>& a,
                       const std::vector<u32>& b) const {
    std::vector<u32> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = base.add(a[i], b[i]);
    return s;
  }
};

/// Sparse polynomial over Z/p keyed by exponent vectors.
using Poly = std::map<std::vector<u32>, u32>;

inline Poly mul(const Poly& a, const Poly& b, const Zp& F,
                const std::vector<u64>& bounds) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<u32> e(ea.size());
      bool inside = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (!bounds.empty() && e[i] >= bounds[i]) inside = false;
      }
      if (!inside) continue;
      u32& slot = out[e];
      slot = F.add(slot, F.mul(ca, cb));
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

inline Poly pow(const Poly& f, u64 k, const Zp& F,
                const std::vector<u64>& bounds) {
  Poly r;
  r[std::vector<u32>(bounds.size(), 0)] = 1;
  for (u64 i = 0; i < k; ++i) r = mul(r, f, F, bounds);
  return r;
}

/// Rank over Z/p by Gaussian elimination; rows are consumed.
inline std::size_t rank(std::vector<std::vector<u32>> rows, const Zp& F) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    const u32 inv = F.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const u32 f = F.mul(rows[i][c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
      }
    }
    ++r;
  }
  return r;
}

/// Determinant over Z/p by Gaussian elimination.
inline u32 det(std::vector<std::vector<u32>> m, const Zp& F) {
  const std::size_t n = m.size();
  u32 d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      d = F.sub(0, d);
    }
    d = F.mul(d, m[c][c]);
    const u32 inv = F.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const u32 k = F.mul(m[i][c], inv);
      if (k == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        m[i][j] = F.sub(m[i][j], F.mul(k, m[c][j]));
      }
    }
  }
  return d;
}

/// Value of f at a point.
inline u32 evaluate(const Poly& f, const std::vector<u32>& point,
                    const Zp& F) {
  u32 sum = 0;
  for (const auto& [e, c] : f) {
    u32 t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      t = F.mul(t, F.pow(point[i], e[i]));
    }
    sum = F.add(sum, t);
  }
  return sum;
}

/// Discriminant of a monic f = c[0] + ... + c[n] z^n, as
/// (-1)^{n(n-1)/2} Res(f, f') from the Sylvester matrix with f' taken of
/// formal degree n - 1.
inline u32 sylvester_discriminant(const std::vector<u32>& c, const Zp& F) {
  const std::size_t n = c.size() - 1;
  if (n == 1) return 1 % F.p;
  std::vector<u32> d(n);
  for (std::size_t k = 1; k <= n; ++k) {
    d[k - 1] = F.mul(static_cast<u32>(k % F.p), c[k]);
  }
  const std::size_t size = 2 * n - 1;
  std::vector<std::vector<u32>> m(size, std::vector<u32>(size, 0));
  // Rows hold coefficients from the top degree down.
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t k = 0; k <= n; ++k) m[r][r + k] = c[n - k];
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) m[n - 1 + r][r + k] = d[n - 1 - k];
  }
  u32 res = det(std::move(m), F);
  if ((n * (n - 1) / 2) % 2 == 1) res = F.sub(0, res);
  return res;
}

/// Monomials x^a with a_i < bounds[i], indexed in mixed radix.
class Box {
 public:
  explicit Box(std::vector<u64> bounds) : bounds_(std::move(bounds)) {
    strides_.resize(bounds_.size());
    size_ = 1;
    for (std::size_t i = bounds_.size(); i-- > 0;) {
      strides_[i] = size_;
      size_ *= bounds_[i];
    }
  }
  u64 size() const { return size_; }
  const std::vector<u64>& bounds() const { return bounds_; }
  u64 stride(std::size_t i) const { return strides_[i]; }
  std::vector<u32> exponents(u64 index) const {
    std::vector<u32> e(bounds_.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = static_cast<u32>(index / strides_[i] % bounds_[i]);
    }
    return e;
  }
  bool index(const std::vector<u32>& e, u64& out) const {
    out = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= bounds_[i]) return false;
      out += e[i] * strides_[i];
    }
    return true;
  }

 private:
  std::vector<u64> bounds_;
  std::vector<u64> strides_;
  u64 size_;
};

/// Dimension of the span of all m * g (m a monomial, g in gens) modulo
/// the box walls x_i^{bounds[i]}. Every g must be homogeneous for each
/// weight vector; the work is then split into blocks of equal weights.
inline u64 span_rank(const std::vector<Poly>& gens,
                     const std::vector<u64>& bounds,
                     const std::vector<std::vector<long>>& weights,
                     const Zp& F) {
  const Box box(bounds);
  auto key_of = [&](const std::vector<u32>& e) {
    std::vector<long> k(weights.size(), 0);
    for (std::size_t w = 0; w < weights.size(); ++w) {
      for (std::size_t i = 0; i < e.size(); ++i) k[w] += weights[w][i] * e[i];
    }
    return k;
  };
  std::vector<std::vector<long>> shift;
  for (const auto& g : gens) {
    if (g.empty()) throw std::invalid_argument("zero generator");
    const auto k = key_of(g.begin()->first);
    for (const auto& [e, c] : g) {
      if (key_of(e) != k) throw std::invalid_argument("not homogeneous");
    }
    shift.push_back(k);
  }
  std::map<std::vector<long>, std::vector<u64>> blocks;
  std::vector<u32> position(box.size());
  for (u64 i = 0; i < box.size(); ++i) {
    auto& b = blocks[key_of(box.exponents(i))];
    position[i] = static_cast<u32>(b.size());
    b.push_back(i);
  }
  u64 total = 0;
  for (const auto& [key, cols] : blocks) {
    std::vector<std::vector<u32>> rows;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::vector<long> source(key.size());
      for (std::size_t w = 0; w < key.size(); ++w) {
        source[w] = key[w] - shift[g][w];
      }
      auto it = blocks.find(source);
      if (it == blocks.end()) continue;
      for (u64 s : it->second) {
        const auto es = box.exponents(s);
        std::vector<u32> row(cols.size(), 0);
        bool any = false;
        for (const auto& [e, c] : gens[g]) {
          u64 idx = 0;
          bool inside = true;
          for (std::size_t i = 0; i < e.size() && inside; ++i) {
            const u64 v = u64{e[i]} + es[i];
            inside = v < bounds[i];
            idx += v * box.stride(i);
          }
          if (!inside) continue;
          row[position[idx]] = F.add(row[position[idx]], c);
          any = true;
        }
        if (any) rows.push_back(std::move(row));
      }
    }
    total += rank(std::move(rows), F);
  }
  return total;
}

/// dim S/(gens + walls) for the box walls.
inline u64 box_colength(const std::vector<Poly>& gens,
                        const std::vector<u64>& bounds,
                        const std::vector<std::vector<long>>& weights,
                        const Zp& F) {
  return Box(bounds).size() - span_rank(gens, bounds, weights, F);
}

/// Whether f lies in (gens) + walls, by comparing ranks with and without
/// f. The box must be small; no grading is used.
inline bool box_member(const Poly& f, const std::vector<Poly>& gens,
                       const std::vector<u64>& bounds, const Zp& F) {
  const Box box(bounds);
  std::vector<std::vector<u32>> rows;
  for (const auto& g : gens) {
    for (u64 s = 0; s < box.size(); ++s) {
      const auto es = box.exponents(s);
      std::vector<u32> row(box.size(), 0);
      for (const auto& [e, c] : g) {
        std::vector<u32> t(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) t[i] = e[i] + es[i];
        u64 idx;
        if (box.index(t, idx)) row[idx] = F.add(row[idx], c);
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<u32> target(box.size(), 0);
  for (const auto& [e, c] : f) {
    u64 idx;
    if (box.index(e, idx)) target[idx] = c;
  }
  const auto without = rank(rows, F);
  rows.push_back(std::move(target));
  return rank(std::move(rows), F) == without;
}

/// Monomials of total degree d in n variables.
inline std::vector<std::vector<u32>> degree_monomials(std::size_t n, u32 d) {
  std::vector<std::vector<u32>> out;
  std::vector<u32> e(n, 0);
  auto rec = [&](auto& self, std::size_t i, u32 left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (u32 a = 0; a <= left; ++a) {
      e[i] = left - a;
      self(self, i + 1, a);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

/// Membership of a homogeneous f of degree d in an ideal with homogeneous
/// generators: f must lie in the span of the degree-d multiples.
inline bool graded_member(const Poly& f, u32 d, const std::vector<Poly>& gens,
                          std::size_t n, const Zp& F) {
  const auto basis = degree_monomials(n, d);
  std::map<std::vector<u32>, std::size_t> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;
  std::vector<std::vector<u32>> rows;
  for (const auto& g : gens) {
    u32 dg = 0;
    for (u32 x : g.begin()->first) dg += x;
    if (dg > d) continue;
    for (const auto& m : degree_monomials(n, d - dg)) {
      std::vector<u32> row(basis.size(), 0);
      for (const auto& [e, c] : g) {
        std::vector<u32> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = e[i] + m[i];
        row[col.at(t)] = F.add(row[col.at(t)], c);
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<u32> target(basis.size(), 0);
  for (const auto& [e, c] : f) target[col.at(e)] = c;
  const auto without = rank(rows, F);
  rows.push_back(std::move(target));
  return rank(std::move(rows), F) == without;
}

/// dim k[x,y,t]/(xy + t^n, x^q, y^q, t^q) by listing the monomials x^a t^c
/// and y^b t^c (b >= 1), which span k[x,y,t]/(xy + t^n), and keeping
/// those that survive the walls. Modulo xy + t^n, x^a t^c with c >= n(q-a)
/// equals +-x^q y^(q-a) t^(c - n(q-a)), so it dies; the others stay
/// independent.
inline u64 xy_tn_colength(u64 n, u64 q) {
  u64 count = 0;
  for (u64 a = 0; a < q; ++a) {
    for (u64 c = 0; c < q; ++c) {
      if (c < n * (q - a)) ++count;
    }
  }
  for (u64 b = 1; b < q; ++b) {
    for (u64 c = 0; c < q; ++c) {
      if (c < n * (q - b)) ++count;
    }
  }
  return count;
}

/// Rank of multiplication by (uv + t^n)^{q-1} on k[u,v,t]/(u^q, v^q, t^q)
/// over F_p, q = p^e. Mod p, (uv + t^n)^{q-1} is the sum of
/// (-1)^k (uv)^k t^{n(q-1-k)} for k < q. Monomials split into blocks with
/// fixed a - b and n a + c; after sign changes a block is the 0/1 matrix
/// sending u^a v^b t^c to every target A >= a, so its rows are nested
/// intervals and the rank is the number of distinct row starts.
inline u64 uv_tn_splitting(u64 n, u64 q) {
  using ll = long long;
  auto floor_div = [](ll a, ll b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto ceil_div = [&](ll a, ll b) { return -floor_div(-a, b); };
  const ll Q = static_cast<ll>(q), N = static_cast<ll>(n);
  u64 total = 0;
  for (ll d = -(Q - 1); d <= Q - 1; ++d) {
    for (ll w = 0; w <= N * (Q - 1) + Q - 1; ++w) {
      const ll W = w + N * (Q - 1);
      const ll amin = std::max({0LL, d, ceil_div(w - Q + 1, N)});
      const ll amax = std::min({Q - 1, Q - 1 + d, floor_div(w, N)});
      const ll Amin = std::max({0LL, d, ceil_div(W - Q + 1, N)});
      const ll Amax = std::min({Q - 1, Q - 1 + d, floor_div(W, N)});
      if (amin > amax || Amin > Amax) continue;
      const ll hi = std::min(amax, Amax);
      if (amin > hi) continue;
      const ll lo = std::max(amin, Amin + 1);
      total += (amin <= Amin ? 1 : 0) + (hi >= lo ? hi - lo + 1 : 0);
    }
  }
  return total;
}

/// max{t : f^t has a term inside the box (q, ..., q)}, by repeated
/// truncated multiplication.
inline u64 nu(const Poly& f, u64 q, std::size_t n, const Zp& F) {
  const std::vector<u64> bounds(n, q);
  Poly g;
  g[std::vector<u32>(n, 0)] = 1;
  for (u64 t = 0;; ++t) {
    g = mul(g, f, F, bounds);
    if (g.empty()) return t;
  }
}

}  // namespace oracle
