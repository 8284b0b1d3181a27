#include "reduction.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <mutex>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab::detail {

DivisorIndex::DivisorIndex(std::size_t nvars)
    : nvars_(nvars), pure_(nvars, 0) {
  bits_per_var_ = static_cast<unsigned>(
      std::min<std::size_t>(20, 64 / std::max<std::size_t>(nvars, 1)));
  // Roughly geometric thresholds 1, 2, 3, 4, 6, 8, 12, 16, ...
  std::uint64_t t = 1;
  for (unsigned k = 0; k < bits_per_var_; ++k) {
    thresholds_.push_back(t);
    t = t < 2 ? t + 1 : t + t / 2;
  }
}

std::uint64_t DivisorIndex::signature(const Monomial& m) const noexcept {
  std::uint64_t sev = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    const std::uint64_t e = m[i];
    const unsigned base = static_cast<unsigned>(i) * bits_per_var_;
    for (unsigned k = 0; k < bits_per_var_ && e >= thresholds_[k]; ++k) {
      sev |= std::uint64_t{1} << (base + k);
    }
  }
  return sev;
}

void DivisorIndex::add(const Polynomial& divisor) {
  const std::size_t id = leads_.size();
  const Monomial& lead = divisor.leading_monomial();
  leads_.push_back(lead);
  sev_.push_back(signature(lead));
  active_.push_back(true);
  const bool mono = divisor.is_monomial();
  is_monomial_.push_back(mono);
  if (mono) {
    monomial_ids_.push_back(id);
    const std::uint32_t supp = lead.support();
    if (supp != 0 && (supp & (supp - 1)) == 0) {
      std::size_t var = 0;
      while (!((supp >> var) & 1u)) ++var;
      if (pure_[var] == 0 || lead[var] < pure_[var]) pure_[var] = lead[var];
    }
  } else {
    other_ids_.push_back(id);
  }
}

long DivisorIndex::find(const Monomial& m) const {
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (pure_[i] != 0 && m[i] >= pure_[i]) {
      // Some active-or-not monomial divisor x_i^e divides m; locate it.
      for (auto id : monomial_ids_) {
        if (active_[id] && leads_[id].divides(m)) return static_cast<long>(id);
      }
      break;
    }
  }
  const std::uint64_t not_m = ~signature(m);
  for (auto id : monomial_ids_) {
    if (active_[id] && (sev_[id] & not_m) == 0 && leads_[id].divides(m)) {
      return static_cast<long>(id);
    }
  }
  for (auto id : other_ids_) {
    if (active_[id] && (sev_[id] & not_m) == 0 && leads_[id].divides(m)) {
      return static_cast<long>(id);
    }
  }
  return -1;
}

Reducer::Reducer(const RingPtr& ring, const MonomialOrder& order)
    : ring_(ring), order_(order), field_(*ring->field()) {}

void Reducer::add(std::span<const Term> terms, std::size_t start,
                  const Monomial& mult, GaloisField::Element coeff) {
  if (start >= terms.size() || coeff == 0) return;
  streams_.push_back({terms.data(), terms.size(), start, mult, coeff});
  push(static_cast<std::uint32_t>(streams_.size() - 1));
}

void Reducer::push(std::uint32_t id) {
  const Stream& s = streams_[id];
  heap_.push_back({s.terms[s.pos].monomial * s.mult, id});
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](const Entry& a, const Entry& b) {
                   return order_.compare(a.mono, b.mono) < 0;
                 });
}

Polynomial Reducer::run(const std::vector<Polynomial>& divisors,
                        const DivisorIndex& index) {
  auto cmp = [this](const Entry& a, const Entry& b) {
    return order_.compare(a.mono, b.mono) < 0;
  };
  std::vector<Term> out;
  std::size_t steps = 0;
  while (!heap_.empty()) {
    const Monomial m = heap_.front().mono;
    GaloisField::Element c = 0;
    while (!heap_.empty() && heap_.front().mono == m) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      const std::uint32_t id = heap_.back().stream;
      heap_.pop_back();
      Stream& s = streams_[id];
      c = field_.add(c, field_.mul(s.coeff, s.terms[s.pos].coeff));
      if (++s.pos < s.size) push(id);
    }
    if ((++steps & 0xFFF) == 0) check_deadline();
    if (c == 0) continue;
    const long d = index.find(m);
    if (d < 0) {
      out.push_back({m, c});
      continue;
    }
    const Polynomial& g = divisors[static_cast<std::size_t>(d)];
    if (g.size() > 1) {
      const auto& lead = g.leading_term();
      add(g.terms(), 1, m / lead.monomial,
          field_.neg(field_.div(c, lead.coeff)));
    }
  }
  streams_.clear();
  return Polynomial::from_sorted_terms(ring_, std::move(out), order_);
}

std::optional<std::vector<std::uint64_t>> pure_power_box(
    std::size_t nvars, std::span<const Polynomial> generators) {
  std::vector<std::uint64_t> bounds(nvars, 0);
  for (const auto& g : generators) {
    if (!g.is_monomial()) continue;
    const Monomial& m = g.leading_monomial();
    const std::uint32_t supp = m.support();
    if (supp == 0 || (supp & (supp - 1)) != 0) continue;
    const auto var = static_cast<std::size_t>(std::countr_zero(supp));
    if (bounds[var] == 0 || m[var] < bounds[var]) bounds[var] = m[var];
  }
  for (auto b : bounds) {
    if (b == 0) return std::nullopt;
  }
  return bounds;
}

namespace {

using Key = unsigned __int128;

Key box_size(std::span<const std::uint64_t> bounds) {
  Key size = 1;
  for (auto b : bounds) size *= b;
  return size;
}

std::uint64_t top_degree(std::span<const std::uint64_t> bounds) {
  std::uint64_t top = 0;
  for (auto b : bounds) top += b - 1;
  return top;
}

// Rank among the monomials of one total degree: a smaller exponent of a
// later variable ranks higher.
Key grevlex_tie(std::span<const std::uint64_t> a,
                std::span<const std::uint64_t> bounds) {
  Key tie = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    tie = tie * bounds[i] + (bounds[i] - 1 - a[i]);
  }
  return tie;
}

std::uint64_t total(std::span<const std::uint64_t> a) {
  std::uint64_t d = 0;
  for (auto x : a) d += x;
  return d;
}

Key grevlex_key(std::span<const std::uint64_t> a,
                std::span<const std::uint64_t> bounds) {
  return Key(total(a)) * box_size(bounds) + grevlex_tie(a, bounds);
}

// One past the largest grevlex key of the box.
Key grevlex_range(std::span<const std::uint64_t> bounds) {
  return Key(top_degree(bounds) + 1) * box_size(bounds);
}

Key order_key(std::span<const std::uint64_t> a,
              std::span<const std::uint64_t> bounds,
              const MonomialOrder& order) {
  switch (order.kind()) {
    case MonomialOrder::Kind::grevlex:
      return grevlex_key(a, bounds);
    case MonomialOrder::Kind::local:
      return Key(top_degree(bounds) - total(a)) * box_size(bounds) +
             grevlex_tie(a, bounds);
    case MonomialOrder::Kind::lex: {
      Key k = 0;
      for (std::size_t i = 0; i < a.size(); ++i) k = k * bounds[i] + a[i];
      return k;
    }
    case MonomialOrder::Kind::block: {
      const std::size_t k = std::min(order.block_size(), a.size());
      const Key second = grevlex_key(a.subspan(k), bounds.subspan(k));
      if (k == 0) return second;
      return grevlex_key(a.first(k), bounds.first(k)) *
                 grevlex_range(bounds.subspan(k)) +
             second;
    }
  }
  return 0;
}

}  // namespace

std::shared_ptr<const BoxTables> box_tables(
    const std::vector<std::uint64_t>& bounds, const MonomialOrder& order) {
  static std::mutex mutex;
  static std::deque<std::pair<MonomialOrder, std::shared_ptr<const BoxTables>>>
      cache;
  {
    std::lock_guard lock(mutex);
    for (const auto& [o, t] : cache) {
      if (o == order && t->bounds == bounds) return t;
    }
  }
  const std::size_t n = bounds.size();
  std::uint64_t size = 1;
  for (auto b : bounds) {
    if (b == 0 || size > kMaxBoxSize / b) {
      throw LimitError("monomial box too large for dense reduction");
    }
    size *= b;
  }
  auto t = std::make_shared<BoxTables>();
  t->bounds = bounds;
  t->strides.resize(n);
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < n; ++i) {
    t->strides[i] = stride;
    stride *= bounds[i];
  }
  std::vector<std::pair<Key, std::uint32_t>> keyed(size);
  std::vector<std::uint64_t> a(n, 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    keyed[idx] = {order_key(a, bounds, order), static_cast<std::uint32_t>(idx)};
    for (std::size_t i = 0; i < n; ++i) {
      if (++a[i] < bounds[i]) break;
      a[i] = 0;
    }
  }
  std::sort(keyed.begin(), keyed.end());
  t->by_rank.resize(size);
  t->rank.resize(size);
  for (std::uint64_t r = 0; r < size; ++r) {
    t->by_rank[r] = keyed[r].second;
    t->rank[keyed[r].second] = static_cast<std::uint32_t>(r);
  }
  std::lock_guard lock(mutex);
  cache.emplace_back(order, t);
  if (cache.size() > 4) cache.pop_front();
  return t;
}

BoxReducer::BoxReducer(const RingPtr& ring,
                       std::shared_ptr<const BoxTables> tables)
    : ring_(ring),
      field_(*ring->field()),
      tables_(std::move(tables)),
      dense_(tables_->by_rank.size(), 0),
      lo_(static_cast<std::int64_t>(tables_->by_rank.size())) {}

void BoxReducer::add(std::span<const Term> terms, std::size_t start,
                     const Monomial& mult, GaloisField::Element coeff) {
  const auto& bounds = tables_->bounds;
  const auto& strides = tables_->strides;
  const std::size_t n = bounds.size();
  for (std::size_t k = start; k < terms.size(); ++k) {
    const Monomial& m = terms[k].monomial;
    std::uint64_t idx = 0;
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t e = std::uint64_t{m[i]} + mult[i];
      if (e >= bounds[i]) {
        inside = false;
        break;
      }
      idx += e * strides[i];
    }
    if (!inside) continue;
    const std::int64_t r = tables_->rank[idx];
    auto& slot = dense_[static_cast<std::size_t>(r)];
    slot = static_cast<std::uint16_t>(
        field_.add(slot, field_.mul(coeff, terms[k].coeff)));
    lo_ = std::min(lo_, r);
    hi_ = std::max(hi_, r);
  }
}

Polynomial BoxReducer::run(const std::vector<Polynomial>& divisors,
                           const DivisorIndex& index,
                           const MonomialOrder& order) {
  const auto& bounds = tables_->bounds;
  const std::size_t n = bounds.size();
  std::vector<Term> out;
  std::size_t steps = 0;
  for (std::int64_t r = hi_; r >= lo_; --r) {
    // Skip runs of zeros four slots at a time.
    while (r >= lo_ + 3) {
      std::uint64_t word;
      std::memcpy(&word, &dense_[static_cast<std::size_t>(r - 3)],
                  sizeof word);
      if (word != 0) break;
      r -= 4;
    }
    if (r < lo_) break;
    auto& slot = dense_[static_cast<std::size_t>(r)];
    if (slot == 0) continue;
    const GaloisField::Element c = slot;
    slot = 0;
    if ((++steps & 0xFFF) == 0) check_deadline();
    std::uint64_t idx = tables_->by_rank[static_cast<std::size_t>(r)];
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, idx % bounds[i]);
      idx /= bounds[i];
    }
    const long d = index.find(m);
    if (d < 0) {
      out.push_back({std::move(m), c});
      continue;
    }
    const Polynomial& g = divisors[static_cast<std::size_t>(d)];
    if (g.size() > 1) {
      const auto& lead = g.leading_term();
      add(g.terms(), 1, m / lead.monomial,
          field_.neg(field_.div(c, lead.coeff)));
    }
  }
  lo_ = static_cast<std::int64_t>(dense_.size());
  hi_ = -1;
  return Polynomial::from_sorted_terms(ring_, std::move(out), order);
}

}  // namespace charplab::detail
