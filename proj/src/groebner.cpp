#include "charplab/groebner.hpp"

#include <algorithm>
#include <bit>
#include <initializer_list>
#include <optional>
#include <set>
#include <tuple>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"
#include "charplab/staircase.hpp"
#include "reduction.hpp"

namespace charplab {

namespace {

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

// Normal strategy: smallest lcm degree first, then smallest lcm in the
// order, then by index for determinism.
struct PairLess {
  const MonomialOrder* order;
  bool operator()(const CriticalPair& a, const CriticalPair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    if (int c = order->compare(a.lcm, b.lcm); c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, const MonomialOrder& order,
             ReductionEngine engine)
      : ring_(ring),
        order_(order),
        engine_(engine),
        field_(*ring->field()),
        index_(ring->num_variables()),
        pairs_(PairLess{&order_}) {}

  GroebnerBasis run(std::span<const Polynomial> generators) {
    std::vector<Polynomial> input;
    for (const auto& g : generators) {
      if (!g.ring()->same_as(*ring_)) {
        throw InputError("generator belongs to a different ring");
      }
      if (!g.is_zero()) input.push_back(g.with_order(order_).monic());
    }
    std::sort(input.begin(), input.end(),
              [this](const Polynomial& a, const Polynomial& b) {
                if (int c = order_.compare(a.leading_monomial(),
                                           b.leading_monomial());
                    c != 0) {
                  return c < 0;
                }
                return a.size() < b.size();
              });
    for (const auto& g : input) {
      if (g.is_constant()) return unit();
    }
    choose_engine(input);
    if (box_ || !order_.is_global()) {
      // The walls of the box go in first; every monomial outside the box
      // then reduces to zero on sight, which also makes reduction under
      // the local order terminate.
      const auto bounds =
          *detail::pure_power_box(ring_->num_variables(), input);
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        Monomial m(ring_->num_variables());
        m.set(i, bounds[i]);
        insert(Polynomial::monomial(ring_, m, 1, order_));
      }
    }
    for (const auto& g : input) {
      if (g.is_constant()) return unit();
      Polynomial h = reduce_full(g);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      insert(h.monic());
    }
    while (!pairs_.empty()) {
      check_deadline();
      CriticalPair pair = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      Polynomial h = s_polynomial(pair);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      insert(h.monic());
    }
    return finish();
  }

 private:
  GroebnerBasis unit() const {
    return GroebnerBasis(ring_, order_,
                         {Polynomial::constant(ring_, 1, order_)});
  }

  void choose_engine(std::span<const Polynomial> input) {
    if (engine_ == ReductionEngine::sparse) return;
    const auto bounds =
        detail::pure_power_box(ring_->num_variables(), input);
    std::uint64_t size = 1;
    bool fits = bounds.has_value();
    if (fits) {
      for (auto b : *bounds) {
        if (size > detail::kMaxBoxSize / b) {
          fits = false;
          break;
        }
        size *= b;
      }
    }
    if (!fits) {
      if (engine_ == ReductionEngine::box) {
        throw InputError(
            "dense reduction needs a pure power of every variable and a "
            "box of at most 2^24 monomials");
      }
      return;
    }
    // Tiny boxes gain nothing from the dense tables.
    if (engine_ == ReductionEngine::automatic && size < 4096) return;
    box_tables_ = detail::box_tables(*bounds, order_);
    box_.emplace(ring_, box_tables_);
  }

  // Reduces the sum of (terms, start, mult, coeff) streams against basis_.
  Polynomial reduce(std::initializer_list<
                    std::tuple<std::span<const Term>, std::size_t, Monomial,
                               GaloisField::Element>>
                        streams,
                    const std::vector<Polynomial>& divisors,
                    const detail::DivisorIndex& index) {
    if (box_) {
      for (const auto& [terms, start, mult, c] : streams) {
        box_->add(terms, start, mult, c);
      }
      return box_->run(divisors, index, order_);
    }
    detail::Reducer r(ring_, order_);
    for (const auto& [terms, start, mult, c] : streams) {
      r.add(terms, start, mult, c);
    }
    return r.run(divisors, index);
  }

  Polynomial reduce_full(const Polynomial& f) {
    return reduce({{f.terms(), 0, Monomial(ring_->num_variables()), 1}},
                  basis_, index_);
  }

  Polynomial s_polynomial(const CriticalPair& pair) {
    const Polynomial& f = basis_[pair.i];
    const Polynomial& g = basis_[pair.j];
    return reduce({{f.terms(), 1, pair.lcm / f.leading_monomial(), 1},
                   {g.terms(), 1, pair.lcm / g.leading_monomial(),
                    field_.neg(1)}},
                  basis_, index_);
  }

  void insert(Polynomial h) {
    const std::size_t t = basis_.size();
    const Monomial lead = h.leading_monomial();

    // Candidate pairs (i, t) with every still-useful element i.
    struct Candidate {
      std::size_t i;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Candidate> fresh;
    for (std::size_t i = 0; i < t; ++i) {
      if (!useful_[i]) continue;
      const Monomial& li = basis_[i].leading_monomial();
      fresh.push_back({i, li.lcm(lead), li.coprime(lead)});
    }
    // Chain criterion among the new pairs: drop (i, t) when some other
    // lcm properly divides lcm(i, t).
    for (auto& a : fresh) {
      for (const auto& b : fresh) {
        if (&a != &b && b.lcm.divides(a.lcm) && !(b.lcm == a.lcm)) {
          a.keep = false;
          break;
        }
      }
    }
    // Among equal lcms keep one; drop the whole class if any member has
    // coprime leading monomials (product criterion).
    std::vector<Candidate*> survivors;
    for (auto& a : fresh) {
      if (a.keep) survivors.push_back(&a);
    }
    std::vector<bool> done(survivors.size(), false);
    std::vector<CriticalPair> accepted;
    for (std::size_t x = 0; x < survivors.size(); ++x) {
      if (done[x]) continue;
      bool any_coprime = survivors[x]->coprime;
      for (std::size_t y = x + 1; y < survivors.size(); ++y) {
        if (!done[y] && survivors[y]->lcm == survivors[x]->lcm) {
          done[y] = true;
          any_coprime = any_coprime || survivors[y]->coprime;
        }
      }
      if (!any_coprime) accepted.push_back({survivors[x]->i, t, survivors[x]->lcm});
    }
    // Old pairs made redundant by the new leading monomial.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      if (lead.divides(it->lcm)) {
        const Monomial lit = basis_[it->i].leading_monomial().lcm(lead);
        const Monomial ljt = basis_[it->j].leading_monomial().lcm(lead);
        if (!(lit == it->lcm) && !(ljt == it->lcm)) {
          it = pairs_.erase(it);
          continue;
        }
      }
      ++it;
    }
    for (auto& p : accepted) pairs_.insert(std::move(p));

    basis_.push_back(std::move(h));
    useful_.push_back(true);
    index_.add(basis_.back());
    for (std::size_t i = 0; i < t; ++i) {
      if (useful_[i] && lead.divides(basis_[i].leading_monomial())) {
        useful_[i] = false;
        // Under the local order the walls keep reducing: they are what
        // makes reduction terminate.
        if (order_.is_global() || !basis_[i].is_monomial()) {
          index_.deactivate(i);
        }
        --active_count_;
      }
    }
    ++active_count_;
    if (active_count_ > limits().max_basis) {
      throw LimitError("Groebner basis size exceeds the limit of " +
                       std::to_string(limits().max_basis));
    }
  }

  GroebnerBasis finish() {
    // Active elements have pairwise non-dividing leading monomials; reduce
    // each tail against the others.
    std::vector<std::size_t> keep;
    std::vector<Polynomial> walls;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (useful_[i]) {
        keep.push_back(i);
      } else if (index_.active(i)) {
        walls.push_back(basis_[i]);
      }
    }
    detail::DivisorIndex final_index(ring_->num_variables());
    std::vector<Polynomial> finals;
    for (auto i : keep) {
      finals.push_back(basis_[i]);
      final_index.add(basis_[i]);
    }
    const std::size_t kept = finals.size();
    for (const auto& w : walls) {
      finals.push_back(w);
      final_index.add(w);
    }
    std::vector<Polynomial> out;
    out.reserve(kept);
    for (std::size_t k = 0; k < kept; ++k) {
      const Polynomial& g = finals[k];
      final_index.deactivate(k);
      Polynomial tail = reduce(
          {{g.terms(), 1, Monomial(ring_->num_variables()), 1}}, finals,
          final_index);
      final_index.activate(k);
      std::vector<Term> terms;
      terms.reserve(tail.size() + 1);
      terms.push_back(g.leading_term());
      for (const auto& term : tail.terms()) terms.push_back(term);
      out.push_back(
          Polynomial::from_sorted_terms(ring_, std::move(terms), order_));
    }
    std::sort(out.begin(), out.end(),
              [this](const Polynomial& a, const Polynomial& b) {
                return order_.compare(a.leading_monomial(),
                                      b.leading_monomial()) < 0;
              });
    return GroebnerBasis(ring_, order_, std::move(out), std::move(walls));
  }

  RingPtr ring_;
  MonomialOrder order_;
  ReductionEngine engine_;
  std::shared_ptr<const detail::BoxTables> box_tables_;
  std::optional<detail::BoxReducer> box_;
  const GaloisField& field_;
  std::vector<Polynomial> basis_;
  detail::DivisorIndex index_;
  std::vector<bool> useful_;  // may still form pairs and be output
  std::size_t active_count_ = 0;
  std::set<CriticalPair, PairLess> pairs_;
};

}  // namespace

GroebnerBasis buchberger(const RingPtr& ring,
                         std::span<const Polynomial> generators,
                         const MonomialOrder& order,
                         ReductionEngine engine) {
  if (!order.is_global()) {
    // Reduction under the local order terminates once every variable has a
    // pure power among the generators.
    std::vector<bool> bounded(ring->num_variables(), false);
    for (const auto& g : generators) {
      if (!g.is_monomial()) continue;
      const std::uint32_t supp = g.leading_monomial().support();
      if (supp == 0) return Buchberger(ring, order, engine).run(generators);
      if ((supp & (supp - 1)) == 0) bounded[std::countr_zero(supp)] = true;
    }
    if (std::find(bounded.begin(), bounded.end(), false) != bounded.end()) {
      throw InputError(
          "the local order needs a pure power of every variable among the "
          "generators");
    }
  }
  return Buchberger(ring, order, engine).run(generators);
}

GroebnerBasis::GroebnerBasis(RingPtr ring, MonomialOrder order,
                             std::vector<Polynomial> elements,
                             std::vector<Polynomial> walls)
    : ring_(std::move(ring)), order_(order), elements_(std::move(elements)) {
  reducers_ = elements_;
  for (auto& w : walls) reducers_.push_back(std::move(w));
  auto index = std::make_shared<detail::DivisorIndex>(ring_->num_variables());
  for (const auto& e : reducers_) index->add(e);
  index_ = std::move(index);
}

bool GroebnerBasis::is_unit() const noexcept {
  return elements_.size() == 1 && elements_[0].is_constant();
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements_.size());
  for (const auto& g : elements_) out.push_back(g.leading_monomial());
  return out;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (!f.ring()->same_as(*ring_)) {
    throw InputError("polynomial belongs to a different ring");
  }
  const Polynomial g = f.with_order(order_);
  if (elements_.empty() || g.is_zero()) return g;
  if (is_unit()) return Polynomial(ring_, order_);
  detail::Reducer r(ring_, order_);
  r.add(g.terms(), 0, Monomial(ring_->num_variables()), 1);
  return r.run(reducers_, *index_);
}

bool GroebnerBasis::contains_monomial(const Monomial& m) const {
  bool divisible = false;
  for (const auto& g : elements_) {
    if (g.leading_monomial().divides(m)) {
      divisible = true;
      if (g.is_monomial()) return true;
    }
  }
  if (!divisible) return false;
  return normal_form(Polynomial::monomial(ring_, m, 1, order_)).is_zero();
}

Staircase GroebnerBasis::staircase() const {
  return Staircase(ring_->num_variables(), leading_monomials());
}

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
  if (!(order_ == o.order_) || elements_.size() != o.elements_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!(elements_[i] == o.elements_[i])) return false;
  }
  return true;
}

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : state_(std::make_shared<State>()) {
  if (!ring) throw InputError("ideal requires a ring");
  for (auto& g : generators) {
    if (!g.ring()->same_as(*ring)) {
      throw InputError("generator belongs to a different ring");
    }
    if (!g.is_zero()) state_->generators.push_back(std::move(g));
  }
  state_->ring = std::move(ring);
}

Ideal Ideal::unit(const RingPtr& ring) {
  return Ideal(ring, {Polynomial::constant(ring, 1)});
}

Ideal Ideal::maximal(const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->num_variables(); ++i) {
    gens.push_back(Polynomial::variable(ring, i));
  }
  return Ideal(ring, std::move(gens));
}

BasisPtr Ideal::basis(const MonomialOrder& order) const {
  const auto key = std::make_pair(static_cast<int>(order.kind()),
                                  order.block_size());
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->cache.find(key); it != state_->cache.end()) {
      return it->second;
    }
  }
  auto computed = std::make_shared<const GroebnerBasis>(
      buchberger(state_->ring, state_->generators, order));
  std::lock_guard lock(state_->mutex);
  auto [it, inserted] = state_->cache.emplace(key, std::move(computed));
  return it->second;
}

bool Ideal::inside_maximal() const noexcept {
  for (const auto& g : state_->generators) {
    if (g.constant_term() != 0) return false;
  }
  return true;
}

std::string Ideal::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < state_->generators.size(); ++i) {
    if (i) out += ", ";
    out += state_->generators[i].to_string();
  }
  return out + ")";
}

}  // namespace charplab
