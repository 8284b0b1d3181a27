#include "charplab/staircase.hpp"

#include <algorithm>
#include <bit>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

namespace {

// Above this many grid cells the column sweep would use too much memory and
// the search enumerator takes over.
constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 26;

struct ColumnGrid {
  std::size_t column;
  std::vector<std::size_t> others;
  std::vector<std::uint64_t> bounds;
  // heights[cell]: number of standard monomials in the column above cell.
  std::vector<std::uint32_t> heights;
};

}  // namespace

Staircase::Staircase(std::size_t nvars, std::vector<Monomial> generators)
    : nvars_(nvars) {
  std::sort(generators.begin(), generators.end(),
            [](const Monomial& a, const Monomial& b) {
              return a.degree() < b.degree();
            });
  for (const auto& g : generators) {
    bool redundant = false;
    for (const auto& c : corners_) {
      if (c.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) corners_.push_back(g);
  }
  std::vector<std::uint64_t> box(nvars, 0);
  for (const auto& c : corners_) {
    const std::uint32_t s = c.support();
    if (std::popcount(s) == 1) {
      const auto var = static_cast<std::size_t>(std::countr_zero(s));
      box[var] = c[var];
    }
  }
  if (is_unit() || std::none_of(box.begin(), box.end(),
                                [](std::uint64_t b) { return b == 0; })) {
    box_ = std::move(box);
  }
}

bool Staircase::is_unit() const noexcept {
  return !corners_.empty() && corners_.front().is_one();
}

bool Staircase::is_standard(const Monomial& m) const noexcept {
  for (const auto& c : corners_) {
    if (c.divides(m)) return false;
  }
  return true;
}

void Staircase::for_each_standard(
    std::uint64_t max_degree,
    const std::function<void(const Monomial&)>& f) const {
  if (is_unit()) return;
  Monomial m(nvars_);
  std::size_t visited = 0;
  // Exponents are raised variable by variable; once a partial monomial is
  // divisible by a corner, so is every extension of it.
  auto rec = [&](auto& self, std::size_t var) -> void {
    if (var == nvars_) {
      if ((++visited & 0xFFFF) == 0) check_deadline();
      f(m);
      return;
    }
    const std::uint64_t start = m[var];
    for (std::uint64_t a = start;; ++a) {
      if (m.degree() - m[var] + a > max_degree) break;
      m.set(var, a);
      if (!is_standard(m)) break;
      self(self, var + 1);
    }
    m.set(var, start);
  };
  rec(rec, 0);
}

std::uint64_t Staircase::count() const {
  if (is_unit()) return 0;
  if (!box_) throw InputError("ideal is not zero-dimensional");
  std::uint64_t cells = 1;
  const std::uint64_t widest = *std::max_element(box_->begin(), box_->end());
  for (auto b : *box_) cells *= b;
  cells /= widest;
  return cells <= kMaxGridCells ? count_by_columns() : count_by_search();
}

std::uint64_t Staircase::count_by_search() const {
  std::uint64_t n = 0;
  for_each_standard(~std::uint64_t{0}, [&](const Monomial&) { ++n; });
  return n;
}

// Column sweep: pick the variable with the tallest pure power as the
// column; for every cell of the grid spanned by the other variables the
// standard monomials above it form an initial segment whose height is the
// minimum column exponent of the corners dominated by the cell.
static ColumnGrid column_grid(std::size_t nvars,
                              const std::vector<Monomial>& corners,
                              const std::vector<std::uint64_t>& box) {
  ColumnGrid g;
  g.column = static_cast<std::size_t>(
      std::max_element(box.begin(), box.end()) - box.begin());
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (i == g.column) continue;
    g.others.push_back(i);
    g.bounds.push_back(box[i]);
    cells *= box[i];
  }
  g.heights.assign(cells, static_cast<std::uint32_t>(box[g.column]));
  std::vector<std::uint64_t> strides(g.others.size());
  std::uint64_t stride = 1;
  for (std::size_t k = g.others.size(); k-- > 0;) {
    strides[k] = stride;
    stride *= g.bounds[k];
  }
  for (const auto& c : corners) {
    std::uint64_t cell = 0;
    bool inside = true;
    for (std::size_t k = 0; k < g.others.size(); ++k) {
      const std::uint64_t a = c[g.others[k]];
      if (a >= g.bounds[k]) {
        inside = false;
        break;
      }
      cell += a * strides[k];
    }
    if (inside) {
      g.heights[cell] = std::min<std::uint32_t>(g.heights[cell], c[g.column]);
    }
  }
  // Prefix minimum along each grid axis in turn.
  for (std::size_t k = 0; k < g.others.size(); ++k) {
    const std::uint64_t s = strides[k];
    const std::uint64_t span = s * g.bounds[k];
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      if (cell % span >= s) {
        g.heights[cell] = std::min(g.heights[cell], g.heights[cell - s]);
      }
    }
  }
  return g;
}

std::uint64_t Staircase::count_by_columns() const {
  const ColumnGrid g = column_grid(nvars_, corners_, *box_);
  std::uint64_t total = 0;
  for (auto h : g.heights) total += h;
  return total;
}

std::uint64_t Staircase::max_standard_degree() const {
  if (is_unit()) throw InputError("unit ideal has no standard monomials");
  if (!box_) throw InputError("ideal is not zero-dimensional");
  std::uint64_t cells = 1;
  const std::uint64_t widest = *std::max_element(box_->begin(), box_->end());
  for (auto b : *box_) cells *= b;
  cells /= widest;
  if (cells > kMaxGridCells) {
    std::uint64_t best = 0;
    for_each_standard(~std::uint64_t{0}, [&](const Monomial& m) {
      best = std::max(best, m.degree());
    });
    return best;
  }
  const ColumnGrid g = column_grid(nvars_, corners_, *box_);
  std::uint64_t best = 0;
  std::vector<std::uint64_t> coord(g.others.size(), 0);
  std::uint64_t degree = 0;
  for (std::uint64_t cell = 0; cell < g.heights.size(); ++cell) {
    if (g.heights[cell] > 0) best = std::max(best, degree + g.heights[cell] - 1);
    // Advance the mixed-radix coordinate, last axis fastest.
    for (std::size_t k = coord.size(); k-- > 0;) {
      if (++coord[k] < g.bounds[k]) {
        ++degree;
        break;
      }
      degree -= coord[k] - 1;
      coord[k] = 0;
    }
  }
  return best;
}

std::vector<std::uint64_t> Staircase::count_by_degree(
    std::uint64_t max_degree) const {
  std::vector<std::uint64_t> out(max_degree + 1, 0);
  for_each_standard(max_degree,
                    [&](const Monomial& m) { ++out[m.degree()]; });
  return out;
}

std::size_t Staircase::dimension() const {
  if (is_unit()) throw InputError("unit ideal has empty zero set");
  std::vector<std::uint32_t> supports;
  for (const auto& c : corners_) supports.push_back(c.support());
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()),
                 supports.end());
  std::size_t best = 0;
  const std::uint32_t full = nvars_ == 32 ? ~0u : (1u << nvars_) - 1;
  for (std::uint32_t set = 0;; ++set) {
    const auto size = static_cast<std::size_t>(std::popcount(set));
    if (size > best) {
      bool independent = true;
      for (auto s : supports) {
        if ((s & ~set) == 0) {
          independent = false;
          break;
        }
      }
      if (independent) best = size;
    }
    if (set == full) break;
  }
  return best;
}

}  // namespace charplab
