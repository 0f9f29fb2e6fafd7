#include "loopkit/plex.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <thread>
#include <unordered_map>

#include "loopkit/algebra.hpp"
#include "loopkit/error.hpp"

namespace loopkit {

CellSelection::CellSelection(const LoopTable& q, std::vector<Cell> cells)
    : cells_(std::move(cells)) {
  for (const Cell& c : cells_) {
    if (c.row >= q.order() || c.col >= q.order() ||
        q.mul(c.row, c.col) != c.entry)
      throw Error(Errc::invalid_argument, "cell is not in the multiplication table");
  }
  std::sort(cells_.begin(), cells_.end());
  for (std::size_t i = 1; i < cells_.size(); ++i)
    if (cells_[i].row == cells_[i - 1].row && cells_[i].col == cells_[i - 1].col)
      throw Error(Errc::invalid_argument, "duplicate cell in selection");
}

CellSelection CellSelection::from_positions(
    const LoopTable& q, const std::vector<std::pair<Element, Element>>& positions) {
  std::vector<Cell> cells;
  for (auto [r, c] : positions) {
    if (r >= q.order() || c >= q.order())
      throw Error(Errc::invalid_argument, "cell position out of range");
    cells.push_back(Cell{r, c, q.mul(r, c)});
  }
  return CellSelection(q, std::move(cells));
}

std::vector<Element> CellSelection::rows() const {
  std::vector<Element> out;
  for (const Cell& c : cells_) out.push_back(c.row);
  return out;
}

std::string CellSelection::to_string() const {
  std::string out;
  for (const Cell& c : cells_) {
    if (!out.empty()) out += ' ';
    out += '(' + std::to_string(c.row + 1) + ',' + std::to_string(c.col + 1) +
           ',' + std::to_string(c.entry + 1) + ')';
  }
  return out;
}

RegularityProfile regularity_profile(const LoopTable& q, const CellSelection& c) {
  const std::size_t n = q.order();
  RegularityProfile p{std::vector<std::uint32_t>(n, 0),
                      std::vector<std::uint32_t>(n, 0),
                      std::vector<std::uint32_t>(n, 0)};
  for (const Cell& cell : c.cells()) {
    ++p.as_row[cell.row];
    ++p.as_column[cell.col];
    ++p.as_entry[cell.entry];
  }
  return p;
}

bool is_regular(const LoopTable& q, const CellSelection& c) {
  const auto p = regularity_profile(q, c);
  return p.as_column == p.as_entry;
}

std::string SelectionKind::name() const {
  switch (type) {
    case Type::transversal: return "transversal";
    case Type::k_plex: return std::to_string(k) + "-plex";
    case Type::row_k_plex: return "row " + std::to_string(k) + "-plex";
    case Type::regular_row_k_plex:
      return "regular row " + std::to_string(k) + "-plex";
  }
  return "?";
}

bool satisfies(const LoopTable& q, const CellSelection& c, SelectionKind kind) {
  const auto p = regularity_profile(q, c);
  const std::uint32_t k =
      kind.type == SelectionKind::Type::transversal ? 1 : kind.k;
  auto all_equal = [k](const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [k](auto x) { return x == k; });
  };
  if (!all_equal(p.as_row)) return false;
  switch (kind.type) {
    case SelectionKind::Type::transversal:
    case SelectionKind::Type::k_plex:
      return all_equal(p.as_column) && all_equal(p.as_entry);
    case SelectionKind::Type::row_k_plex:
      return true;
    case SelectionKind::Type::regular_row_k_plex:
      return p.as_column == p.as_entry;
  }
  return false;
}

namespace {

struct Key {
  std::uint64_t lo = 0, hi = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ull;
    h ^= (k.hi + 0x632be59bd9b4e019ull) * 0xc2b2ae3d27d4eb4full;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Row-by-row depth-first search shared by find, count and enumerate.
//
// Each row picks a set of exactly k columns. Depending on the kind the
// state tracks per-symbol column and entry counts (transversal, k-plex) or
// the column-minus-entry balance (regular kinds). Subtrees are memoized on
// (row, state) when the state packs into 120 bits.
class Kernel {
 public:
  Kernel(const LoopTable& q, SelectionKind kind, std::uint64_t max_states)
      : q_(q),
        n_(q.order()),
        k_(kind.type == SelectionKind::Type::transversal ? 1 : kind.k),
        type_(kind.type),
        max_states_(max_states),
        cols_(n_, 0),
        entries_(n_, 0),
        balance_(n_, 0),
        path_(n_, 0) {
    if (kind.type != SelectionKind::Type::transversal && kind.k == 0)
      throw Error(Errc::invalid_argument, "k must be at least 1");
    if (k_ <= n_) {
      // All k-subsets of the columns in increasing mask order (Gosper).
      const std::uint64_t first =
          k_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k_) - 1;
      const std::uint64_t last = first << (n_ - k_);
      for (std::uint64_t m = first;;) {
        choices_.push_back(m);
        if (m == last) break;
        const std::uint64_t c = m & (~m + 1);
        const std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
      }
    }
    const unsigned width = std::bit_width(type_ == Type::regular_row_k_plex
                                              ? 2u * static_cast<unsigned>(n_)
                                              : static_cast<unsigned>(k_));
    bits_ = width;
    const std::size_t per_symbol =
        type_ == Type::row_k_plex ? 0
        : type_ == Type::regular_row_k_plex ? width
                                            : 2 * width;
    memo_enabled_ = per_symbol * n_ <= 120;
  }

  bool feasible_k() const { return k_ <= n_; }

  std::uint64_t count() {
    if (!feasible_k()) return 0;
    return descend(0, Mode::count, nullptr);
  }

  std::uint64_t count_first_row_choice(std::size_t choice) {
    if (!feasible_k()) return 0;
    if (!apply(0, choices_[choice], +1)) {
      apply(0, choices_[choice], -1);
      return 0;
    }
    path_[0] = choices_[choice];
    const std::uint64_t c = descend(1, Mode::count, nullptr);
    apply(0, choices_[choice], -1);
    return c;
  }

  std::optional<CellSelection> find() {
    if (!feasible_k()) return std::nullopt;
    if (descend(0, Mode::find, nullptr) == 0) return std::nullopt;
    return selection();
  }

  std::uint64_t enumerate(const std::function<bool(const CellSelection&)>& visit) {
    if (!feasible_k()) return 0;
    memo_enabled_ = false;
    return descend(0, Mode::enumerate, &visit);
  }

  std::size_t choice_count() const { return choices_.size(); }

 private:
  using Type = SelectionKind::Type;
  enum class Mode { count, find, enumerate };

  CellSelection selection() const {
    std::vector<Cell> cells;
    for (Element r = 0; r < n_; ++r)
      for_each_bit(path_[r], [&](Element c) {
        cells.push_back(Cell{r, c, q_.mul(r, c)});
      });
    return CellSelection(q_, std::move(cells));
  }

  // Applies (sign +1) or removes (sign -1) a row choice and reports whether
  // the remaining rows can still complete the selection.
  bool apply(Element row, std::uint64_t mask, int sign) {
    for_each_bit(mask, [&](Element c) {
      const Element e = q_.mul(row, c);
      cols_[c] += sign;
      entries_[e] += sign;
      balance_[c] += sign;
      balance_[e] -= sign;
    });
    if (sign < 0) return true;
    const int remaining = static_cast<int>(n_) - static_cast<int>(row) - 1;
    switch (type_) {
      case Type::transversal:
      case Type::k_plex:
        for (std::size_t s = 0; s < n_; ++s) {
          const int k = static_cast<int>(k_);
          if (cols_[s] > k || entries_[s] > k) return false;
          if (cols_[s] + remaining < k || entries_[s] + remaining < k)
            return false;
        }
        return true;
      case Type::row_k_plex:
        return true;
      case Type::regular_row_k_plex: {
        // A row changes one symbol's balance by at most 1 and the total
        // absolute balance by at most 2k.
        long total = 0;
        for (std::size_t s = 0; s < n_; ++s) {
          const int b = std::abs(balance_[s]);
          if (b > remaining) return false;
          total += b;
        }
        return total <= 2L * static_cast<long>(k_) * remaining;
      }
    }
    return false;
  }

  Key key(Element row) const {
    Key key;
    key.hi = static_cast<std::uint64_t>(row) << 56;
    std::size_t bit = 0;
    auto push = [&](std::uint64_t v) {
      if (bit < 64) {
        key.lo |= v << bit;
        if (bit + bits_ > 64) key.hi |= v >> (64 - bit);
      } else {
        key.hi |= v << (bit - 64);
      }
      bit += bits_;
    };
    for (std::size_t s = 0; s < n_; ++s) {
      switch (type_) {
        case Type::transversal:
        case Type::k_plex:
          push(static_cast<std::uint64_t>(cols_[s]));
          push(static_cast<std::uint64_t>(entries_[s]));
          break;
        case Type::regular_row_k_plex:
          push(static_cast<std::uint64_t>(balance_[s] + static_cast<int>(n_)));
          break;
        case Type::row_k_plex:
          break;
      }
    }
    return key;
  }

  std::uint64_t descend(Element row, Mode mode,
                        const std::function<bool(const CellSelection&)>* visit) {
    if (row == n_) {
      if (mode == Mode::enumerate && !(*visit)(selection())) stop_ = true;
      return 1;
    }
    Key k;
    if (memo_enabled_) {
      k = key(row);
      if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    }
    std::uint64_t total = 0;
    for (std::uint64_t mask : choices_) {
      if (apply(row, mask, +1)) {
        path_[row] = mask;
        total += descend(row + 1, mode, visit);
      }
      apply(row, mask, -1);
      if (stop_) return total;
      if (mode == Mode::find && total > 0) return total;
    }
    if (memo_enabled_) {
      if (memo_.size() >= max_states_)
        throw Error(Errc::budget_exceeded,
                    "selection search exceeded " + std::to_string(max_states_) +
                        " memoized states");
      memo_.emplace(k, total);
    }
    return total;
  }

  const LoopTable& q_;
  std::size_t n_;
  std::uint32_t k_;
  Type type_;
  std::uint64_t max_states_;
  std::vector<int> cols_, entries_, balance_;
  std::vector<std::uint64_t> path_;
  std::vector<std::uint64_t> choices_;
  unsigned bits_ = 1;
  bool memo_enabled_ = true;
  bool stop_ = false;
  std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

}  // namespace

std::optional<CellSelection> find_selection(const LoopTable& q,
                                            SelectionKind kind,
                                            const SearchOptions& opts) {
  auto found = Kernel(q, kind, opts.max_states).find();
  if (found && !satisfies(q, *found, kind))
    throw Error(Errc::inconsistency_detected,
                "search produced an invalid " + kind.name());
  return found;
}

std::uint64_t count_selections(const LoopTable& q, SelectionKind kind,
                               const SearchOptions& opts) {
  if (opts.workers <= 1) return Kernel(q, kind, opts.max_states).count();

  // Split the first row's choices across workers, each with its own memo.
  const std::size_t choices = Kernel(q, kind, opts.max_states).choice_count();
  std::vector<std::uint64_t> partial(opts.workers, 0);
  std::vector<std::exception_ptr> errors(opts.workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < opts.workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        Kernel kernel(q, kind, opts.max_states);
        for (std::size_t c = w; c < choices; c += opts.workers)
          partial[w] += kernel.count_first_row_choice(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

std::uint64_t for_each_selection(
    const LoopTable& q, SelectionKind kind,
    const std::function<bool(const CellSelection&)>& visit) {
  Kernel kernel(q, kind, ~std::uint64_t{0});
  std::uint64_t visited = 0;
  kernel.enumerate([&](const CellSelection& c) {
    ++visited;
    return visit(c);
  });
  return visited;
}

std::vector<std::vector<Cell>> cycle_decompose_regular(const LoopTable& q,
                                                       const CellSelection& c) {
  if (c.empty() || !is_regular(q, c))
    throw Error(Errc::not_regular, "selection is empty or not regular");
  const auto& cells = c.cells();
  std::vector<bool> alive(cells.size(), true);
  std::vector<std::vector<Cell>> cycles;
  for (std::size_t start = 0; start < cells.size(); ++start) {
    while (alive[start]) {
      std::vector<std::size_t> path{start};
      std::vector<long> pos(cells.size(), -1);
      pos[start] = 0;
      for (;;) {
        const Element y = cells[path.back()].col;
        std::size_t next = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (alive[i] && cells[i].entry == y) {
            next = i;
            break;
          }
        if (next == cells.size())
          throw Error(Errc::not_regular, "walk found no continuing cell");
        if (pos[next] >= 0) {
          std::vector<Cell> cycle;
          for (std::size_t t = static_cast<std::size_t>(pos[next]); t < path.size(); ++t) {
            cycle.push_back(cells[path[t]]);
            alive[path[t]] = false;
          }
          cycles.push_back(std::move(cycle));
          break;
        }
        pos[next] = static_cast<long>(path.size());
        path.push_back(next);
      }
    }
  }
  return cycles;
}

Element nested_left_product(const LoopTable& q, const std::vector<Cell>& cycle) {
  Element p = cycle.back().row;
  for (std::size_t t = cycle.size() - 1; t-- > 0;) p = q.mul(cycle[t].row, p);
  return p;
}

namespace {

void require_group(const LoopTable& g) {
  if (!is_group(g)) throw Error(Errc::not_a_group, "table is not a group");
}

Element product_of(const LoopTable& g, const std::vector<Element>& seq,
                   std::size_t from, std::size_t to) {
  Element p = 0;
  for (std::size_t i = from; i < to; ++i) p = g.mul(p, seq[i]);
  return p;
}

void check_elements(const LoopTable& g, const std::vector<Element>& seq) {
  if (seq.empty()) throw Error(Errc::invalid_argument, "empty sequence");
  for (Element e : seq)
    if (e >= g.order()) throw Error(Errc::invalid_argument, "element out of range");
}

}  // namespace

CellSelection regular_set_from_unit_product(const LoopTable& g,
                                            const std::vector<Element>& seq) {
  require_group(g);
  check_elements(g, seq);
  const std::size_t k = seq.size();
  if (product_of(g, seq, 0, k) != 0)
    throw Error(Errc::product_not_identity, "sequence product is not 1");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j <= k; ++j)
      if (j - i < k && product_of(g, seq, i, j) == 0)
        throw Error(Errc::contiguous_unit_subsequence,
                    "positions " + std::to_string(i + 1) + ".." +
                        std::to_string(j) + " multiply to 1");
  // h[i] = g_{i+1} ... g_k with h[0] = h[k] = 1 (0-based seq).
  std::vector<Element> h(k + 1, 0);
  for (std::size_t i = k - 1; i >= 1; --i) h[i] = g.mul(seq[i], h[i + 1]);
  std::vector<Cell> cells;
  for (std::size_t i = 1; i <= k; ++i)
    cells.push_back(Cell{seq[i - 1], h[i], h[i - 1]});
  return CellSelection(g, std::move(cells));
}

std::vector<std::vector<Element>> unit_product_blocks(
    const LoopTable& g, const std::vector<Element>& seq) {
  require_group(g);
  check_elements(g, seq);
  if (product_of(g, seq, 0, seq.size()) != 0)
    throw Error(Errc::product_not_identity, "sequence product is not 1");
  std::vector<std::vector<Element>> blocks;
  std::vector<Element> cur = seq;
  for (;;) {
    bool extracted = false;
    for (std::size_t len = 1; len < cur.size() && !extracted; ++len)
      for (std::size_t i = 0; i + len <= cur.size(); ++i)
        if (product_of(g, cur, i, i + len) == 0) {
          blocks.emplace_back(cur.begin() + i, cur.begin() + i + len);
          cur.erase(cur.begin() + i, cur.begin() + i + len);
          extracted = true;
          break;
        }
    if (!extracted) {
      blocks.push_back(std::move(cur));
      return blocks;
    }
  }
}

CellSelection transversal_from_full_product(const LoopTable& g,
                                            const std::vector<Element>& ordering) {
  require_group(g);
  std::vector<Element> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == g.order();
  for (std::size_t i = 0; permutation && i < sorted.size(); ++i)
    permutation = sorted[i] == i;
  if (!permutation)
    throw Error(Errc::invalid_argument,
                "ordering must use every element exactly once");
  std::vector<Cell> cells;
  for (const auto& block : unit_product_blocks(g, ordering)) {
    const auto part = regular_set_from_unit_product(g, block);
    cells.insert(cells.end(), part.cells().begin(), part.cells().end());
  }
  CellSelection t(g, std::move(cells));
  if (!satisfies(g, t, SelectionKind::regular_row_k_plex(1)))
    throw Error(Errc::inconsistency_detected,
                "construction did not yield a regular row transversal");
  return t;
}

std::vector<CellSelection> translate_partition(const LoopTable& g,
                                               const CellSelection& t) {
  require_group(g);
  if (!satisfies(g, t, SelectionKind::regular_row_k_plex(1)))
    throw Error(Errc::not_regular_row_transversal,
                "input is not a regular row transversal");
  std::vector<CellSelection> out;
  for (Element s = 0; s < g.order(); ++s) {
    std::vector<Cell> cells;
    for (const Cell& c : t.cells())
      cells.push_back(Cell{c.row, g.mul(c.col, s), g.mul(c.entry, s)});
    out.emplace_back(g, std::move(cells));
  }
  return out;
}

}  // namespace loopkit
