#include "loopkit/loop_table.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "loopkit/error.hpp"

namespace loopkit {

std::string ElementSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each_bit(mask_, [&](Element e) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e + 1);
  });
  return out + "}";
}

LoopTable::LoopTable(std::size_t n, std::vector<Element> table)
    : n_(n), table_(std::move(table)) {
  if (n == 0 || table_.size() != n * n)
    throw Error(Errc::ragged_input, "table must be a nonempty n*n array");
  if (n > kMaxOrder)
    throw Error(Errc::invalid_argument,
                "loop order exceeds " + std::to_string(kMaxOrder));
  ldiv_.assign(n * n, static_cast<Element>(n));
  rdiv_.assign(n * n, static_cast<Element>(n));
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      Element z = table_[x * n + y];
      if (z >= n)
        throw Error(Errc::not_latin, "entry out of range at row " +
                                         std::to_string(x + 1));
      if (ldiv_[x * n + z] != n)
        throw Error(Errc::not_latin,
                    "duplicate entry in row " + std::to_string(x + 1));
      ldiv_[x * n + z] = y;
      if (rdiv_[y * n + z] != n)
        throw Error(Errc::not_latin,
                    "duplicate entry in column " + std::to_string(y + 1));
      rdiv_[y * n + z] = x;
    }
  }
  for (Element i = 0; i < n; ++i)
    if (table_[i] != i || table_[i * n] != i)
      throw Error(Errc::not_latin, "table is not normalized: element 0 must "
                                   "be a two-sided identity");
  symbols_.resize(n);
  for (std::size_t i = 0; i < n; ++i) symbols_[i] = static_cast<long long>(i) + 1;
}

LoopTable LoopTable::with_symbols(std::vector<long long> symbols) const {
  if (symbols.size() != n_)
    throw Error(Errc::invalid_argument, "symbol list has wrong length");
  LoopTable out = *this;
  out.symbols_ = std::move(symbols);
  return out;
}

Permutation LoopTable::translation(Side side, Element x) const {
  std::vector<Element> img(n_);
  for (Element y = 0; y < n_; ++y)
    img[y] = side == Side::left ? mul(x, y) : mul(y, x);
  return Permutation(std::move(img));
}

LoopTable from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(Errc::ragged_input, "empty table");
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      throw Error(Errc::ragged_input, "row " + std::to_string(i + 1) +
                                          " has " +
                                          std::to_string(rows[i].size()) +
                                          " entries, expected " +
                                          std::to_string(n));

  // The symbols of the first row must be n distinct values; every row and
  // column must then be a permutation of that set.
  std::map<long long, Element> index;
  for (long long s : rows[0]) index.emplace(s, 0);
  if (index.size() != n)
    throw Error(Errc::not_latin, "duplicate symbol in row 1");
  const long long identity = rows[0][0];
  std::vector<long long> symbols;
  symbols.push_back(identity);
  for (auto& [s, idx] : index)
    if (s != identity) symbols.push_back(s);
  for (std::size_t i = 0; i < n; ++i) index[symbols[i]] = static_cast<Element>(i);

  auto lookup = [&](std::size_t r, std::size_t c) {
    auto it = index.find(rows[r][c]);
    if (it == index.end())
      throw Error(Errc::not_latin, "symbol at row " + std::to_string(r + 1) +
                                       ", column " + std::to_string(c + 1) +
                                       " does not occur in row 1");
    return it->second;
  };

  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      Element e = lookup(r, c);
      if (seen[e])
        throw Error(Errc::not_latin,
                    "duplicate symbol in row " + std::to_string(r + 1));
      seen[e] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      Element e = lookup(r, c);
      if (seen[e])
        throw Error(Errc::not_latin,
                    "duplicate symbol in column " + std::to_string(c + 1));
      seen[e] = true;
    }
  }

  // Row label of row r is rows[r][0]; column label of column c is rows[0][c].
  std::vector<std::size_t> row_of(n), col_of(n);
  for (std::size_t r = 0; r < n; ++r) row_of[lookup(r, 0)] = r;
  for (std::size_t c = 0; c < n; ++c) col_of[lookup(0, c)] = c;
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      table[x * n + y] = lookup(row_of[x], col_of[y]);
  return LoopTable(n, std::move(table)).with_symbols(std::move(symbols));
}

Element mul(const LoopTable& q, Element x, Element y) { return q.mul(x, y); }

Element divide(const LoopTable& q, Side side, Element x, Element z) {
  return q.divide(side, x, z);
}

Permutation translation(const LoopTable& q, Side side, Element x) {
  return q.translation(side, x);
}

LoopTable relabel(const LoopTable& q, const Permutation& p) {
  const std::size_t n = q.order();
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      table[p(x) * n + p(y)] = p(q.mul(x, y));
  return LoopTable(n, std::move(table));
}

LoopTable direct_product(const LoopTable& a, const LoopTable& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Element>(
          a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  return LoopTable(n, std::move(table));
}

}  // namespace loopkit
