#include "loopkit/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "loopkit/algebra.hpp"
#include "loopkit/error.hpp"
#include "loopkit/hp.hpp"
#include "loopkit/isomorphism.hpp"
#include "loopkit/plex.hpp"
#include "loopkit/products.hpp"

namespace loopkit {

// ---------------------------------------------------------------------------
// Table files

namespace {

struct Token {
  long long value;
  std::size_t column;
};

struct Row {
  std::size_t line;
  std::vector<Token> tokens;
};

}  // namespace

LoopTable parse_table(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    Row row{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == ',') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',')
        ++j;
      long long v = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc{} || ptr != line.data() + j)
        throw ParseError(line_no, i + 1,
                         "expected an integer, got '" + std::string(line.substr(i, j - i)) + "'");
      row.tokens.push_back(Token{v, i + 1});
      i = j;
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw ParseError(line_no, 0, "no table rows found");

  // A lone integer followed by exactly that many rows is the order header.
  if (rows[0].tokens.size() == 1 &&
      static_cast<long long>(rows.size() - 1) == rows[0].tokens[0].value) {
    rows.erase(rows.begin());
  }
  const std::size_t n = rows.size();
  for (const Row& r : rows) {
    if (r.tokens.size() != n)
      throw ParseError(r.line, 0,
                       "expected " + std::to_string(n) + " entries, found " +
                           std::to_string(r.tokens.size()),
                       Errc::ragged_input);
    for (const Token& t : r.tokens)
      if (t.value < 1 || t.value > static_cast<long long>(n))
        throw ParseError(r.line, t.column,
                         "symbol " + std::to_string(t.value) + " outside 1.." +
                             std::to_string(n));
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(n + 1, false);
    for (const Token& t : rows[r].tokens) {
      if (seen[t.value])
        throw ParseError(rows[r].line, t.column,
                         "symbol " + std::to_string(t.value) + " repeated in row",
                         Errc::not_latin);
      seen[t.value] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n + 1, false);
    for (std::size_t r = 0; r < n; ++r) {
      const Token& t = rows[r].tokens[c];
      if (seen[t.value])
        throw ParseError(rows[r].line, t.column,
                         "symbol " + std::to_string(t.value) +
                             " repeated in column " + std::to_string(c + 1),
                         Errc::not_latin);
      seen[t.value] = true;
    }
  }
  std::vector<std::vector<long long>> values(n);
  for (std::size_t r = 0; r < n; ++r)
    for (const Token& t : rows[r].tokens) values[r].push_back(t.value);
  return from_rows(values);
}

std::string serialize_table(const LoopTable& q) {
  std::string out = std::to_string(q.order()) + "\n";
  for (Element x = 0; x < q.order(); ++x) {
    for (Element y = 0; y < q.order(); ++y) {
      if (y) out += ' ';
      out += std::to_string(q.symbol(q.mul(x, y)));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in tables

namespace {

LoopTable from_function(std::size_t n, const std::function<Element(Element, Element)>& f) {
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) table[x * n + y] = f(x, y);
  return LoopTable(n, std::move(table));
}

LoopTable from_symbols(const std::vector<std::vector<long long>>& rows) {
  return from_rows(rows);
}

LoopTable cyclic(std::size_t n) {
  return from_function(n, [n](Element x, Element y) {
    return static_cast<Element>((x + y) % n);
  });
}

LoopTable elementary_abelian2(std::size_t k) {
  return from_function(std::size_t{1} << k, [](Element x, Element y) { return x ^ y; });
}

// Elements r^i s^j with index i + n*j; s r s = r^{-1}.
LoopTable dihedral(std::size_t n) {
  return from_function(2 * n, [n](Element x, Element y) {
    const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
    const std::size_t rot = b ? (a + n - c) % n : (a + c) % n;
    return static_cast<Element>(rot + n * ((b + d) % 2));
  });
}

// 1, -1, i, -i, j, -j, k, -k.
LoopTable quaternion8() {
  // unit product table over {1,i,j,k}: (sign, unit)
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return from_function(8, [](Element x, Element y) {
    const int ux = x / 2, uy = y / 2;
    int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[ux][uy];
    return static_cast<Element>(unit[ux][uy] * 2 + (s < 0 ? 1 : 0));
  });
}

LoopTable symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_function(6, [&](Element x, Element y) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = perms[x][perms[y][i]];
    return static_cast<Element>(std::find(perms.begin(), perms.end(), r) - perms.begin());
  });
}

class NameParser {
 public:
  explicit NameParser(std::string_view s) : s_(s) {}

  LoopTable parse_all() {
    LoopTable t = parse();
    skip();
    if (i_ != s_.size()) bad();
    return t;
  }

 private:
  [[noreturn]] void bad() const {
    throw Error(Errc::unknown_name, "unknown builtin '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
      ++j;
    std::string out(s_.substr(i_, j - i_));
    i_ = j;
    return out;
  }
  std::size_t number() {
    skip();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) bad();
    i_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  LoopTable parse() {
    const std::string name = ident();
    if (name == "fig1")
      return from_symbols({{1, 2, 3, 4, 5, 6},
                           {2, 1, 4, 3, 6, 5},
                           {3, 5, 1, 6, 2, 4},
                           {4, 6, 2, 5, 1, 3},
                           {5, 3, 6, 2, 4, 1},
                           {6, 4, 5, 1, 3, 2}});
    if (name == "fig2")
      return from_symbols({{1, 2, 3, 4, 5},
                           {2, 1, 4, 5, 3},
                           {3, 5, 1, 2, 4},
                           {4, 3, 5, 1, 2},
                           {5, 4, 2, 3, 1}});
    if (name == "klein4") return elementary_abelian2(2);
    if (name == "sym3") return symmetric3();
    if (name == "quaternion8") return quaternion8();
    if (name == "cyclic" || name == "dihedral") {
      if (!eat('(')) bad();
      const std::size_t n = number();
      if (!eat(')') || n == 0 || n > (name == "cyclic" ? kMaxOrder : kMaxOrder / 2)) bad();
      return name == "cyclic" ? cyclic(n) : dihedral(n);
    }
    if (name == "elementary_abelian") {
      if (!eat('(')) bad();
      const std::size_t p = number();
      if (!eat(',')) bad();
      const std::size_t k = number();
      if (!eat(')') || p != 2 || k > 6) bad();
      return elementary_abelian2(k);
    }
    if (name == "product") {
      if (!eat('(')) bad();
      LoopTable a = parse();
      if (!eat(',')) bad();
      LoopTable b = parse();
      if (!eat(')') || a.order() * b.order() > kMaxOrder) bad();
      return direct_product(a, b);
    }
    bad();
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

LoopTable builtin(std::string_view name) { return NameParser(name).parse_all(); }

std::vector<std::pair<std::string, LoopTable>> group_catalog() {
  std::vector<std::string> names;
  for (int n = 1; n <= 8; ++n) names.push_back("cyclic(" + std::to_string(n) + ")");
  names.insert(names.end(), {"klein4", "sym3", "dihedral(4)", "quaternion8",
                             "product(cyclic(2),cyclic(4))", "elementary_abelian(2,3)"});
  std::vector<std::pair<std::string, LoopTable>> out;
  for (auto& nm : names) out.emplace_back(nm, builtin(nm));
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t for_each_loop(std::size_t n,
                            const std::function<bool(const LoopTable&)>& visit,
                            std::size_t max_order) {
  if (n == 0) throw Error(Errc::invalid_argument, "order must be positive");
  if (n > max_order)
    throw Error(Errc::budget_exceeded,
                "loop enumeration is limited to order " + std::to_string(max_order));
  std::vector<Element> table(n * n);
  std::vector<std::uint64_t> row_used(n, 0), col_used(n, 0);
  for (Element i = 0; i < n; ++i) {
    table[i] = i;
    table[i * n] = i;
    row_used[i] |= std::uint64_t{1} << i;
    col_used[i] |= std::uint64_t{1} << i;
  }
  row_used[0] = col_used[0] = ElementSet::full_mask(n);
  std::uint64_t count = 0;
  bool stop = false;
  std::function<void(std::size_t)> fill = [&](std::size_t cell) {
    if (stop) return;
    const std::size_t r = cell / (n - 1) + 1, c = cell % (n - 1) + 1;
    if (r == n) {
      ++count;
      if (!visit(LoopTable(n, table))) stop = true;
      return;
    }
    const std::uint64_t free = ~(row_used[r] | col_used[c]) & ElementSet::full_mask(n);
    for_each_bit(free, [&](Element v) {
      if (stop) return;
      const std::uint64_t bit = std::uint64_t{1} << v;
      table[r * n + c] = v;
      row_used[r] |= bit;
      col_used[c] |= bit;
      fill(cell + 1);
      row_used[r] &= ~bit;
      col_used[c] &= ~bit;
    });
  };
  if (n == 1) {
    ++count;
    visit(LoopTable(1, {0}));
  } else {
    fill(0);
  }
  return count;
}

std::vector<LoopTable> enumerate_loops(std::size_t n, bool up_to_iso,
                                       std::size_t max_order) {
  std::vector<LoopTable> out;
  std::set<std::string> seen;
  for_each_loop(
      n,
      [&](const LoopTable& q) {
        if (!up_to_iso) {
          out.push_back(q);
        } else if (seen.insert(canonical_form(q)).second) {
          out.push_back(canonical_table(q));
        }
        return true;
      },
      max_order);
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

using ojson = nlohmann::ordered_json;

std::string SweepRecord::to_json() const {
  ojson j;
  j["id"] = id;
  j["n"] = n;
  j["group"] = group;
  j["aq"] = aq;
  j["dq"] = dq;
  j["p1"] = p1;
  j["cond"] = {{"A", A}, {"B", B}, {"C", C}};
  ojson counts;
  counts["transversal"] = transversals ? ojson(*transversals) : ojson(nullptr);
  counts["rrt"] = rrt ? ojson(*rrt) : ojson(nullptr);
  j["counts"] = counts;
  j["suite"] = suite;
  return j.dump();
}

SweepRecord SweepRecord::from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  SweepRecord r;
  r.id = j.at("id").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.group = j.at("group").get<bool>();
  r.aq = j.at("aq").get<std::size_t>();
  r.dq = j.at("dq").get<std::size_t>();
  r.p1 = j.at("p1").get<std::vector<long long>>();
  r.A = j.at("cond").at("A").get<bool>();
  r.B = j.at("cond").at("B").get<bool>();
  r.C = j.at("cond").at("C").get<bool>();
  const auto& c = j.at("counts");
  if (!c.at("transversal").is_null()) r.transversals = c.at("transversal").get<std::uint64_t>();
  if (!c.at("rrt").is_null()) r.rrt = c.at("rrt").get<std::uint64_t>();
  r.suite = j.at("suite").get<std::string>();
  return r;
}

std::string SweepSummary::to_json() const {
  ojson j;
  j["loops"] = loops;
  j["groups"] = groups;
  ojson patterns = ojson::object();
  for (int p = 0; p < 8; ++p) {
    std::string key = std::string(p & 4 ? "A" : "!A") + (p & 2 ? "B" : "!B") +
                      (p & 1 ? "C" : "!C");
    patterns[key] = pattern[p];
  }
  j["patterns"] = patterns;
  j["bc_not_a"] = bc_not_a;
  j["p1_excludes_one_derived_full"] = p1_excludes_one_derived_full;
  j["p1_proper_in_coset"] = p1_proper_in_coset;
  j["suite_failures"] = suite_failures;
  return j.dump();
}

namespace {

SweepRecord analyze_for_sweep(const LoopTable& q, const SweepOptions& opts) {
  SweepRecord r;
  r.n = q.order();
  r.id = canonical_id(q);
  r.group = is_group(q);
  r.aq = associator_subloop(q).size();
  r.dq = derived_subloop(q).size();
  HPOptions hpo;
  hpo.max_states = opts.max_states;
  ElementSet p1;
  try {
    const HPReport rep = hp_report(q, hpo);
    r.A = rep.A;
    r.B = rep.B;
    r.C = rep.C;
    p1 = rep.p1;
    r.suite = "skipped";
  } catch (const Error&) {
    r.A = check_A(q).first;
    r.B = check_B_fast(q);
    r.C = check_C(q, opts.max_states).first;
    p1 = product_set(q, 1).achievable();
    r.suite = "fail:hp-report";
  }
  for (Element e : p1.elements()) r.p1.push_back(static_cast<long long>(e) + 1);
  if (opts.checks.counts) {
    SearchOptions so;
    so.max_states = opts.max_states;
    try {
      r.transversals = count_selections(q, SelectionKind::transversal(), so);
    } catch (const Error&) {
    }
    try {
      r.rrt = count_selections(q, SelectionKind::regular_row_k_plex(1), so);
    } catch (const Error&) {
    }
  }
  if (opts.checks.suite && r.suite == "skipped") {
    VerifyOptions vo;
    vo.hp = hpo;
    r.suite = "pass";
    for (const auto& claim : verify_theorems(q, vo))
      if (!claim.passed) {
        r.suite = "fail:" + claim.id;
        break;
      }
  }
  return r;
}

}  // namespace

std::vector<SweepRecord> run_sweep(std::size_t min_order, std::size_t max_order,
                                   const SweepOptions& opts, SweepSummary* summary) {
  std::vector<LoopTable> loops;
  for (std::size_t n = min_order; n <= max_order; ++n) {
    auto batch = enumerate_loops(n, true, opts.max_order);
    loops.insert(loops.end(), batch.begin(), batch.end());
  }
  std::vector<SweepRecord> records(loops.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < loops.size(); i = next++) {
      try {
        records[i] = analyze_for_sweep(loops[i], opts);
      } catch (const std::exception& e) {
        records[i].n = loops[i].order();
        records[i].id = canonical_id(loops[i]);
        records[i].suite = std::string("fail:error:") + e.what();
      }
    }
  };
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return a.n != b.n ? a.n < b.n : a.id < b.id;
  });
  if (summary) {
    *summary = SweepSummary{};
    for (const auto& r : records) {
      ++summary->loops;
      if (r.group) ++summary->groups;
      ++summary->pattern[(r.A ? 4 : 0) + (r.B ? 2 : 0) + (r.C ? 1 : 0)];
      if (r.B && r.C && !r.A) ++summary->bc_not_a;
      if (r.p1.size() + 1 == r.n && r.dq == r.n) ++summary->p1_excludes_one_derived_full;
      // P(Q) lies in one coset of Q', so a smaller P(Q) misses part of it
      if (r.p1.size() < r.dq) ++summary->p1_proper_in_coset;
      if (r.suite.rfind("fail", 0) == 0) ++summary->suite_failures;
    }
  }
  return records;
}

}  // namespace loopkit
