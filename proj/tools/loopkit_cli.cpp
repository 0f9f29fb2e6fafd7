// loopkit: command-line front end for the loop analysis library.
//
// Exit codes: 0 ok, 1 not found, 2 bad input, 3 budget exceeded,
// 4 a theorem check failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopkit/algebra.hpp"
#include "loopkit/catalog.hpp"
#include "loopkit/error.hpp"
#include "loopkit/hp.hpp"
#include "loopkit/isomorphism.hpp"
#include "loopkit/plex.hpp"
#include "loopkit/products.hpp"

using namespace loopkit;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kNotFound = 1, kBadInput = 2, kBudget = 3, kTheoremFailure = 4 };

struct Source {
  std::string builtin;
  std::string input;
};

struct Budget {
  std::uint64_t max_states = kDefaultMaxStates;
  std::size_t max_order = kMaxEnumerationOrder;
  unsigned workers = 1;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* b = cmd->add_option("--builtin", src.builtin,
                            "built-in table, e.g. fig1, cyclic(4), product(klein4,cyclic(2))");
  auto* i = cmd->add_option("-i,--input", src.input, "table file, or - for standard input");
  b->excludes(i);
}

void add_budget(CLI::App* cmd, Budget& budget) {
  cmd->add_option("--max-states", budget.max_states, "state budget for DP and search")
      ->capture_default_str();
  cmd->add_option("--workers", budget.workers, "worker threads")->capture_default_str();
}

LoopTable load(const Source& src) {
  if (!src.builtin.empty()) return builtin(src.builtin);
  if (src.input.empty())
    throw Error(Errc::invalid_argument, "one of --builtin or --input is required");
  std::string text;
  if (src.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(src.input);
    if (!in) throw Error(Errc::invalid_argument, "cannot read " + src.input);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_table(text);
}

std::vector<long long> one_based(const ElementSet& s) {
  std::vector<long long> out;
  for (Element e : s.elements()) out.push_back(static_cast<long long>(e) + 1);
  return out;
}

json cells_json(const CellSelection& c) {
  json out = json::array();
  for (const Cell& cell : c.cells())
    out.push_back({cell.row + 1, cell.col + 1, cell.entry + 1});
  return out;
}

std::optional<SelectionKind> parse_kind(const std::string& kind, std::uint32_t k) {
  if (kind == "transversal") return SelectionKind::transversal();
  if (kind == "kplex") return SelectionKind::k_plex(k);
  if (kind == "rowkplex") return SelectionKind::row_k_plex(k);
  if (kind == "rrkplex") return SelectionKind::regular_row_k_plex(k);
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct AnalyzeConfig {
  Source src;
  Budget budget;
  bool json = false;
  std::vector<std::string> count;
};

int run_analyze(const AnalyzeConfig& cfg) {
  const LoopTable q = load(cfg.src);
  HPOptions hpo;
  hpo.max_states = cfg.budget.max_states;
  hpo.search.max_states = cfg.budget.max_states;
  hpo.search.workers = cfg.budget.workers;
  const HPReport rep = hp_report(q, hpo);

  std::vector<ElementSet> chain;
  try {
    chain = full_product_chain(q, 2, cfg.budget.max_states);
  } catch (const Error& e) {
    if (e.code() != Errc::budget_exceeded) throw;
  }
  const CosetProfile profile = coset_profile(q, rep.p1);
  std::optional<bool> two_plex;
  try {
    two_plex = find_selection(q, SelectionKind::k_plex(2), hpo.search).has_value();
  } catch (const Error& e) {
    if (e.code() != Errc::budget_exceeded) throw;
  }

  bool want_t = false, want_rrt = false;
  for (const auto& c : cfg.count) {
    if (c == "transversal" || c == "all") want_t = true;
    if (c == "rrt" || c == "all") want_rrt = true;
  }
  SearchOptions so = hpo.search;
  std::optional<std::uint64_t> n_t, n_rrt;
  if (want_t) n_t = count_selections(q, SelectionKind::transversal(), so);
  if (want_rrt) n_rrt = count_selections(q, SelectionKind::regular_row_k_plex(1), so);

  if (cfg.json) {
    json j;
    j["id"] = rep.id;
    j["n"] = rep.order;
    j["group"] = rep.is_group;
    j["associator"] = one_based(rep.associator);
    j["derived"] = one_based(rep.derived);
    j["p1"] = one_based(rep.p1);
    j["p2"] = chain.size() == 2 ? json(one_based(chain[1])) : json(nullptr);
    j["cond"] = {{"A", rep.A}, {"B", rep.B}, {"C", rep.C}};
    j["bc_not_a"] = rep.bc_not_a;
    j["two_plex"] = two_plex ? json(*two_plex) : json(nullptr);
    json w;
    w["transversal"] = rep.transversal ? cells_json(*rep.transversal) : json(nullptr);
    w["b"] = rep.b_witness ? json(one_based(*rep.b_witness)) : json(nullptr);
    w["c"] = rep.c_witness ? json{{"element", rep.c_witness->element + 1},
                                  {"expression", rep.c_witness->expression.to_string()}}
                           : json(nullptr);
    j["witnesses"] = w;
    json cp;
    cp["derived_coset"] = one_based(profile.derived_coset);
    cp["associator_cosets_inside"] = profile.associator_cosets_inside.size();
    cp["associator_cosets_hit"] = profile.associator_cosets_hit.size();
    cp["all_hit"] = profile.all_hit;
    j["coset_profile"] = cp;
    json counts = json::object();
    if (want_t) counts["transversal"] = *n_t;
    if (want_rrt) counts["rrt"] = *n_rrt;
    j["counts"] = counts;
    std::cout << j.dump() << '\n';
    return kOk;
  }

  std::cout << "id         " << rep.id << '\n'
            << "order      " << rep.order << (rep.is_group ? " (group)" : "") << '\n'
            << "A(Q)       " << rep.associator.to_string() << '\n'
            << "Q'         " << rep.derived.to_string() << '\n'
            << "P^1        " << rep.p1.to_string() << '\n';
  if (chain.size() == 2) std::cout << "P^2        " << chain[1].to_string() << '\n';
  std::cout << "Q' coset   " << profile.derived_coset.to_string() << ", "
            << profile.associator_cosets_hit.size() << " of "
            << profile.associator_cosets_inside.size() << " A(Q)-cosets hit\n";
  std::cout << "(A)        " << (rep.A ? "yes" : "no");
  if (rep.transversal) std::cout << "  " << rep.transversal->to_string();
  std::cout << "\n(B)        " << (rep.B ? "yes" : "no");
  if (rep.b_witness) std::cout << "  odd normal subloop " << rep.b_witness->to_string();
  std::cout << "\n(C)        " << (rep.C ? "yes" : "no");
  if (rep.c_witness)
    std::cout << "  " << rep.c_witness->element + 1 << " = "
              << rep.c_witness->expression.to_string();
  std::cout << "\n2-plex     " << (two_plex ? (*two_plex ? "yes" : "no") : "over budget")
            << '\n';
  if (rep.bc_not_a) std::cout << "note       (B) and (C) hold without a transversal\n";
  if (n_t) std::cout << "transversals " << *n_t << '\n';
  if (n_rrt) std::cout << "regular row transversals " << *n_rrt << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SearchConfig {
  Source src;
  Budget budget;
  std::string kind = "transversal";
  std::uint32_t k = 1;
  std::string mode = "find";
  bool json = false;
};

int run_search(const SearchConfig& cfg) {
  const LoopTable q = load(cfg.src);
  const auto kind = parse_kind(cfg.kind, cfg.k);
  if (!kind) throw Error(Errc::invalid_argument, "unknown kind " + cfg.kind);
  SearchOptions so;
  so.max_states = cfg.budget.max_states;
  so.workers = cfg.budget.workers;
  if (cfg.mode == "count") {
    const auto n = count_selections(q, *kind, so);
    if (cfg.json)
      std::cout << json{{"kind", kind->name()}, {"count", n}}.dump() << '\n';
    else
      std::cout << n << '\n';
    return kOk;
  }
  const auto found = find_selection(q, *kind, so);
  if (cfg.json) {
    std::cout << json{{"kind", kind->name()},
                      {"selection", found ? cells_json(*found) : json(nullptr)}}
                     .dump()
              << '\n';
  } else {
    std::cout << (found ? found->to_string() : "none") << '\n';
  }
  return found ? kOk : kNotFound;
}

// ---------------------------------------------------------------------------

struct ConstructConfig {
  Source src;
  Budget budget;
  std::vector<long long> ordering;
  bool automatic = false;
  bool partition = false;
  bool json = false;
};

int run_construct(const ConstructConfig& cfg) {
  const LoopTable g = load(cfg.src);
  if (!is_group(g)) throw Error(Errc::not_a_group, "construct needs a group table");
  std::vector<Element> ordering;
  if (cfg.automatic) {
    ProductOptions po;
    po.witnesses = true;
    po.max_states = cfg.budget.max_states;
    const auto expr = product_set(g, 1, po).witness(0);
    if (!expr) {
      std::cerr << "no ordering of the elements has product 1\n";
      if (!cfg.json) std::cout << "none\n";
      else std::cout << json{{"transversal", nullptr}}.dump() << '\n';
      return kNotFound;
    }
    ordering = expr->leaf_sequence();
  } else {
    if (cfg.ordering.empty())
      throw Error(Errc::invalid_argument, "give --ordering or --auto");
    for (long long v : cfg.ordering) {
      if (v < 1 || v > static_cast<long long>(g.order()))
        throw Error(Errc::invalid_argument, "ordering symbol out of range");
      ordering.push_back(static_cast<Element>(v - 1));
    }
  }
  const CellSelection t = transversal_from_full_product(g, ordering);
  std::vector<CellSelection> parts;
  if (cfg.partition) parts = translate_partition(g, t);

  if (cfg.json) {
    json j;
    std::vector<long long> ord;
    for (Element e : ordering) ord.push_back(static_cast<long long>(e) + 1);
    j["ordering"] = ord;
    j["transversal"] = cells_json(t);
    if (cfg.partition) {
      json p = json::array();
      for (const auto& c : parts) p.push_back(cells_json(c));
      j["partition"] = p;
    }
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << "ordering   ";
  for (std::size_t i = 0; i < ordering.size(); ++i)
    std::cout << (i ? " " : "") << ordering[i] + 1;
  std::cout << "\ntransversal " << t.to_string() << '\n';
  for (std::size_t i = 0; i < parts.size(); ++i)
    std::cout << "part " << i + 1 << "     " << parts[i].to_string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SweepConfig {
  Budget budget;
  std::size_t order = 0;
  std::size_t min_order = 0;
  std::string checks = "none";
};

int run_sweep_cmd(const SweepConfig& cfg) {
  SweepOptions opts;
  opts.workers = cfg.budget.workers;
  opts.max_states = cfg.budget.max_states;
  opts.max_order = cfg.budget.max_order;
  if (cfg.checks == "counts" || cfg.checks == "all") opts.checks.counts = true;
  if (cfg.checks == "suite" || cfg.checks == "all") opts.checks.suite = true;
  const std::size_t lo = cfg.min_order ? cfg.min_order : cfg.order;
  SweepSummary summary;
  for (const auto& r : run_sweep(lo, cfg.order, opts, &summary))
    std::cout << r.to_json() << '\n';
  std::cerr << summary.to_json() << '\n';
  return summary.suite_failures ? kTheoremFailure : kOk;
}

// ---------------------------------------------------------------------------

struct VerifyConfig {
  Source src;
  Budget budget;
  std::uint32_t max_k = 3;
  bool json = false;
};

int run_verify(const VerifyConfig& cfg) {
  const LoopTable q = load(cfg.src);
  VerifyOptions vo;
  vo.max_k = cfg.max_k;
  vo.hp.max_states = cfg.budget.max_states;
  vo.hp.search.max_states = cfg.budget.max_states;
  vo.hp.search.workers = cfg.budget.workers;
  const auto claims = verify_theorems(q, vo);
  bool ok = true;
  json arr = json::array();
  for (const auto& c : claims) {
    ok = ok && c.passed;
    if (cfg.json)
      arr.push_back({{"claim", c.id}, {"pass", c.passed}, {"details", c.details}});
    else
      std::cout << (c.passed ? "pass " : "FAIL ") << c.id
                << (c.details.empty() ? "" : "  " + c.details) << '\n';
  }
  if (cfg.json) std::cout << arr.dump() << '\n';
  return ok ? kOk : kTheoremFailure;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::budget_exceeded:
      return kBudget;
    case Errc::inconsistency_detected:
      return kTheoremFailure;
    default:
      return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze finite loops given as Cayley tables"};
  app.require_subcommand(1);

  AnalyzeConfig analyze;
  auto* a = app.add_subcommand("analyze", "conditions, subloops and product sets");
  add_source(a, analyze.src);
  add_budget(a, analyze.budget);
  a->add_flag("--json", analyze.json, "one JSON object on stdout");
  a->add_option("--count", analyze.count, "also count: transversal, rrt, all")
      ->check(CLI::IsMember({"transversal", "rrt", "all"}));

  SearchConfig search;
  auto* s = app.add_subcommand("search", "find or count selections of cells");
  add_source(s, search.src);
  add_budget(s, search.budget);
  s->add_option("--kind", search.kind)
      ->check(CLI::IsMember({"transversal", "kplex", "rowkplex", "rrkplex"}))
      ->capture_default_str();
  s->add_option("--k", search.k)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--mode", search.mode)
      ->check(CLI::IsMember({"find", "count"}))
      ->capture_default_str();
  s->add_flag("--json", search.json);

  ConstructConfig construct;
  auto* c = app.add_subcommand("construct",
                               "regular row transversal of a group from an ordering with product 1");
  add_source(c, construct.src);
  add_budget(c, construct.budget);
  auto* ord = c->add_option("--ordering", construct.ordering,
                            "every element once, 1-based, comma or space separated")
                  ->delimiter(',');
  auto* au = c->add_flag("--auto", construct.automatic, "take the ordering from a product witness");
  ord->excludes(au);
  c->add_flag("--partition", construct.partition, "also print the n translates");
  c->add_flag("--json", construct.json);

  SweepConfig sweep;
  auto* w = app.add_subcommand("sweep", "JSON lines, one per loop up to isomorphism");
  w->add_option("--order", sweep.order, "largest order")->required();
  w->add_option("--min-order", sweep.min_order, "smallest order (default: --order)");
  w->add_option("--checks", sweep.checks)
      ->check(CLI::IsMember({"none", "counts", "suite", "all"}))
      ->capture_default_str();
  add_budget(w, sweep.budget);
  w->add_option("--max-order", sweep.budget.max_order, "enumeration limit")
      ->capture_default_str();

  VerifyConfig verify;
  auto* v = app.add_subcommand("verify", "run the theorem checks on one loop");
  add_source(v, verify.src);
  add_budget(v, verify.budget);
  v->add_option("--max-k", verify.max_k)->check(CLI::PositiveNumber)->capture_default_str();
  v->add_flag("--json", verify.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*a) return run_analyze(analyze);
    if (*s) return run_search(search);
    if (*c) return run_construct(construct);
    if (*w) return run_sweep_cmd(sweep);
    if (*v) return run_verify(verify);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kBadInput;
}
