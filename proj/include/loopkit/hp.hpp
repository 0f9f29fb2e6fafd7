#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopkit/element_set.hpp"
#include "loopkit/loop_table.hpp"
#include "loopkit/plex.hpp"
#include "loopkit/products.hpp"

namespace loopkit {

struct HPOptions {
  /// Largest order for which normal subloops are enumerated.
  std::size_t max_normal_enum_order = 12;
  /// Largest group order accepted by sylow2_status.
  std::size_t max_sylow_order = 24;
  SearchOptions search;
  std::uint64_t max_states = kDefaultMaxStates;
};

std::pair<bool, std::optional<CellSelection>> check_A(
    const LoopTable& q, const SearchOptions& opts = {});

/// Fast decision of (B) through the abelian group Q/Q'.
bool check_B_fast(const LoopTable& q);

/// A normal subloop N with |N| odd and Q/N cyclic of order 2^m, m >= 1,
/// built from Q' and the odd part of Q/Q'; nullopt when (B) holds.
std::optional<ElementSet> check_B_witness(const LoopTable& q);

/// Every normal subloop, sorted by (size, mask). Throws
/// Errc::budget_exceeded above opts.max_normal_enum_order.
std::vector<ElementSet> enumerate_normal_subloops(const LoopTable& q,
                                                  const HPOptions& opts = {});

/// |N| odd, and Q/N is a cyclic group of order 2^m with m >= 1.
bool has_cyclic_two_power_quotient(const LoopTable& q, const ElementSet& n);

/// Decides (B) by enumerating normal subloops.
bool check_B_oracle(const LoopTable& q, const HPOptions& opts = {});

struct CWitness {
  Element element = 0;
  Expression expression;
};

std::pair<bool, std::optional<CWitness>> check_C(
    const LoopTable& q, std::uint64_t max_states = kDefaultMaxStates);

enum class Sylow2 { trivial, cyclic, noncyclic };
const char* to_string(Sylow2 s);

/// A Sylow 2-subgroup of a group, grown greedily one 2-element at a time.
/// Throws Errc::not_a_group, Errc::budget_exceeded.
ElementSet sylow2_subgroup(const LoopTable& g, const HPOptions& opts = {});
Sylow2 sylow2_status(const LoopTable& g, const HPOptions& opts = {});

struct HPReport {
  std::string id;
  std::size_t order = 0;
  bool is_group = false;
  bool A = false;
  bool B = false;
  bool C = false;
  std::optional<bool> B_oracle;
  std::optional<CellSelection> transversal;
  std::optional<ElementSet> b_witness;
  std::optional<CWitness> c_witness;
  ElementSet associator;
  ElementSet derived;
  ElementSet p1;
  /// B and C hold but A does not.
  bool bc_not_a = false;
};

/// Runs all three deciders and witnesses. Throws
/// Errc::inconsistency_detected if B <=> C or A => C fails, if the fast and
/// oracle deciders for B disagree, or if a witness does not re-validate.
HPReport hp_report(const LoopTable& q, const HPOptions& opts = {});

struct ClaimResult {
  std::string id;
  bool passed = true;
  std::string details;
};

struct VerifyOptions {
  /// Largest k for P^k-based claims and regular row k-plex claims.
  std::uint32_t max_k = 3;
  /// Max word length for the induced-translation claims.
  std::size_t max_word_length = 6;
  HPOptions hp;
};

/// Runs every theorem and lemma check applicable to `q`. Failures are
/// returned as data; claim ids are stable.
std::vector<ClaimResult> verify_theorems(const LoopTable& q,
                                         const VerifyOptions& opts = {});

}  // namespace loopkit
