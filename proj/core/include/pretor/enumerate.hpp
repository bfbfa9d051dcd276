#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pretor/ideal.hpp"
#include "pretor/pretorsion.hpp"

namespace pretor {

// Interval description of a theory on the chain 1 <= 2 <= ... <= n:
// positions only in the torsion class (only_torsion), in both classes
// (both), only in the torsion-free class (only_free). The classes are
// torsion = only_torsion u both and torsion_free = both u only_free.
struct ChainDatum {
  int n = 0;
  std::vector<int> only_torsion;  // ascending 1-based positions
  std::vector<int> both;
  std::vector<int> only_free;

  std::vector<int> torsion() const;
  std::vector<int> torsion_free() const;

  bool operator==(const ChainDatum&) const = default;
};

// Adjacency form: 1 in torsion, n in torsion-free, and whenever i lies in
// the torsion class and i+1 in the torsion-free class, i also lies in the
// torsion-free class or i+1 in the torsion class.
bool chain_condition_b(const ChainDatum& d);

// Gap form: no only-free position equals an only-torsion position plus one,
// the shared part is non-empty, 1 is not only-free, n is not only-torsion.
bool chain_condition_c(const ChainDatum& d);

// Every labeling of {1..n} satisfying the gap form, in ascending base-3
// label order. Scans all 3^n labelings and verifies the two forms agree on
// each; a disagreement throws internal.
std::vector<ChainDatum> chain_oracle(int n);

struct RepletePairStats {
  std::int64_t streamed = 0;  // ordered pairs of non-empty replete subs
  std::int64_t yielded = 0;   // pairs surviving empty-intersection pruning
};

// Streams every ordered pair of non-empty replete full subcategories whose
// intersection is non-empty, in ascending iso-class bitmask order (first
// component outer). Pairs with disjoint object sets are pruned before fn.
RepletePairStats for_each_replete_pair(
    const FinCategory& c,
    const std::function<void(const FullSub&, const FullSub&)>& fn);

std::vector<std::pair<FullSub, FullSub>> replete_pairs(const FinCategory& c);

struct EnumeratedTheory {
  FullSub torsion;
  FullSub torsion_free;
};

// Every candidate pair that verifies as a pretorsion theory, in stream
// order. Candidates are checked independently across worker threads and the
// results merged back in stream order.
std::vector<EnumeratedTheory> enumerate_pretorsion(const FinCategory& c);

}  // namespace pretor
