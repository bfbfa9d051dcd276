#include "pretor/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>

#include "pretor/parallel.hpp"

namespace pretor {
namespace {

enum Label : int { kOnlyTorsion = 0, kBoth = 1, kOnlyFree = 2 };

// 1-based labels, or nullopt when the three sets fail to partition {1..n}.
std::optional<std::vector<int>> labels_of(const ChainDatum& d) {
  if (d.n < 1) return std::nullopt;
  std::vector<int> label(static_cast<std::size_t>(d.n) + 1, -1);
  auto place = [&label, &d](const std::vector<int>& part, int value) {
    for (int p : part) {
      if (p < 1 || p > d.n || label[p] != -1) return false;
      label[p] = value;
    }
    return true;
  };
  if (!place(d.only_torsion, kOnlyTorsion) || !place(d.both, kBoth) ||
      !place(d.only_free, kOnlyFree))
    return std::nullopt;
  for (int p = 1; p <= d.n; ++p)
    if (label[p] == -1) return std::nullopt;
  return label;
}

ChainDatum datum_from_labels(int n, const std::vector<int>& label) {
  ChainDatum d;
  d.n = n;
  for (int p = 1; p <= n; ++p) {
    if (label[p] == kOnlyTorsion)
      d.only_torsion.push_back(p);
    else if (label[p] == kBoth)
      d.both.push_back(p);
    else
      d.only_free.push_back(p);
  }
  return d;
}

std::vector<ObjId> class_reps(const FinCategory& c) {
  std::vector<ObjId> reps;
  for (int a = 0; a < c.object_count(); ++a)
    if (c.iso_class(ObjId{a}) == ObjId{a}) reps.push_back(ObjId{a});
  return reps;
}

FullSub sub_from_mask(const FinCategory& c, const std::vector<ObjId>& reps,
                      std::uint64_t mask) {
  std::vector<ObjId> objs;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    for (int a = 0; a < c.object_count(); ++a)
      if (c.iso_class(ObjId{a}) == reps[i]) objs.push_back(ObjId{a});
  }
  return FullSub::of(c, std::move(objs));
}

}  // namespace

std::vector<int> ChainDatum::torsion() const {
  std::vector<int> out = only_torsion;
  out.insert(out.end(), both.begin(), both.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ChainDatum::torsion_free() const {
  std::vector<int> out = both;
  out.insert(out.end(), only_free.begin(), only_free.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool chain_condition_b(const ChainDatum& d) {
  auto label = labels_of(d);
  if (!label) return false;
  const std::vector<int>& l = *label;
  if (l[1] == kOnlyFree) return false;   // 1 must lie in the torsion class
  if (l[d.n] == kOnlyTorsion) return false;  // n must lie in torsion-free
  for (int i = 1; i < d.n; ++i)
    if (l[i] == kOnlyTorsion && l[i + 1] == kOnlyFree) return false;
  return true;
}

bool chain_condition_c(const ChainDatum& d) {
  auto label = labels_of(d);
  if (!label) return false;
  const std::vector<int>& l = *label;
  if (d.both.empty()) return false;
  if (l[1] == kOnlyFree) return false;
  if (l[d.n] == kOnlyTorsion) return false;
  for (int p : d.only_free)
    if (p > 1 && l[p - 1] == kOnlyTorsion) return false;
  return true;
}

std::vector<ChainDatum> chain_oracle(int n) {
  if (n < 1) throw Error(Errc::precondition_failed, "chain length must be >= 1");
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<ChainDatum> out;
  std::vector<int> label(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    for (int p = 1; p <= n; ++p) {
      label[p] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    ChainDatum d = datum_from_labels(n, label);
    const bool b = chain_condition_b(d);
    const bool c = chain_condition_c(d);
    if (b != c)
      throw Error(Errc::internal,
                  "adjacency and gap forms disagree on a labeling of length " +
                      std::to_string(n));
    if (c) out.push_back(std::move(d));
  }
  return out;
}

RepletePairStats for_each_replete_pair(
    const FinCategory& c,
    const std::function<void(const FullSub&, const FullSub&)>& fn) {
  const std::vector<ObjId> reps = class_reps(c);
  const std::size_t k = reps.size();
  RepletePairStats stats;
  if (k == 0) return stats;
  const std::uint64_t top = std::uint64_t{1} << k;
  for (std::uint64_t tm = 1; tm < top; ++tm) {
    const FullSub torsion = sub_from_mask(c, reps, tm);
    for (std::uint64_t fm = 1; fm < top; ++fm) {
      ++stats.streamed;
      if ((tm & fm) == 0) continue;
      ++stats.yielded;
      fn(torsion, sub_from_mask(c, reps, fm));
    }
  }
  return stats;
}

std::vector<std::pair<FullSub, FullSub>> replete_pairs(const FinCategory& c) {
  std::vector<std::pair<FullSub, FullSub>> out;
  for_each_replete_pair(c, [&out](const FullSub& t, const FullSub& f) {
    out.emplace_back(t, f);
  });
  return out;
}

std::vector<EnumeratedTheory> enumerate_pretorsion(const FinCategory& c) {
  const std::vector<ObjId> reps = class_reps(c);
  const std::size_t k = reps.size();
  if (k == 0) return {};
  const std::uint64_t top = std::uint64_t{1} << k;

  std::vector<std::vector<EnumeratedTheory>> found;
  std::mutex mu;
  auto work = [&](int chunk, std::int64_t begin, std::int64_t end) {
    std::vector<EnumeratedTheory> local;
    for (std::int64_t off = begin; off < end; ++off) {
      const std::uint64_t tm = static_cast<std::uint64_t>(off) + 1;
      const FullSub torsion = sub_from_mask(c, reps, tm);
      for (std::uint64_t fm = 1; fm < top; ++fm) {
        if ((tm & fm) == 0) continue;
        FullSub torsion_free = sub_from_mask(c, reps, fm);
        if (check_pretorsion(torsion, torsion_free).valid())
          local.push_back({torsion, std::move(torsion_free)});
      }
    }
    std::scoped_lock lock(mu);
    if (static_cast<int>(found.size()) <= chunk) found.resize(chunk + 1);
    found[chunk] = std::move(local);
  };
  const int chunks =
      parallel_chunks(static_cast<std::int64_t>(top) - 1, work);

  std::vector<EnumeratedTheory> out;
  for (int i = 0; i < chunks && i < static_cast<int>(found.size()); ++i)
    for (EnumeratedTheory& t : found[i]) out.push_back(std::move(t));
  return out;
}

}  // namespace pretor
