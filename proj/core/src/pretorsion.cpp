#include "pretor/pretorsion.hpp"

#include <algorithm>
#include <utility>

namespace pretor {
namespace {

constexpr std::size_t kTranscriptCap = 64;

struct SearchCtx {
  const FinCategory& c;
  const FullSub& torsion;
  const FullSub& torsion_free;
  const TrivialIdeal& ideal;
};

void note(std::vector<CandidateAttempt>* transcript, MorId eps, MorId eta,
          std::string reason) {
  if (transcript && transcript->size() < kTranscriptCap)
    transcript->push_back({eps, eta, std::move(reason)});
}

std::optional<Decomposition> try_candidate(
    const SearchCtx& s, MorId eps, MorId eta,
    std::vector<CandidateAttempt>* transcript) {
  const FinCategory& c = s.c;
  if (!s.ideal.trivial(c.compose(eta, eps))) {
    note(transcript, eps, eta, "composite-not-trivial");
    return std::nullopt;
  }
  // Prekernels are mono and precokernels are epi, so the cached flags
  // reject most candidates before the mediator scans.
  if (!c.mono(eps)) {
    note(transcript, eps, eta, "counit-not-mono");
    return std::nullopt;
  }
  if (!c.epi(eta)) {
    note(transcript, eps, eta, "unit-not-epi");
    return std::nullopt;
  }
  PreexactWitness w;
  w.f = eps;
  w.g = eta;
  w.prekernel.of = eta;
  w.prekernel.arrow = eps;
  if (auto fail = prekernel_failure(s.ideal, eps, eta, &w.prekernel.mediators)) {
    note(transcript, eps, eta,
         (fail->mediator_count == 0 ? "no-prekernel-mediator:"
                                    : "ambiguous-prekernel-mediator:") +
             c.morphism_name(fail->offender));
    return std::nullopt;
  }
  w.precokernel.of = eps;
  w.precokernel.arrow = eta;
  if (auto fail =
          precokernel_failure(s.ideal, eta, eps, &w.precokernel.mediators)) {
    note(transcript, eps, eta,
         (fail->mediator_count == 0 ? "no-precokernel-mediator:"
                                    : "ambiguous-precokernel-mediator:") +
             c.morphism_name(fail->offender));
    return std::nullopt;
  }
  return Decomposition{c.dom(eps), c.cod(eta), eps, eta, std::move(w)};
}

// Candidate order: normalized sequences first (identity legs on class
// members), then every (torsion part, counit, unit) triple in ascending id
// order. When the axioms hold, every class member admits a normalized
// sequence, so members end up fixed by their own (co)reflection.
std::optional<Decomposition> find_sequence(
    const SearchCtx& s, ObjId x, std::vector<CandidateAttempt>* transcript) {
  const FinCategory& c = s.c;
  const MorId idx = c.identity(x);
  std::vector<std::pair<std::int32_t, std::int32_t>> tried;
  auto attempt = [&](MorId eps, MorId eta) -> std::optional<Decomposition> {
    if (std::find(tried.begin(), tried.end(),
                  std::make_pair(eps.v, eta.v)) != tried.end())
      return std::nullopt;
    tried.emplace_back(eps.v, eta.v);
    return try_candidate(s, eps, eta, transcript);
  };

  if (s.torsion.contains(x) && s.torsion_free.contains(x)) {
    if (auto d = attempt(idx, idx)) return d;
  }
  if (s.torsion.contains(x)) {
    for (MorId eta : c.from(x)) {
      if (!s.torsion_free.contains(c.cod(eta))) continue;
      if (auto d = attempt(idx, eta)) return d;
    }
  }
  if (s.torsion_free.contains(x)) {
    for (ObjId t : s.torsion.objects)
      for (MorId eps : c.hom(t, x))
        if (auto d = attempt(eps, idx)) return d;
  }

  for (ObjId t : s.torsion.objects)
    for (MorId eps : c.hom(t, x))
      for (MorId eta : c.from(x)) {
        if (!s.torsion_free.contains(c.cod(eta))) continue;
        if (std::find(tried.begin(), tried.end(),
                      std::make_pair(eps.v, eta.v)) != tried.end())
          continue;
        if (auto d = try_candidate(s, eps, eta, transcript)) return d;
      }
  return std::nullopt;
}

// Every preexact sequence of x, in the same candidate order as
// find_sequence (so .front() is the canonical one).
std::vector<Decomposition> all_sequences(const SearchCtx& s, ObjId x) {
  const FinCategory& c = s.c;
  const MorId idx = c.identity(x);
  std::vector<Decomposition> found;
  std::vector<std::pair<std::int32_t, std::int32_t>> tried;
  auto attempt = [&](MorId eps, MorId eta) {
    if (std::find(tried.begin(), tried.end(),
                  std::make_pair(eps.v, eta.v)) != tried.end())
      return;
    tried.emplace_back(eps.v, eta.v);
    if (auto d = try_candidate(s, eps, eta, nullptr))
      found.push_back(std::move(*d));
  };

  if (s.torsion.contains(x) && s.torsion_free.contains(x)) attempt(idx, idx);
  if (s.torsion.contains(x))
    for (MorId eta : c.from(x))
      if (s.torsion_free.contains(c.cod(eta))) attempt(idx, eta);
  if (s.torsion_free.contains(x))
    for (ObjId t : s.torsion.objects)
      for (MorId eps : c.hom(t, x)) attempt(eps, idx);

  for (ObjId t : s.torsion.objects)
    for (MorId eps : c.hom(t, x))
      for (MorId eta : c.from(x)) {
        if (!s.torsion_free.contains(c.cod(eta))) continue;
        if (std::find(tried.begin(), tried.end(),
                      std::make_pair(eps.v, eta.v)) != tried.end())
          continue;
        if (auto d = try_candidate(s, eps, eta, nullptr))
          found.push_back(std::move(*d));
      }
  return found;
}

void require_theory_classes(const FullSub& torsion,
                            const FullSub& torsion_free) {
  if (torsion.category == nullptr ||
      torsion.category != torsion_free.category)
    throw Error(Errc::mismatched_categories,
                "torsion and torsion-free classes must live in one category");
  if (!torsion.replete())
    throw Error(Errc::precondition_failed,
                "torsion class is not closed under isomorphism");
  if (!torsion_free.replete())
    throw Error(Errc::precondition_failed,
                "torsion-free class is not closed under isomorphism");
}

}  // namespace

PretorsionCheck check_pretorsion(const FullSub& torsion,
                                 const FullSub& torsion_free) {
  require_theory_classes(torsion, torsion_free);
  const FinCategory& c = *torsion.category;
  FullSub zee = torsion.intersect(torsion_free);
  TrivialIdeal ideal(c, zee);

  PretorsionCheck out;
  for (ObjId t : torsion.objects)
    for (ObjId f : torsion_free.objects)
      for (MorId m : c.hom(t, f))
        if (!ideal.trivial(m)) {
          out.axiom1 = Axiom1Counterexample{t, f, m};
          return out;
        }

  SearchCtx ctx{c, torsion, torsion_free, ideal};
  std::vector<Decomposition> decomp;
  decomp.reserve(c.object_count());
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    std::vector<CandidateAttempt> transcript;
    auto d = find_sequence(ctx, ObjId{x}, &transcript);
    if (!d) {
      out.axiom2 = Axiom2Counterexample{ObjId{x}, std::move(transcript)};
      return out;
    }
    decomp.push_back(std::move(*d));
  }

  Synthesis syn = synthesize_functors(c, torsion, torsion_free, decomp);
  out.data = PretorsionData{&c,
                            torsion,
                            torsion_free,
                            std::move(zee),
                            std::move(ideal),
                            std::move(decomp),
                            std::move(syn.coreflector),
                            std::move(syn.reflector),
                            std::move(syn.unit),
                            std::move(syn.counit)};
  return out;
}

std::vector<Decomposition> canonical_decompositions(
    const FullSub& torsion, const FullSub& torsion_free) {
  require_theory_classes(torsion, torsion_free);
  const FinCategory& c = *torsion.category;
  TrivialIdeal ideal(c, torsion.intersect(torsion_free));
  SearchCtx ctx{c, torsion, torsion_free, ideal};
  std::vector<Decomposition> decomp;
  decomp.reserve(c.object_count());
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    std::vector<Decomposition> all = all_sequences(ctx, ObjId{x});
    if (all.empty())
      throw Error(Errc::hypothesis_not_met,
                  "no short preexact sequence for object " +
                      c.object_name(ObjId{x}));
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        link_sequences(c, all[i].witness, all[j].witness);
    decomp.push_back(std::move(all.front()));
  }
  return decomp;
}

SequenceLink link_sequences(const FinCategory& c, const PreexactWitness& a,
                            const PreexactWitness& b) {
  if (c.cod(a.f) != c.cod(b.f) || c.dom(a.g) != c.dom(b.g) ||
      c.cod(a.f) != c.dom(a.g))
    throw Error(Errc::hypothesis_not_met,
                "sequences do not share a middle object");
  SequenceLink link;
  int count = 0;
  for (MorId m : c.hom(c.dom(a.f), c.dom(b.f)))
    if (c.iso(m) && c.compose(b.f, m) == a.f) {
      link.torsion_iso = m;
      ++count;
    }
  if (count != 1)
    throw Error(Errc::mediator_not_unique,
                "found " + std::to_string(count) +
                    " isomorphisms linking the torsion ends of sequences at " +
                    c.object_name(c.cod(a.f)));
  count = 0;
  for (MorId m : c.hom(c.cod(a.g), c.cod(b.g)))
    if (c.iso(m) && c.compose(m, a.g) == b.g) {
      link.free_iso = m;
      ++count;
    }
  if (count != 1)
    throw Error(Errc::mediator_not_unique,
                "found " + std::to_string(count) +
                    " isomorphisms linking the free ends of sequences at " +
                    c.object_name(c.cod(a.f)));
  return link;
}

Synthesis synthesize_functors(const FinCategory& c, const FullSub& torsion,
                              const FullSub& torsion_free,
                              const std::vector<Decomposition>& decomp) {
  Synthesis syn;
  Functor& t = syn.coreflector;
  Functor& f = syn.reflector;
  t.source = t.target = &c;
  f.source = f.target = &c;
  t.obj_map.resize(c.object_count());
  f.obj_map.resize(c.object_count());
  t.mor_map.resize(c.morphism_count());
  f.mor_map.resize(c.morphism_count());
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    t.obj_map[x] = decomp[x].torsion_part;
    f.obj_map[x] = decomp[x].free_part;
  }

  for (std::int32_t m = 0; m < c.morphism_count(); ++m) {
    const MorId phi{m};
    const Decomposition& da = decomp[c.dom(phi).v];
    const Decomposition& db = decomp[c.cod(phi).v];

    MorId rhs = c.compose(phi, da.counit);
    MorId found;
    int count = 0;
    for (MorId u : c.hom(da.torsion_part, db.torsion_part))
      if (c.compose(db.counit, u) == rhs) {
        found = u;
        ++count;
      }
    if (count != 1)
      throw Error(Errc::mediator_not_unique,
                  "coreflector has " + std::to_string(count) +
                      " candidates on " + c.morphism_name(phi));
    t.mor_map[m] = found;

    rhs = c.compose(db.unit, phi);
    count = 0;
    for (MorId v : c.hom(da.free_part, db.free_part))
      if (c.compose(v, da.unit) == rhs) {
        found = v;
        ++count;
      }
    if (count != 1)
      throw Error(Errc::mediator_not_unique,
                  "reflector has " + std::to_string(count) +
                      " candidates on " + c.morphism_name(phi));
    f.mor_map[m] = found;
  }

  if (Report r = verify_functor(t); !r.ok())
    throw Error(Errc::internal, "coreflector law check: " + r.to_string());
  if (Report r = verify_functor(f); !r.ok())
    throw Error(Errc::internal, "reflector law check: " + r.to_string());

  syn.unit.source = identity_functor(c);
  syn.unit.target = f;
  syn.counit.source = t;
  syn.counit.target = identity_functor(c);
  syn.unit.components.resize(c.object_count());
  syn.counit.components.resize(c.object_count());
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    syn.unit.components[x] = decomp[x].unit;
    syn.counit.components[x] = decomp[x].counit;
  }
  if (Report r = verify_natural(syn.unit); !r.ok())
    throw Error(Errc::internal, "unit naturality: " + r.to_string());
  if (Report r = verify_natural(syn.counit); !r.ok())
    throw Error(Errc::internal, "counit naturality: " + r.to_string());

  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    const ObjId a{x};
    const Decomposition& d = decomp[x];
    for (ObjId fr : torsion_free.objects)
      for (MorId g : c.hom(a, fr)) {
        int count = 0;
        for (MorId u : c.hom(d.free_part, fr))
          if (c.compose(u, d.unit) == g) ++count;
        if (count != 1)
          throw Error(Errc::internal,
                      "reflection of " + c.object_name(a) + " is not " +
                          "universal at " + c.morphism_name(g));
      }
    for (ObjId to : torsion.objects)
      for (MorId g : c.hom(to, a)) {
        int count = 0;
        for (MorId u : c.hom(to, d.torsion_part))
          if (c.compose(d.counit, u) == g) ++count;
        if (count != 1)
          throw Error(Errc::internal,
                      "coreflection of " + c.object_name(a) + " is not " +
                          "universal at " + c.morphism_name(g));
      }
  }

  for (ObjId to : torsion.objects)
    if (t.obj_map[to.v] != to || decomp[to.v].counit != c.identity(to))
      throw Error(Errc::internal, "coreflection does not fix torsion object " +
                                      c.object_name(to));
  for (ObjId fr : torsion_free.objects)
    if (f.obj_map[fr.v] != fr || decomp[fr.v].unit != c.identity(fr))
      throw Error(Errc::internal, "reflection does not fix torsion-free object " +
                                      c.object_name(fr));
  return syn;
}

NatTrans comparison_transformation(const PretorsionData& data) {
  const FinCategory& c = *data.category;
  NatTrans z;
  z.source = compose_functors(data.reflector, data.coreflector);
  z.target = compose_functors(data.coreflector, data.reflector);
  z.components.resize(c.object_count());
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    const ObjId tx = data.decomp[x].torsion_part;
    const MorId lhs = data.coreflector.on(data.decomp[x].unit);
    const MorId eta_tx = data.decomp[tx.v].unit;
    const ObjId from = data.decomp[tx.v].free_part;
    const ObjId to = data.decomp[data.decomp[x].free_part.v].torsion_part;
    MorId found;
    int count = 0;
    for (MorId w : c.hom(from, to))
      if (c.compose(w, eta_tx) == lhs) {
        found = w;
        ++count;
      }
    if (count != 1)
      throw Error(Errc::internal,
                  "comparison component at " + c.object_name(ObjId{x}) +
                      " has " + std::to_string(count) + " candidates");
    if (!data.trivials.contains(from) || !data.trivials.contains(to))
      throw Error(Errc::internal,
                  "comparison component at " + c.object_name(ObjId{x}) +
                      " does not run between trivial objects");
    z.components[x] = found;
  }
  if (Report r = verify_natural(z); !r.ok())
    throw Error(Errc::internal, "comparison naturality: " + r.to_string());
  return z;
}

CharacterizeResult characterize(const PretorsionData& data,
                                CharacterizeWhich which) {
  const FinCategory& c = *data.category;
  CharacterizeResult out;
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    const ObjId a{x};
    bool in = false;
    switch (which) {
      case CharacterizeWhich::torsion:
        in = c.isomorphic(a, data.t_of(a));
        break;
      case CharacterizeWhich::torsion_free:
        in = c.isomorphic(a, data.f_of(a));
        break;
      case CharacterizeWhich::trivials:
        in = c.isomorphic(a, data.t_of(data.f_of(a)));
        break;
    }
    if (in) out.computed.push_back(a);
  }
  const FullSub& declared = which == CharacterizeWhich::torsion
                                ? data.torsion
                                : which == CharacterizeWhich::torsion_free
                                      ? data.torsion_free
                                      : data.trivials;
  out.matches_declared = out.computed == declared.objects;
  return out;
}

PerpResult perp_class(const FullSub& torsion_free, const FullSub& trivials) {
  if (torsion_free.category == nullptr ||
      torsion_free.category != trivials.category)
    throw Error(Errc::mismatched_categories,
                "classes must live in one category");
  const FinCategory& c = *torsion_free.category;
  if (!torsion_free.replete() || !trivials.replete())
    throw Error(Errc::precondition_failed,
                "classes must be closed under isomorphism");
  for (ObjId z : trivials.objects)
    if (!torsion_free.contains(z))
      throw Error(Errc::precondition_failed,
                  "trivial class must sit inside the torsion-free class");

  for (ObjId z : trivials.objects)
    for (std::int32_t x = 0; x < c.object_count(); ++x) {
      const ObjId a{x};
      if (trivials.contains(a)) continue;
      for (MorId s : c.hom(a, z))
        for (MorId r : c.hom(z, a))
          if (c.compose(r, s) == c.identity(a))
            throw Error(Errc::precondition_failed,
                        "trivial class is not closed under retracts: " +
                            c.object_name(a) + " retracts off " +
                            c.object_name(z));
    }

  TrivialIdeal ideal(c, trivials);

  // Canonical reflection per object: smallest verified (target, unit) pair.
  std::vector<ObjId> reflected(c.object_count(), ObjId{});
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    const ObjId a{x};
    for (ObjId fr : torsion_free.objects) {
      for (MorId eta : c.hom(a, fr)) {
        bool universal = true;
        for (ObjId fr2 : torsion_free.objects) {
          for (MorId g : c.hom(a, fr2)) {
            int count = 0;
            for (MorId u : c.hom(fr, fr2))
              if (c.compose(u, eta) == g) ++count;
            if (count != 1) {
              universal = false;
              break;
            }
          }
          if (!universal) break;
        }
        if (universal) {
          // Units agree up to an invertible post-factor, so epi-ness of the
          // first one found settles epireflectivity at this object.
          if (!c.epi(eta))
            throw Error(Errc::precondition_failed,
                        "torsion-free class is not epireflective: unit " +
                            c.morphism_name(eta) + " is not an epimorphism");
          reflected[x] = fr;
          break;
        }
      }
      if (reflected[x].valid()) break;
    }
    if (!reflected[x].valid())
      throw Error(Errc::precondition_failed,
                  "torsion-free class is not epireflective: no reflection "
                  "of " +
                      c.object_name(a));
  }

  PerpResult out;
  for (std::int32_t x = 0; x < c.object_count(); ++x) {
    const ObjId a{x};
    bool orthogonal = true;
    for (ObjId fr : torsion_free.objects) {
      for (MorId g : c.hom(a, fr))
        if (!ideal.trivial(g)) {
          orthogonal = false;
          break;
        }
      if (!orthogonal) break;
    }
    if (orthogonal) out.perp.push_back(a);
    if (trivials.contains(reflected[x])) out.via_reflector.push_back(a);
  }
  out.equal = out.perp == out.via_reflector;
  return out;
}

}  // namespace pretor
