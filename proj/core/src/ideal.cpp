#include "pretor/ideal.hpp"

#include <algorithm>

namespace pretor {

FullSub FullSub::of(const FinCategory& c, std::vector<ObjId> objs) {
  FullSub sub;
  sub.category = &c;
  std::sort(objs.begin(), objs.end());
  objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
  for (ObjId o : objs) {
    if (o.v < 0 || o.v >= c.object_count())
      throw Error(Errc::unknown_name, "subcategory object id out of range");
  }
  sub.objects = std::move(objs);
  sub.mask.assign(c.object_count(), 0);
  for (ObjId o : sub.objects) sub.mask[o.v] = 1;
  return sub;
}

FullSub FullSub::of_names(const FinCategory& c,
                          const std::vector<std::string>& names) {
  std::vector<ObjId> objs;
  objs.reserve(names.size());
  for (const std::string& name : names) {
    auto id = c.object_by_name(name);
    if (!id) throw Error(Errc::unknown_name, "unknown object: " + name);
    objs.push_back(*id);
  }
  return of(c, std::move(objs));
}

bool FullSub::replete() const {
  for (ObjId o : objects) {
    ObjId rep = category->iso_class(o);
    for (int a = 0; a < category->object_count(); ++a) {
      if (category->iso_class(ObjId{a}) == rep && !contains(ObjId{a}))
        return false;
    }
  }
  return true;
}

FullSub FullSub::iso_closure() const {
  std::vector<ObjId> objs = objects;
  for (int a = 0; a < category->object_count(); ++a) {
    for (ObjId o : objects) {
      if (category->isomorphic(ObjId{a}, o)) {
        objs.push_back(ObjId{a});
        break;
      }
    }
  }
  return of(*category, std::move(objs));
}

FullSub FullSub::intersect(const FullSub& other) const {
  if (category != other.category)
    throw Error(Errc::mismatched_categories,
                "intersecting subcategories of different categories");
  std::vector<ObjId> objs;
  for (ObjId o : objects)
    if (other.contains(o)) objs.push_back(o);
  return of(*category, std::move(objs));
}

std::vector<std::string> FullSub::names() const {
  std::vector<std::string> out;
  out.reserve(objects.size());
  for (ObjId o : objects) out.push_back(category->object_name(o));
  return out;
}

TrivialIdeal::TrivialIdeal(const FinCategory& c, FullSub zee)
    : cat_(&c), zee_(std::move(zee)) {
  if (zee_.category != cat_)
    throw Error(Errc::mismatched_categories,
                "trivial ideal built over the wrong category");
  const int m = c.morphism_count();
  trivial_.assign(m, 0);
  through_.assign(m, ObjId{});
  left_.assign(m, MorId{});
  right_.assign(m, MorId{});
  // zee objects ascending, then (left, right) lexicographic: the first
  // factorization seen is the canonical witness.
  for (ObjId z : zee_.objects) {
    for (int a = 0; a < c.object_count(); ++a) {
      for (MorId l : c.hom(ObjId{a}, z)) {
        for (MorId r : c.from(z)) {
          MorId composite = c.compose(r, l);
          if (!trivial_[composite.v]) {
            trivial_[composite.v] = 1;
            through_[composite.v] = z;
            left_[composite.v] = l;
            right_[composite.v] = r;
          }
        }
      }
    }
  }
}

std::optional<TrivialWitness> TrivialIdeal::witness(MorId m) const {
  if (!trivial_[m.v]) return std::nullopt;
  return TrivialWitness{m, through_[m.v], left_[m.v], right_[m.v]};
}

std::vector<TrivialWitness> trivial_hom(const FullSub& zee, ObjId a, ObjId b) {
  if (zee.empty())
    throw Error(Errc::empty_trivial_class,
                "trivial_hom needs a non-empty class of trivial objects");
  TrivialIdeal ideal(*zee.category, zee);
  std::vector<TrivialWitness> out;
  for (MorId m : zee.category->hom(a, b)) {
    if (auto w = ideal.witness(m)) out.push_back(*w);
  }
  return out;
}

std::optional<UniversalFailure> prekernel_failure(
    const TrivialIdeal& ideal, MorId eps, MorId g,
    std::vector<Mediator>* mediators) {
  const FinCategory& c = ideal.category();
  ObjId a = c.dom(g);
  ObjId x = c.dom(eps);
  // Condition (1): the composite g . eps is trivial.
  if (!ideal.trivial(c.compose(g, eps)))
    return UniversalFailure{eps, -1};
  // Condition (2): every test morphism lambda : Y -> dom(g) with g . lambda
  // trivial factors through eps exactly once.
  if (mediators) mediators->clear();
  for (int y = 0; y < c.object_count(); ++y) {
    for (MorId lambda : c.hom(ObjId{y}, a)) {
      if (!ideal.trivial(c.compose(g, lambda))) continue;
      int count = 0;
      MorId found{};
      for (MorId cand : c.hom(ObjId{y}, x)) {
        if (c.compose(eps, cand) == lambda) {
          ++count;
          found = cand;
          if (count > 1) break;
        }
      }
      if (count != 1) return UniversalFailure{lambda, count};
      if (mediators) mediators->push_back(Mediator{lambda, found});
    }
  }
  return std::nullopt;
}

std::optional<UniversalFailure> precokernel_failure(
    const TrivialIdeal& ideal, MorId eta, MorId f,
    std::vector<Mediator>* mediators) {
  const FinCategory& c = ideal.category();
  ObjId b = c.cod(f);
  ObjId x = c.cod(eta);
  if (!ideal.trivial(c.compose(eta, f)))
    return UniversalFailure{eta, -1};
  if (mediators) mediators->clear();
  for (int y = 0; y < c.object_count(); ++y) {
    for (MorId mu : c.hom(b, ObjId{y})) {
      if (!ideal.trivial(c.compose(mu, f))) continue;
      int count = 0;
      MorId found{};
      for (MorId cand : c.hom(x, ObjId{y})) {
        if (c.compose(cand, eta) == mu) {
          ++count;
          found = cand;
          if (count > 1) break;
        }
      }
      if (count != 1) return UniversalFailure{mu, count};
      if (mediators) mediators->push_back(Mediator{mu, found});
    }
  }
  return std::nullopt;
}

namespace {

// Any two prekernels of the same morphism must be linked by exactly one
// compatible isomorphism; prekernel arrows must be mono (dually for
// precokernels). Violations would contradict verified universality, so they
// are internal errors, not user-facing reports.
void check_prekernel_family(const FinCategory& c,
                            const std::vector<PrekernelCert>& certs) {
  for (const PrekernelCert& cert : certs) {
    if (!c.mono(cert.arrow))
      throw Error(Errc::internal, "prekernel arrow failed the mono check: " +
                                      c.morphism_name(cert.arrow));
  }
  for (std::size_t i = 0; i < certs.size(); ++i) {
    for (std::size_t j = 0; j < certs.size(); ++j) {
      if (i == j) continue;
      MorId e1 = certs[i].arrow, e2 = certs[j].arrow;
      int links = 0;
      for (MorId t : c.hom(c.dom(e1), c.dom(e2))) {
        if (c.iso(t) && c.compose(e2, t) == e1) ++links;
      }
      if (links != 1)
        throw Error(Errc::internal,
                    "prekernels not linked by a unique isomorphism");
    }
  }
}

void check_precokernel_family(const FinCategory& c,
                              const std::vector<PrecokernelCert>& certs) {
  for (const PrecokernelCert& cert : certs) {
    if (!c.epi(cert.arrow))
      throw Error(Errc::internal, "precokernel arrow failed the epi check: " +
                                      c.morphism_name(cert.arrow));
  }
  for (std::size_t i = 0; i < certs.size(); ++i) {
    for (std::size_t j = 0; j < certs.size(); ++j) {
      if (i == j) continue;
      MorId p1 = certs[i].arrow, p2 = certs[j].arrow;
      int links = 0;
      for (MorId t : c.hom(c.cod(p1), c.cod(p2))) {
        if (c.iso(t) && c.compose(t, p1) == p2) ++links;
      }
      if (links != 1)
        throw Error(Errc::internal,
                    "precokernels not linked by a unique isomorphism");
    }
  }
}

}  // namespace

std::vector<PrekernelCert> prekernels(const TrivialIdeal& ideal, MorId g) {
  const FinCategory& c = ideal.category();
  ObjId a = c.dom(g);
  std::vector<PrekernelCert> certs;
  for (int x = 0; x < c.object_count(); ++x) {
    for (MorId eps : c.hom(ObjId{x}, a)) {
      if (!ideal.trivial(c.compose(g, eps))) continue;
      std::vector<Mediator> mediators;
      if (!prekernel_failure(ideal, eps, g, &mediators))
        certs.push_back(PrekernelCert{g, eps, std::move(mediators)});
    }
  }
  check_prekernel_family(c, certs);
  return certs;
}

std::vector<PrecokernelCert> precokernels(const TrivialIdeal& ideal, MorId f) {
  const FinCategory& c = ideal.category();
  ObjId b = c.cod(f);
  std::vector<PrecokernelCert> certs;
  for (MorId eta : c.from(b)) {
    if (!ideal.trivial(c.compose(eta, f))) continue;
    std::vector<Mediator> mediators;
    if (!precokernel_failure(ideal, eta, f, &mediators))
      certs.push_back(PrecokernelCert{f, eta, std::move(mediators)});
  }
  check_precokernel_family(c, certs);
  return certs;
}

std::vector<PrekernelCert> prekernels(const FullSub& zee, MorId g) {
  if (zee.empty())
    throw Error(Errc::empty_trivial_class,
                "prekernels need a non-empty class of trivial objects");
  return prekernels(TrivialIdeal(*zee.category, zee), g);
}

std::vector<PrecokernelCert> precokernels(const FullSub& zee, MorId f) {
  if (zee.empty())
    throw Error(Errc::empty_trivial_class,
                "precokernels need a non-empty class of trivial objects");
  return precokernels(TrivialIdeal(*zee.category, zee), f);
}

std::optional<PreexactWitness> is_preexact(const TrivialIdeal& ideal, MorId f,
                                           MorId g) {
  const FinCategory& c = ideal.category();
  if (c.cod(f) != c.dom(g))
    throw Error(Errc::not_composable, "is_preexact needs cod(f) == dom(g)");
  PreexactWitness w;
  w.f = f;
  w.g = g;
  w.prekernel.of = g;
  w.prekernel.arrow = f;
  if (prekernel_failure(ideal, f, g, &w.prekernel.mediators))
    return std::nullopt;
  w.precokernel.of = f;
  w.precokernel.arrow = g;
  if (precokernel_failure(ideal, g, f, &w.precokernel.mediators))
    return std::nullopt;
  return w;
}

std::optional<PreexactWitness> is_preexact(const FullSub& zee, MorId f,
                                           MorId g) {
  if (zee.empty())
    throw Error(Errc::empty_trivial_class,
                "is_preexact needs a non-empty class of trivial objects");
  return is_preexact(TrivialIdeal(*zee.category, zee), f, g);
}

PreexactWitness transport_preexact(const FullSub& zee, const PreexactWitness& w,
                                   MorId alpha, MorId beta) {
  const FinCategory& c = *zee.category;
  if (!c.iso(alpha))
    throw Error(Errc::not_iso, "transport needs alpha iso: " +
                                   c.morphism_name(alpha));
  if (!c.iso(beta))
    throw Error(Errc::not_iso, "transport needs beta iso: " +
                                   c.morphism_name(beta));
  if (c.cod(alpha) != c.dom(w.f))
    throw Error(Errc::not_composable, "alpha must end where f starts");
  if (c.dom(beta) != c.cod(w.g))
    throw Error(Errc::not_composable, "beta must start where g ends");
  MorId f2 = c.compose(w.f, alpha);
  MorId g2 = c.compose(beta, w.g);
  auto transported = is_preexact(zee, f2, g2);
  if (!transported)
    throw Error(Errc::internal,
                "transport along isomorphisms lost preexactness");
  return *transported;
}

TrivialIffIso trivial_iff_iso(const FullSub& zee, MorId f, MorId g) {
  const FinCategory& c = *zee.category;
  if (c.cod(f) != c.dom(g))
    throw Error(Errc::not_composable, "trivial_iff_iso needs cod(f) == dom(g)");
  TrivialIdeal ideal(c, zee);
  TrivialIffIso out;
  out.precokernel_case = !precokernel_failure(ideal, g, f).has_value();
  out.prekernel_case = !prekernel_failure(ideal, f, g).has_value();
  if (!out.precokernel_case && !out.prekernel_case)
    throw Error(Errc::hypothesis_not_met,
                "neither prekernel nor precokernel position holds for (f, g)");
  out.f_trivial = ideal.trivial(f);
  out.g_trivial = ideal.trivial(g);
  out.f_iso = c.iso(f);
  out.g_iso = c.iso(g);
  if (out.precokernel_case && out.f_trivial != out.g_iso) out.consistent = false;
  if (out.prekernel_case && out.g_trivial != out.f_iso) out.consistent = false;
  return out;
}

std::optional<PreexactWitness> cokernel_of_its_kernel(
    const FullSub& zee, MorId p, std::optional<MorId> q) {
  const FinCategory& c = *zee.category;
  TrivialIdeal ideal(c, zee);
  std::optional<MorId> witness_q;
  if (q) {
    if (c.cod(*q) != c.dom(p))
      throw Error(Errc::not_composable, "q must end where p starts");
    if (!precokernel_failure(ideal, p, *q))
      witness_q = q;
  } else {
    ObjId a = c.dom(p);
    for (int y = 0; y < c.object_count() && !witness_q; ++y) {
      for (MorId cand : c.hom(ObjId{y}, a)) {
        if (!ideal.trivial(c.compose(p, cand))) continue;
        if (!precokernel_failure(ideal, p, cand)) {
          witness_q = cand;
          break;
        }
      }
    }
  }
  if (!witness_q)
    throw Error(Errc::hypothesis_not_met,
                "p is not a precokernel of any morphism");
  auto kernels = prekernels(ideal, p);
  if (kernels.empty()) return std::nullopt;
  auto w = is_preexact(ideal, kernels.front().arrow, p);
  if (!w)
    throw Error(Errc::internal,
                "a precokernel with a prekernel must form a preexact pair");
  return w;
}

}  // namespace pretor
