#pragma once
// Randomized property checks shared by the unit tests and the acceptance run.
// Each check draws one instance and returns false on a counterexample.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "msum/corpus.hpp"
#include "msum/frames.hpp"
#include "msum/reductions.hpp"
#include "msum/semantics.hpp"
#include "support.hpp"

namespace props {

using namespace msum;

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Model random_model(std::mt19937_64& rng, std::size_t n, unsigned alphabet, unsigned vars) {
  return ref::to_model(ref::random_kripke(rng, n, alphabet, vars));
}

inline Model random_model(std::mt19937_64& rng, std::size_t n, unsigned alphabet, unsigned vars, double density) {
  return ref::to_model(ref::random_kripke(rng, n, alphabet, vars, density));
}

inline Frame random_frame(std::mt19937_64& rng, std::size_t n, unsigned alphabet, double density = 0.4) {
  return ref::to_model(ref::random_kripke(rng, n, alphabet, 0, density)).frame;
}

inline Condition to_condition(const ref::Cond& g, const Formula& f) {
  Condition out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    for (const auto& s : subformula_chain(f))
      if (g[a].count(render(s))) out[a].push_back(s);
  return out;
}

inline std::vector<World> component(const std::vector<std::size_t>& off, std::size_t i) {
  std::vector<World> v;
  for (std::size_t w = off[i]; w < off[i + 1]; ++w) v.push_back(static_cast<World>(w));
  return v;
}

// Truth in a sum at a point of component i equals truth in the component under
// the external condition of that component.
inline bool external_condition_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 2));
  const Formula f = random_formula(rng, {6, 2, A});
  const std::size_t k = uniform(rng, 1, 3);
  const Frame index = random_frame(rng, k, A);
  std::vector<Model> family;
  for (std::size_t i = 0; i < k; ++i) family.push_back(random_model(rng, uniform(rng, 1, 3), A, 2));
  const Model s = sum(index, family);
  const ref::Cond gamma = ref::random_cond(rng, f, A);
  std::vector<Frame> frames;
  for (const auto& m : family) frames.push_back(m.frame);
  const auto off = component_offsets(frames);
  const ref::Kripke ks = ref::from_model(s);
  for (std::size_t i = 0; i < k; ++i) {
    const Condition delta = external_condition(f, s, component(off, i), to_condition(gamma, f));
    const ref::Kripke ki = ref::from_model(family[i]);
    const ref::Cond d = ref::to_cond(delta);
    for (const auto& chi : subformula_chain(f))
      for (std::size_t v = 0; v < family[i].frame.world_count(); ++v)
        if (ref::truth(ks, off[i] + v, gamma, chi) != ref::truth(ki, v, d, chi)) return false;
  }
  return true;
}

// SF(phi, M0 +a M1, G) = SF(phi, M0, G +a SF(phi, M1, G)) + SF(phi, M1, G).
inline bool decomposition_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 2));
  const unsigned a = static_cast<unsigned>(uniform(rng, 0, A - 1));
  const Formula f = random_formula(rng, {6, 2, A});
  const Model m0 = random_model(rng, uniform(rng, 1, 3), A, 2);
  const Model m1 = random_model(rng, uniform(rng, 1, 3), A, 2);
  const ref::Cond gamma = ref::random_cond(rng, f, A);
  const auto whole = ref::characterize(ref::from_model(plus_a(a, m0, m1)), gamma, f);
  const auto top = ref::characterize(ref::from_model(m1), gamma, f);
  ref::Cond lowered = gamma;
  lowered[a].insert(top.begin(), top.end());
  auto parts = ref::characterize(ref::from_model(m0), lowered, f);
  parts.insert(top.begin(), top.end());
  return whole == parts;
}

// Conditional truth only looks at subformulas in the condition.
inline bool condition_restriction_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 2));
  const Formula f = random_formula(rng, {6, 2, A});
  const Model m = random_model(rng, uniform(rng, 1, 4), A, 2);
  Condition wide(A), narrow(A);
  std::bernoulli_distribution coin(0.4);
  for (unsigned a = 0; a < A; ++a) {
    for (const auto& s : subformula_chain(f))
      if (coin(rng)) {
        wide[a].push_back(s);
        narrow[a].push_back(s);
      }
    for (int j = 0; j < 3; ++j) {
      const Formula junk = random_formula(rng, {5, 3, A});
      if (Closure(f).position(junk) < 0) wide[a].push_back(junk);
    }
  }
  const Closure c(f);
  if (encode_condition(c, wide, A) != encode_condition(c, narrow, A)) return false;
  for (World w = 0; w < m.frame.world_count(); ++w)
    for (const auto& chi : c.chain())
      if (eval_cond(m, w, wide, chi) != eval_cond(m, w, narrow, chi)) return false;
  return true;
}

inline Model generated_submodel(const Model& m, std::vector<World> seeds) {
  std::vector<char> in(m.frame.world_count(), 0);
  for (World s : seeds) in[s] = 1;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (unsigned a = 0; a < m.frame.alphabet(); ++a)
      for (World v : m.frame.successors(a, seeds[i]))
        if (!in[v]) {
          in[v] = 1;
          seeds.push_back(v);
        }
  std::sort(seeds.begin(), seeds.end());
  return restrict_model(m, seeds);
}

// Characterizations distribute over disjoint unions; truth is preserved in
// generated submodels.
inline bool disjoint_union_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 2));
  const Formula f = random_formula(rng, {6, 2, A});
  const ref::Cond gamma = ref::random_cond(rng, f, A);
  const std::size_t k = uniform(rng, 1, 3);
  std::vector<Model> family;
  std::set<std::string> parts;
  for (std::size_t i = 0; i < k; ++i) {
    family.push_back(random_model(rng, uniform(rng, 1, 3), A, 2));
    const auto s = ref::characterize(ref::from_model(family.back()), gamma, f);
    parts.insert(s.begin(), s.end());
  }
  const Model u = sum(empty_frame(k, A), family);
  if (ref::characterize(ref::from_model(u), gamma, f) != parts) return false;
  const Condition g = to_condition(gamma, f);
  std::set<std::string> lib;
  for (const auto& s : characterize(f, u, g)) lib.insert(render(s));
  if (lib != parts) return false;

  const Model m = random_model(rng, uniform(rng, 2, 6), A, 2, 0.25);
  const World seed = static_cast<World>(uniform(rng, 0, m.frame.world_count() - 1));
  std::vector<World> reach{seed};
  const Model sub = generated_submodel(m, reach);
  // The seed keeps its rank among the kept worlds.
  World pos = 0;
  {
    std::vector<char> in(m.frame.world_count(), 0);
    std::vector<World> st{seed};
    in[seed] = 1;
    for (std::size_t i = 0; i < st.size(); ++i)
      for (unsigned a = 0; a < A; ++a)
        for (World v : m.frame.successors(a, st[i]))
          if (!in[v]) {
            in[v] = 1;
            st.push_back(v);
          }
    for (World w = 0; w < seed; ++w) pos += in[w];
  }
  const ref::Kripke km = ref::from_model(m), ks = ref::from_model(sub);
  for (const auto& chi : subformula_chain(f))
    if (ref::truth(km, seed, gamma, chi) != ref::truth(ks, pos, gamma, chi)) return false;
  return true;
}

// M,w |=_G phi iff M,w |= phi^G.
inline bool translate_cond_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 3));
  const Formula f = random_formula(rng, {7, 2, A});
  const Model m = random_model(rng, uniform(rng, 1, 4), A, 2);
  const ref::Cond gamma = ref::random_cond(rng, f, A);
  const Formula t = translate_cond(f, to_condition(gamma, f));
  const ref::Kripke k = ref::from_model(m);
  for (World w = 0; w < m.frame.world_count(); ++w)
    if (ref::truth(k, w, gamma, f) != ref::truth(k, w, {}, t)) return false;
  return true;
}

// All cluster models with at most n worlds over the given variables, one per
// multiset of valuation profiles.
inline std::vector<ref::Kripke> cluster_models(std::size_t n, const std::vector<unsigned>& vars, unsigned alphabet = 1) {
  std::vector<ref::Kripke> out;
  const unsigned nv = vars.empty() ? 0 : vars.back() + 1;
  const std::size_t profiles = std::size_t{1} << vars.size();
  std::vector<std::size_t> prof;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!prof.empty()) {
      ref::Kripke k;
      k.n = prof.size();
      k.r.assign(alphabet, std::vector<std::vector<char>>(k.n, std::vector<char>(k.n, 1)));
      k.val.assign(nv, std::vector<char>(k.n, 0));
      for (std::size_t w = 0; w < k.n; ++w)
        for (std::size_t j = 0; j < vars.size(); ++j) k.val[vars[j]][w] = (prof[w] >> j) & 1U;
      out.push_back(k);
    }
    if (prof.size() == n) return;
    for (std::size_t s = from; s < profiles; ++s) {
      prof.push_back(s);
      rec(s);
      prof.pop_back();
    }
  };
  rec(0);
  return out;
}

inline ref::Cond cond_of(const Closure& c, const TieVec& u) {
  ref::Cond g(1);
  for (std::size_t i : u.members()) g[0].insert(render(c.at(i)));
  return g;
}

// For one formula: every tie (v, U) is realized by a cluster with at most 4
// worlds iff delta_1 of the tie is satisfiable in such a cluster. U ranges
// over `conds`; returns the number of mismatches.
inline std::size_t delta_mismatches(const Formula& f, const std::vector<TieVec>& conds) {
  auto c = std::make_shared<const Closure>(f);
  const auto models = cluster_models(4, c->variables());
  std::vector<Model> lib;
  for (const auto& k : models) lib.push_back(ref::to_model(k));
  std::size_t bad = 0;
  for (const TieVec& u : conds) {
    const ref::Cond g = cond_of(*c, u);
    std::set<std::string> realized;
    for (const auto& k : models) {
      std::string key(c->size(), '0');
      const auto s = ref::characterize(k, g, f);
      for (std::size_t i = 0; i < c->size(); ++i)
        if (s.count(render(c->at(i)))) key[i] = '1';
      realized.insert(key);
    }
    for (std::uint64_t vm = 0; vm < (std::uint64_t{1} << c->size()); ++vm) {
      const TieVec v = TieVec::from_mask(c->size(), vm);
      const Formula d = delta_m(Tie(c, v, {u}), 1);
      bool sat = false;
      for (const auto& m : lib)
        if (eval(m, 0, d)) {
          sat = true;
          break;
        }
      if (sat != (realized.count(v.to_string()) > 0)) ++bad;
    }
  }
  return bad;
}

// Universal lifts of clusters with at most n worlds; relation 1 is the cluster.
inline bool lifted_cluster_sat(const Formula& f, std::size_t n) {
  for (const auto& k : cluster_models(n, variables_of(f), 2))
    for (std::size_t w = 0; w < k.n; ++w)
      if (ref::truth(k, w, {}, f)) return true;
  return false;
}

// Spaan elimination on lifted clusters: phi is satisfiable iff some cluster
// model of the lowered xi has a characterization the constraint admits.
inline bool spaan_holds(std::mt19937_64& rng, bool* sat_out = nullptr) {
  const Formula f = random_formula(rng, {6, 2, 2});
  const SpaanResult res = spaan_eliminate(f);
  auto down = [](const Formula& g) { return map_modalities(g, [](unsigned a) { return a - 1; }); };
  const Formula xi = down(res.xi);
  bool flat = false;
  for (const auto& k : cluster_models(3, variables_of(xi))) {
    const auto s = ref::characterize(k, {}, xi);
    if (res.admits([&](const Formula& g) { return s.count(render(down(g))) > 0; })) {
      flat = true;
      break;
    }
  }
  const bool lifted = lifted_cluster_sat(f, 3);
  if (sat_out) *sat_out = lifted;
  return flat == lifted;
}

// phi is satisfiable in some subframe iff relativize(phi) is satisfiable.
// Subframes of clusters are clusters, so both sides search clusters; the
// second half searches arbitrary frames, closed under subframes as well.
inline bool relativize_holds(std::mt19937_64& rng) {
  const Formula f = random_formula(rng, {6, 2, 1});
  const Formula r = relativize(f);
  auto any = [](const ref::Rel&) { return true; };
  bool in_clusters = false, rel_clusters = false;
  for (const auto& k : cluster_models(3, variables_of(f)))
    for (std::size_t w = 0; w < k.n && !in_clusters; ++w) in_clusters = ref::truth(k, w, {}, f);
  for (const auto& k : cluster_models(3, variables_of(r)))
    for (std::size_t w = 0; w < k.n && !rel_clusters; ++w) rel_clusters = ref::truth(k, w, {}, r);
  if (in_clusters != rel_clusters) return false;
  return ref::brute_sat(f, 2, any) == ref::brute_sat(r, 2, any);
}

inline Frame permuted(const Frame& f, std::mt19937_64& rng) {
  std::vector<World> p(f.world_count());
  for (World i = 0; i < p.size(); ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<Relation> rel(f.alphabet());
  for (unsigned a = 0; a < f.alphabet(); ++a) {
    for (const auto& [u, v] : f.relation(a)) rel[a].emplace_back(p[u], p[v]);
    std::sort(rel[a].begin(), rel[a].end());
  }
  return Frame(f.world_count(), rel);
}

// Sum over I of sums over J_i is isomorphic to the sum over the summed index.
inline bool associativity_holds(std::mt19937_64& rng) {
  const unsigned A = static_cast<unsigned>(uniform(rng, 1, 2));
  const std::size_t k = uniform(rng, 1, 3);
  const Frame index = random_frame(rng, k, A, 0.5);
  std::vector<Frame> js, inner_sums, flat;
  std::size_t worlds = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t nj = uniform(rng, 1, 2);
    js.push_back(random_frame(rng, nj, A, 0.5));
    std::vector<Frame> fam;
    for (std::size_t j = 0; j < nj; ++j) {
      const std::size_t n = worlds + 1 >= 8 ? 1 : uniform(rng, 1, 2);
      worlds += n;
      fam.push_back(random_frame(rng, n, A, 0.5));
      flat.push_back(fam.back());
    }
    inner_sums.push_back(sum(js.back(), fam));
  }
  if (worlds > 8) return true;
  const Frame left = sum(index, inner_sums);
  const Frame right = permuted(sum(sum(index, js), flat), rng);
  return canonical_code(left) == canonical_code(right) && ref::isomorphic(left, right);
}

}  // namespace props
