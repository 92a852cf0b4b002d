#pragma once
// Reference implementations used as test oracles. Nothing here calls the
// library's evaluator or frame generators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "msum/formula.hpp"
#include "msum/semantics.hpp"

namespace ref {

using msum::Formula;
using msum::Kind;

inline void subformulas(const Formula& f, std::set<std::string>& out) {
  out.insert(msum::render(f));
  if (f.kind() == Kind::Imp) {
    subformulas(f.left(), out);
    subformulas(f.right(), out);
  } else if (f.kind() == Kind::Dia) {
    subformulas(f.body(), out);
  }
}

inline std::size_t closure_size(const Formula& f) {
  std::set<std::string> s;
  subformulas(f, s);
  return s.size();
}

// Dense adjacency, one matrix per modality.
struct Kripke {
  std::size_t n = 0;
  std::vector<std::vector<std::vector<char>>> r;  // r[a][u][v]
  std::vector<std::vector<char>> val;            // val[p][w]

  bool holds(unsigned p, std::size_t w) const { return p < val.size() && val[p][w]; }
};

inline Kripke from_model(const msum::Model& m) {
  Kripke k;
  k.n = m.frame.world_count();
  k.r.assign(m.frame.alphabet(), std::vector<std::vector<char>>(k.n, std::vector<char>(k.n, 0)));
  for (unsigned a = 0; a < m.frame.alphabet(); ++a)
    for (const auto& [u, v] : m.frame.relation(a)) k.r[a][u][v] = 1;
  k.val.assign(m.valuation.size(), std::vector<char>(k.n, 0));
  for (std::size_t p = 0; p < m.valuation.size(); ++p)
    for (auto w : m.valuation[p]) k.val[p][w] = 1;
  return k;
}

inline msum::Model to_model(const Kripke& k) {
  std::vector<msum::Relation> rel(k.r.size());
  for (std::size_t a = 0; a < k.r.size(); ++a)
    for (std::size_t u = 0; u < k.n; ++u)
      for (std::size_t v = 0; v < k.n; ++v)
        if (k.r[a][u][v]) rel[a].emplace_back(u, v);
  std::vector<std::vector<msum::World>> val(k.val.size());
  for (std::size_t p = 0; p < k.val.size(); ++p)
    for (std::size_t w = 0; w < k.n; ++w)
      if (k.val[p][w]) val[p].push_back(static_cast<msum::World>(w));
  return msum::make_model(msum::Frame(k.n, rel), val);
}

// Conditional truth by plain recursion; gamma holds rendered formulas.
using Cond = std::vector<std::set<std::string>>;

inline bool truth(const Kripke& k, std::size_t w, const Cond& g, const Formula& f) {
  switch (f.kind()) {
    case Kind::Falsum:
      return false;
    case Kind::Var:
      return k.holds(f.index(), w);
    case Kind::Imp:
      return !truth(k, w, g, f.left()) || truth(k, w, g, f.right());
    case Kind::Dia: {
      const unsigned a = f.index();
      if (a < g.size() && g[a].count(msum::render(f.body()))) return true;
      if (a >= k.r.size()) return false;
      for (std::size_t v = 0; v < k.n; ++v)
        if (k.r[a][w][v] && truth(k, v, g, f.body())) return true;
      return false;
    }
  }
  return false;
}

inline Cond to_cond(const msum::Condition& c) {
  Cond out;
  for (const auto& row : c) {
    out.emplace_back();
    for (const auto& f : row) out.back().insert(msum::render(f));
  }
  return out;
}

// Rendered subformulas true somewhere.
inline std::set<std::string> characterize(const Kripke& k, const Cond& g, const Formula& f) {
  std::set<std::string> all, out;
  subformulas(f, all);
  std::vector<Formula> chain = msum::subformula_chain(f);
  for (const auto& s : chain)
    for (std::size_t w = 0; w < k.n; ++w)
      if (truth(k, w, g, s)) {
        out.insert(msum::render(s));
        break;
      }
  return out;
}

inline Kripke random_kripke(std::mt19937_64& rng, std::size_t n, unsigned alphabet, unsigned vars,
                            double density = 0.4) {
  Kripke k;
  k.n = n;
  std::bernoulli_distribution edge(density), coin(0.5);
  k.r.assign(alphabet, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (auto& m : k.r)
    for (auto& row : m)
      for (auto& x : row) x = edge(rng);
  k.val.assign(vars, std::vector<char>(n, 0));
  for (auto& row : k.val)
    for (auto& x : row) x = coin(rng);
  return k;
}

inline Cond random_cond(std::mt19937_64& rng, const Formula& f, unsigned alphabet) {
  Cond g(alphabet);
  std::bernoulli_distribution coin(0.3);
  for (const auto& s : msum::subformula_chain(f))
    for (auto& row : g)
      if (coin(rng)) row.insert(msum::render(s));
  return g;
}

// ---- frame properties on one relation

using Rel = std::vector<std::vector<char>>;

inline bool reflexive(const Rel& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i][i]) return false;
  return true;
}
inline bool irreflexive(const Rel& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i][i]) return false;
  return true;
}
inline bool transitive(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][y] && r[y][z] && !r[x][z]) return false;
  return true;
}
inline bool weakly_transitive(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (x != z && r[x][y] && r[y][z] && !r[x][z]) return false;
  return true;
}
inline bool antisymmetric(const Rel& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      if (x != y && r[x][y] && r[y][x]) return false;
  return true;
}
inline bool total(const Rel& r) {
  for (const auto& row : r)
    for (char c : row)
      if (!c) return false;
  return true;
}
// x R y1 and x R y2 imply a common R-successor.
inline bool church_rosser(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (!r[x][y] || !r[x][z]) continue;
        bool ok = false;
        for (std::size_t u = 0; u < n && !ok; ++u) ok = r[y][u] && r[z][u];
        if (!ok) return false;
      }
  return true;
}
inline bool difference(const Rel& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      if (x != y && !r[x][y]) return false;
  return true;
}

// Every unimodal frame on n worlds satisfying pred (n <= 4).
inline std::vector<Rel> frames(std::size_t n, const std::function<bool(const Rel&)>& pred) {
  std::vector<Rel> out;
  const std::size_t cells = n * n;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) {
    Rel r(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < cells; ++i) r[i / n][i % n] = (m >> i) & 1U;
    if (pred(r)) out.push_back(std::move(r));
  }
  return out;
}

// Satisfiable at some world of one of the given frames.
inline bool brute_sat(const Formula& f, const std::vector<Rel>& frames) {
  std::vector<unsigned> vars = msum::variables_of(f);
  const unsigned nv = vars.empty() ? 0 : vars.back() + 1;
  for (const Rel& r : frames) {
    Kripke k;
    k.n = r.size();
    k.r = {r};
    const std::size_t n = k.n, cells = n * vars.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) {
      k.val.assign(nv, std::vector<char>(n, 0));
      for (std::size_t j = 0; j < vars.size(); ++j)
        for (std::size_t w = 0; w < n; ++w) k.val[vars[j]][w] = (m >> (j * n + w)) & 1U;
      for (std::size_t w = 0; w < n; ++w)
        if (truth(k, w, {}, f)) return true;
    }
  }
  return false;
}

// Every frame with 1..max_n worlds satisfying pred.
inline std::vector<Rel> frames_upto(std::size_t max_n, const std::function<bool(const Rel&)>& pred) {
  std::vector<Rel> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& r : frames(n, pred)) out.push_back(std::move(r));
  return out;
}

// Satisfiable at some world of some frame with 1..max_n worlds.
inline bool brute_sat(const Formula& f, std::size_t max_n, const std::function<bool(const Rel&)>& pred) {
  return brute_sat(f, frames_upto(max_n, pred));
}

// Models whose frame is fixed by the multiset of point types, a type being a
// valuation profile plus one reflexivity bit when `loops` is set. `edge(u, v,
// a, loop_u)` decides the relations. Covers 1..max_n points.
inline std::vector<Kripke> typed_models(std::size_t max_n, const std::vector<unsigned>& vars, unsigned alphabet,
                                        bool loops,
                                        const std::function<bool(std::size_t, std::size_t, unsigned, bool)>& edge) {
  std::vector<Kripke> out;
  const unsigned nv = vars.empty() ? 0 : vars.back() + 1;
  const std::size_t types = (std::size_t{1} << vars.size()) * (loops ? 2 : 1);
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      Kripke k;
      k.n = pick.size();
      k.r.assign(alphabet, std::vector<std::vector<char>>(k.n, std::vector<char>(k.n, 0)));
      k.val.assign(nv, std::vector<char>(k.n, 0));
      for (std::size_t w = 0; w < k.n; ++w) {
        const std::size_t prof = loops ? pick[w] / 2 : pick[w];
        for (std::size_t j = 0; j < vars.size(); ++j) k.val[vars[j]][w] = (prof >> j) & 1U;
      }
      for (unsigned a = 0; a < alphabet; ++a)
        for (std::size_t u = 0; u < k.n; ++u)
          for (std::size_t v = 0; v < k.n; ++v) k.r[a][u][v] = edge(u, v, a, loops && (pick[u] & 1U));
      out.push_back(std::move(k));
    }
    if (pick.size() == max_n) return;
    for (std::size_t t = from; t < types; ++t) {
      pick.push_back(t);
      rec(t);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<Kripke> clusters(std::size_t max_n, const std::vector<unsigned>& vars) {
  return typed_models(max_n, vars, 1, false, [](std::size_t, std::size_t, unsigned, bool) { return true; });
}

// Off-diagonal pairs always; loops per point.
inline std::vector<Kripke> difference_models(std::size_t max_n, const std::vector<unsigned>& vars, bool t0) {
  auto all = typed_models(max_n, vars, 1, true, [](std::size_t u, std::size_t v, unsigned, bool loop) {
    return u != v || loop;
  });
  if (!t0) return all;
  std::vector<Kripke> out;
  for (auto& k : all) {
    std::size_t irr = 0;
    for (std::size_t w = 0; w < k.n; ++w) irr += !k.r[0][w][w];
    if (irr <= 1) out.push_back(std::move(k));
  }
  return out;
}

// Bit strings over the chain of f of the characterizations realized under g.
inline std::set<std::string> realized(const std::vector<Kripke>& models, const Cond& g, const Formula& f) {
  const auto chain = msum::subformula_chain(f);
  std::set<std::string> out;
  for (const auto& k : models) {
    const auto s = characterize(k, g, f);
    std::string key(chain.size(), '0');
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (s.count(msum::render(chain[i]))) key[i] = '1';
    out.insert(key);
  }
  return out;
}

// Isomorphism of frames by permutation search (small frames only).
inline bool isomorphic(const msum::Frame& f, const msum::Frame& g) {
  if (f.world_count() != g.world_count() || f.alphabet() != g.alphabet()) return false;
  for (unsigned a = 0; a < f.alphabet(); ++a)
    if (f.relation(a).size() != g.relation(a).size()) return false;
  std::vector<msum::World> p(f.world_count());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (unsigned a = 0; a < f.alphabet() && ok; ++a)
      for (const auto& [u, v] : f.relation(a))
        if (!g.has_edge(a, p[u], p[v])) {
          ok = false;
          break;
        }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline bool prop_value(const Formula& f, const std::vector<bool>& val) {
  switch (f.kind()) {
    case Kind::Falsum:
      return false;
    case Kind::Var:
      return val.at(f.index());
    case Kind::Imp:
      return !prop_value(f.left(), val) || prop_value(f.right(), val);
    default:
      return false;
  }
}

}  // namespace ref
