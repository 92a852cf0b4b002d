#include "msum/solver.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

#include "msum/reductions.hpp"

namespace msum {

void SearchStats::merge(const SearchStats& o) {
  oracle_calls += o.oracle_calls;
  memo_hits += o.memo_hits;
  max_recursion_depth = std::max(max_recursion_depth, o.max_recursion_depth);
}

namespace {

VecSet bounded_unions_wide(const VecSet& family, unsigned b) {
  std::unordered_set<TieVec> all(family.begin(), family.end());
  std::vector<TieVec> frontier(all.begin(), all.end());
  VecSet base(all.begin(), all.end());
  for (unsigned j = 2; j <= b && !frontier.empty(); ++j) {
    std::vector<TieVec> next;
    for (const auto& x : frontier)
      for (const auto& y : base) {
        TieVec z = x | y;
        if (all.insert(z).second) next.push_back(z);
      }
    frontier.swap(next);
    if (all.size() > 4000000) throw std::runtime_error("too many unions of characterizations");
  }
  VecSet out(all.begin(), all.end());
  normalize(out);
  return out;
}

}  // namespace

VecSet bounded_unions(const VecSet& family, unsigned b) {
  if (b < 1) throw std::invalid_argument("union bound must be positive");
  if (family.empty()) return {};
  TieVec support(family.front().size());
  for (const auto& x : family) support |= x;
  const Packing pk(support);
  if (!pk.fits()) return bounded_unions_wide(family, b);
  std::vector<std::uint64_t> words;
  for (const auto& x : family) words.push_back(pk.pack(x));
  VecSet out;
  for (std::uint64_t x : word_unions(std::move(words), b, pk.pos.size())) out.push_back(pk.unpack(x));
  normalize(out);
  return out;
}

namespace {

VecSet project(const VecSet& s, const TieVec& mask) {
  VecSet out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(x & mask);
  normalize(out);
  return out;
}

bool contains(const VecSet& s, const TieVec& v) { return std::binary_search(s.begin(), s.end(), v); }

bool any_with_root(const VecSet& s) {
  return std::any_of(s.begin(), s.end(), [](const TieVec& x) { return x.size() > 0 && x.test(0); });
}

TieVec root_mask(const Closure& c) {
  TieVec m(c.size());
  m.set(0);
  return m;
}

TieVec bodies_of(const Closure& c, unsigned a) {
  TieVec m(c.size());
  for (int b : c.bodies(a)) m.set(static_cast<std::size_t>(b));
  return m;
}

// All subsets of v; |v| must be small.
template <class Fn>
bool for_each_subset(const TieVec& v, Fn fn) {
  auto bits = v.members();
  if (bits.size() > 24) throw std::runtime_error("too many set bits to enumerate subsets");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits.size()); ++m) {
    TieVec s(v.size());
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (m >> j & 1U) s.set(bits[j]);
    if (fn(s)) return true;
  }
  return false;
}

// result + { c | W : W a union of at most b members of prev, c in real_for(W & bodies) }.
// Everything lives on the positions of M.
VecSet combine(VecSet result, const VecSet& prev, unsigned b, const TieVec& M, const TieVec& bodies,
               const std::function<VecSet(const TieVec&)>& real_for) {
  const Packing pk(M);
  if (!pk.fits()) {
    std::map<TieVec, std::vector<TieVec>> groups;
    for (const auto& w : bounded_unions_wide(prev, b)) groups[w & bodies].push_back(w);
    for (const auto& [part, group] : groups)
      for (const TieVec& c : real_for(part))
        for (const TieVec& w : group) result.push_back(c | w);
    normalize(result);
    return result;
  }
  std::vector<std::uint64_t> fam;
  for (const auto& x : prev) fam.push_back(pk.pack(x));
  std::vector<std::uint64_t> unions = word_unions(std::move(fam), b, pk.pos.size());
  const std::uint64_t bm = pk.pack(bodies);
  std::sort(unions.begin(), unions.end(), [bm](std::uint64_t x, std::uint64_t y) {
    return std::pair(x & bm, x) < std::pair(y & bm, y);
  });
  std::unordered_set<std::uint64_t> out;
  for (const auto& r : result) out.insert(pk.pack(r));
  for (std::size_t i = 0; i < unions.size();) {
    const std::uint64_t part = unions[i] & bm;
    std::size_t j = i;
    while (j < unions.size() && (unions[j] & bm) == part) ++j;
    for (const TieVec& c : real_for(pk.unpack(part))) {
      const std::uint64_t cw = pk.pack(c);
      for (std::size_t k = i; k < j; ++k) out.insert(cw | unions[k]);
    }
    i = j;
  }
  result.clear();
  for (std::uint64_t x : out) result.push_back(pk.unpack(x));
  normalize(result);
  return result;
}

}  // namespace

TieCond zero_cond(const Closure& c, unsigned alphabet) { return empty_cond(c.size(), alphabet); }

unsigned cond_alphabet(const Closure& c, unsigned a, const SummandOracle& o) {
  if (o.alphabet() != 0) return o.alphabet();
  return std::max(c.alphabet(), a + 1);
}

// ---------------------------------------------------------------- SumEngine

SumEngine::SumEngine(std::shared_ptr<const Closure> c, unsigned a, OraclePtr oracle, SolverOptions opt)
    : closure_(std::move(c)), a_(a), oracle_(std::move(oracle)), opt_(opt), bodies_(bodies_of(*closure_, a)) {}

VecSet SumEngine::real(const TieCond& U, const TieVec& mask) {
  Key key{U, 0, 0, mask};
  if (opt_.memoize) {
    auto it = real_memo_.find(key);
    if (it != real_memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
  }
  ++stats_.oracle_calls;
  VecSet r = oracle_->realizable(*closure_, U, mask);
  if (opt_.memoize) real_memo_.emplace(std::move(key), r);
  return r;
}

VecSet SumEngine::level(const TieCond& U, unsigned h, unsigned b, const TieVec& mask) {
  if (h < 1 || b < 1) throw std::invalid_argument("tree parameters must be positive");
  if (a_ >= U.size()) throw std::invalid_argument("sum modality outside the alphabet");
  return level_at(U, h, b, mask, 1);
}

VecSet SumEngine::level_at(const TieCond& U, unsigned h, unsigned b, const TieVec& mask, unsigned depth) {
  stats_.max_recursion_depth = std::max<std::uint64_t>(stats_.max_recursion_depth, depth);
  const TieVec M = mask | bodies_;
  Key key{U, h, b, M};
  if (opt_.memoize) {
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++stats_.memo_hits;
      return project(it->second, mask);
    }
  }
  VecSet result = real(U, M);
  if (h > 1) {
    VecSet prev = level_at(U, h - 1, b, M, depth + 1);
    bool stable = false;
    if (opt_.memoize && h > 2) stable = prev == level_at(U, h - 2, b, M, depth + 1);
    if (stable) {
      result = prev;
    } else {
      result = combine(std::move(result), prev, b, M, bodies_,
                       [&](const TieVec& part) { return real(cond_plus_a(U, a_, part), M); });
    }
  }
  if (opt_.memoize) memo_.emplace(std::move(key), result);
  return project(result, mask);
}

bool SumEngine::oracle_csat(const TieVec& v, const TieCond& U) {
  VKey key{v, U, 0, 0};
  if (opt_.memoize) {
    auto it = vmemo_.find(key);
    if (it != vmemo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
  }
  ++stats_.oracle_calls;
  bool r = oracle_->csat(Tie(closure_, v, U));
  if (opt_.memoize) vmemo_.emplace(std::move(key), r);
  return r;
}

bool SumEngine::literal_at(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned depth) {
  stats_.max_recursion_depth = std::max<std::uint64_t>(stats_.max_recursion_depth, depth);
  VKey key{v, U, h, b};
  if (opt_.memoize) {
    auto it = vmemo_.find(key);
    if (it != vmemo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
  }
  bool r = oracle_csat(v, U);
  if (!r && h > 1) {
    for (unsigned k = 1; k <= b && !r; ++k) {
      r = for_each_cover(v, k, [&](const TieVec& u, const std::vector<TieVec>& parts) {
        TieVec s(v.size());
        for (const auto& p : parts) s |= p;
        if (!oracle_csat(u, cond_plus_a(U, a_, s))) return false;
        for (const auto& p : parts)
          if (!literal_at(p, U, h - 1, b, depth + 1)) return false;
        return true;
      });
    }
  }
  if (opt_.memoize) vmemo_.emplace(std::move(key), r);
  return r;
}

bool SumEngine::csat(const TieVec& v, const TieCond& U, unsigned h, unsigned b) {
  if (h < 1 || b < 1) throw std::invalid_argument("tree parameters must be positive");
  if (a_ >= U.size()) throw std::invalid_argument("sum modality outside the alphabet");
  if (opt_.literal) return literal_at(v, U, h, b, 1);
  return contains(level_at(U, h, b, TieVec::full(v.size()), 1), v);
}

// ---------------------------------------------------------------- wrappers

bool csat_sum(const Tie& tie, unsigned h, unsigned b, unsigned a, OraclePtr oracle, SolverOptions opt,
              SearchStats* stats) {
  SumEngine e(tie.closure, a, std::move(oracle), opt);
  bool r = e.csat(tie.v, tie.U, h, b);
  if (stats) stats->merge(e.stats());
  return r;
}

bool sat_over_sums(const Formula& f, unsigned a, OraclePtr oracle, SolverOptions opt, SearchStats* stats) {
  auto c = std::make_shared<const Closure>(f);
  const unsigned A = cond_alphabet(*c, a, *oracle);
  const TieCond U0 = zero_cond(*c, A);
  const auto n = static_cast<unsigned>(c->size());
  SumEngine e(c, a, std::move(oracle), opt);
  bool r = false;
  if (opt.literal) {
    TieVec rest = TieVec::full(c->size());
    rest.set(0, false);
    r = for_each_subset(rest, [&](TieVec v) {
      v.set(0);
      return e.csat(v, U0, n, n);
    });
  } else {
    r = any_with_root(e.level(U0, n, n, root_mask(*c)));
  }
  if (stats) stats->merge(e.stats());
  return r;
}

bool csat_over_sums(const Tie& tie, unsigned a, OraclePtr oracle, SolverOptions opt, SearchStats* stats) {
  const auto n = static_cast<unsigned>(tie.width());
  SumEngine e(tie.closure, a, std::move(oracle), opt);
  VecSet parts;
  if (opt.literal) {
    for_each_subset(tie.v, [&](const TieVec& w) {
      if (e.csat(w, tie.U, n, n)) parts.push_back(w);
      return false;
    });
  } else {
    for (const auto& w : e.level(tie.U, n, n, TieVec::full(tie.width())))
      if (w.is_subset_of(tie.v)) parts.push_back(w);
  }
  if (stats) stats->merge(e.stats());
  if (parts.empty()) return false;
  return contains(bounded_unions(parts, n), tie.v);
}

bool csat_disjoint(const Tie& tie, unsigned bound, const SummandOracle& oracle) {
  if (bound < 1) throw std::invalid_argument("bound must be positive");
  VecSet parts;
  for_each_subset(tie.v, [&](const TieVec& w) {
    if (oracle.csat(Tie(tie.closure, w, tie.U))) parts.push_back(w);
    return false;
  });
  if (parts.empty()) return false;
  return contains(bounded_unions(parts, bound), tie.v);
}

bool csat_plus(const Tie& tie, unsigned a, const SummandOracle& left, const SummandOracle& right) {
  if (a >= tie.alphabet()) throw std::invalid_argument("modality outside the alphabet");
  return for_each_subset(tie.v, [&](const TieVec& v1) {
    if (!right.csat(Tie(tie.closure, v1, tie.U))) return false;
    const TieCond U1 = cond_plus_a(tie.U, a, v1);
    const TieVec lo = tie.v.minus(v1);
    return for_each_subset(v1, [&](const TieVec& extra) {
      return left.csat(Tie(tie.closure, lo | extra, U1));
    });
  });
}

bool sat_direct(const Formula& f, const SummandOracle& oracle) {
  Closure c(f);
  const unsigned A = oracle.alphabet() ? oracle.alphabet() : std::max(1U, c.alphabet());
  return any_with_root(oracle.realizable(c, zero_cond(c, A), root_mask(c)));
}

// ---------------------------------------------------------------- composite oracles

SumOracle::SumOracle(unsigned a, OraclePtr inner, SolverOptions opt)
    : a_(a), inner_(std::move(inner)), opt_(opt) {}

std::string SumOracle::name() const { return "sums" + std::to_string(a_) + "(" + inner_->name() + ")"; }

bool SumOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  return csat_over_sums(tie, a_, inner_, opt_);
}

VecSet SumOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (auto hit = cache_.find(c, u, mask)) return *hit;
  const auto n = static_cast<unsigned>(c.size());
  SumEngine e(std::make_shared<const Closure>(c.root()), a_, inner_, opt_);
  VecSet out = bounded_unions(e.level(u, n, n, mask), n);
  cache_.store(c, u, mask, out);
  return out;
}

PlusOracle::PlusOracle(unsigned a, OraclePtr left, OraclePtr right)
    : a_(a), left_(std::move(left)), right_(std::move(right)) {
  if (left_->alphabet() != right_->alphabet())
    throw std::invalid_argument("plus of oracles with different alphabets");
}

std::string PlusOracle::name() const {
  return "plus" + std::to_string(a_) + "(" + left_->name() + "," + right_->name() + ")";
}

bool PlusOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  return csat_plus(tie, a_, *left_, *right_);
}

VecSet PlusOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  const TieVec ba = bodies_of(c, a_);
  VecSet out;
  for (const TieVec& c1 : right_->realizable(c, u, mask | ba))
    for (const TieVec& c0 : left_->realizable(c, cond_plus_a(u, a_, c1 & ba), mask))
      out.push_back((c0 | c1) & mask);
  normalize(out);
  return out;
}

OraclePtr sum_oracle(unsigned a, OraclePtr inner, SolverOptions opt) {
  return std::make_shared<SumOracle>(a, std::move(inner), opt);
}

OraclePtr plus_oracle(unsigned a, OraclePtr left, OraclePtr right) {
  return std::make_shared<PlusOracle>(a, std::move(left), std::move(right));
}

// ---------------------------------------------------------------- JEngine

JEngine::JEngine(std::shared_ptr<const Closure> c, unsigned A, SolverOptions opt)
    : closure_(std::move(c)), A_(A), opt_(opt), base_(singleton_oracle(false, A)) {
  for (unsigned a = 0; a < A; ++a) bodies_.push_back(bodies_of(*closure_, a));
}

VecSet JEngine::level(const TieCond& U, unsigned h, unsigned b, unsigned a, const TieVec& mask) {
  if (h < 1 || b < 1) throw std::invalid_argument("tree parameters must be positive");
  if (a > A_) throw std::invalid_argument("level above the alphabet");
  if (U.size() != A_) throw std::invalid_argument("condition must have A rows");
  return level_at(U, h, b, a, mask, 1);
}

VecSet JEngine::level_at(const TieCond& U, unsigned h, unsigned b, unsigned a, const TieVec& mask,
                         unsigned depth) {
  stats_.max_recursion_depth = std::max<std::uint64_t>(stats_.max_recursion_depth, depth);
  const TieVec M = a < A_ ? (mask | bodies_[a]) : mask;
  Key key{U, a < A_ ? h : 0, a < A_ ? b : 0, a, M};
  if (opt_.memoize) {
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++stats_.memo_hits;
      return project(it->second, mask);
    }
  }
  VecSet result;
  if (a == A_) {
    ++stats_.oracle_calls;
    result = base_->realizable(*closure_, U, M);
  } else {
    result = level_at(U, A_, A_, a + 1, M, depth + 1);
    if (h > 1) {
      VecSet prev = level_at(U, h - 1, b, a, M, depth + 1);
      bool stable = false;
      if (opt_.memoize && h > 2) stable = prev == level_at(U, h - 2, b, a, M, depth + 1);
      if (stable) {
        result = prev;
      } else {
        result = combine(std::move(result), prev, b, M, bodies_[a], [&](const TieVec& part) {
          return level_at(cond_plus_a(U, a, part), A_, A_, a + 1, M, depth + 1);
        });
      }
    }
  }
  if (opt_.memoize) memo_.emplace(std::move(key), result);
  return project(result, mask);
}

bool JEngine::literal_at(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a,
                         unsigned depth) {
  stats_.max_recursion_depth = std::max<std::uint64_t>(stats_.max_recursion_depth, depth);
  Key key{U, h, b, a, v};
  if (opt_.memoize) {
    auto it = vmemo_.find(key);
    if (it != vmemo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
  }
  bool r = false;
  if (a == A_) {
    ++stats_.oracle_calls;
    r = base_->csat(Tie(closure_, v, U));
  } else {
    r = literal_at(v, U, A_, A_, a + 1, depth + 1);
    for (unsigned k = 1; !r && h > 1 && k <= b; ++k) {
      r = for_each_cover(v, k, [&](const TieVec& u, const std::vector<TieVec>& parts) {
        TieVec s(v.size());
        for (const auto& p : parts) s |= p;
        if (!literal_at(u, cond_plus_a(U, a, s), A_, A_, a + 1, depth + 1)) return false;
        for (const auto& p : parts)
          if (!literal_at(p, U, h - 1, b, a, depth + 1)) return false;
        return true;
      });
    }
  }
  if (opt_.memoize) vmemo_.emplace(std::move(key), r);
  return r;
}

bool JEngine::csat(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a) {
  if (h < 1 || b < 1) throw std::invalid_argument("tree parameters must be positive");
  if (a > A_) throw std::invalid_argument("level above the alphabet");
  if (U.size() != A_) throw std::invalid_argument("condition must have A rows");
  if (opt_.literal) return literal_at(v, U, h, b, a, 1);
  return contains(level_at(U, h, b, a, TieVec::full(v.size()), 1), v);
}

bool csat_j(const Formula& f, const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a,
            unsigned A, SolverOptions opt, SearchStats* stats) {
  JEngine e(std::make_shared<const Closure>(f), A, opt);
  bool r = e.csat(v, U, h, b, a);
  if (stats) stats->merge(e.stats());
  return r;
}

bool sat_j(const Formula& f, SolverOptions opt, SearchStats* stats) {
  auto [g, N] = hat_normalize(f);
  (void)N;
  auto c = std::make_shared<const Closure>(g);
  const auto n = static_cast<unsigned>(c->size());
  JEngine e(c, n, opt);
  const TieCond U0 = zero_cond(*c, n);
  bool r = false;
  if (opt.literal) {
    TieVec rest = TieVec::full(c->size());
    rest.set(0, false);
    r = for_each_subset(rest, [&](TieVec v) {
      v.set(0);
      return e.csat(v, U0, n, n, 0);
    });
  } else {
    r = any_with_root(e.level(U0, n, n, 0, root_mask(*c)));
  }
  if (stats) stats->merge(e.stats());
  return r;
}

// ---------------------------------------------------------------- presets

namespace {

using SatFn = std::function<bool(const Formula&, const SolverOptions&, SearchStats*)>;

SatFn over_sums(unsigned a, OraclePtr o) {
  return [a, o](const Formula& f, const SolverOptions& opt, SearchStats* st) {
    return sat_over_sums(f, a, o, opt, st);
  };
}

SatFn direct(OraclePtr o) {
  return [o](const Formula& f, const SolverOptions&, SearchStats* st) {
    if (st) ++st->oracle_calls;
    return sat_direct(f, *o);
  };
}

std::vector<LogicPreset> build_presets() {
  auto C = cluster_oracle();
  auto S0 = singleton_oracle(false);
  auto S1 = singleton_oracle(true);
  auto D = difference_oracle();
  auto D0 = t0_difference_oracle();
  auto tag = [](FrameClass k) { return std::optional<FrameClassTag>(FrameClassTag::of(k)); };
  std::vector<LogicPreset> ps;
  ps.push_back({"S4", 1, "sum_over_trees(0, cluster)", false, tag(FrameClass::Preorders), over_sums(0, C)});
  ps.push_back({"S5", 1, "direct(cluster)", false, tag(FrameClass::Clusters), direct(C)});
  ps.push_back({"K4", 1, "sum_over_trees(0, union(cluster, S0))", false, tag(FrameClass::Transitive),
                over_sums(0, union_oracle({C, S0}))});
  ps.push_back({"GL", 1, "sum_over_trees(0, S0)", false, tag(FrameClass::StrictPartialOrders),
                over_sums(0, S0)});
  ps.push_back({"Grz", 1, "sum_over_trees(0, S1)", false, tag(FrameClass::PartialOrders), over_sums(0, S1)});
  ps.push_back({"Grz.weak", 1, "sum_over_trees(0, union(S0, S1))", false, std::nullopt,
                over_sums(0, union_oracle({S0, S1}))});
  ps.push_back({"wK4", 1, "sum_over_trees(0, difference)", false, tag(FrameClass::WeaklyTransitive),
                over_sums(0, D)});
  ps.push_back({"DL", 1, "direct(difference)", false, tag(FrameClass::DifferenceFrames), direct(D)});
  ps.push_back({"wK4T0", 1, "sum_over_trees(0, t0_difference)", false, std::nullopt, over_sums(0, D0)});
  ps.push_back({"wK4.2", 1, "union(direct(difference), plus(0, sums(0, difference), confluent_difference))",
                false, tag(FrameClass::WeaklyTransitiveCR),
                direct(union_oracle({D, plus_oracle(0, sum_oracle(0, D), confluent_difference_oracle())}))});
  ps.push_back({"J", 0, "japaridze", false, std::nullopt,
                [](const Formula& f, const SolverOptions& opt, SearchStats* st) { return sat_j(f, opt, st); }});
  auto c_oracle = std::make_shared<ClusterOracle>(2, 2, false);
  ps.push_back({"GLxS4", 2, "sum_over_trees(0, sums(1, cluster on relation 1))", false, std::nullopt,
                over_sums(0, sum_oracle(1, c_oracle))});
  ps.push_back({"S4refS4", 2, "sum_over_trees(0, universal_lift(sums(0, cluster)))", false, std::nullopt,
                over_sums(0, universal_lift_oracle(sum_oracle(0, C)))});
  return ps;
}

}  // namespace

const std::vector<LogicPreset>& presets() {
  static const std::vector<LogicPreset> ps = build_presets();
  return ps;
}

const LogicPreset& preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown logic '" + name + "'");
}

Verdict solve(const LogicPreset& p, const Formula& f, SolverOptions opt, SearchStats* stats) {
  if (p.alphabet != 0) {
    auto ms = modalities_of(f);
    if (!ms.empty() && ms.back() >= p.alphabet)
      throw std::invalid_argument("modality " + std::to_string(ms.back()) + " outside the alphabet of " +
                                  p.name);
  }
  return p.sat(f, opt, stats) ? Verdict::Sat : Verdict::Unsat;
}

Verdict solve(const std::string& name, const Formula& f, SolverOptions opt, SearchStats* stats) {
  return solve(preset(name), f, opt, stats);
}

}  // namespace msum
