#include "msum/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace msum {

void normalize(VecSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

namespace {

constexpr unsigned kMaxProfileBits = 20;

// Maps each Var chain position to its bit in a valuation profile.
std::vector<int> profile_bits(const Closure& c) {
  const auto& vars = c.variables();
  if (vars.size() > kMaxProfileBits) throw std::runtime_error("too many variables for enumeration");
  std::vector<int> bit(c.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& nd = c.node(i);
    if (nd.kind == Kind::Var)
      bit[i] = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), nd.index) - vars.begin());
  }
  return bit;
}

// Truth at one point with valuation profile sigma. dia(a, body, t) decides <a>body
// given the truth vector t computed so far (body is already filled in).
template <class DiaFn>
TieVec eval_point(const Closure& c, const std::vector<int>& bits, std::uint32_t sigma, DiaFn dia) {
  TieVec t(c.size());
  for (std::size_t i = c.size(); i-- > 0;) {
    const auto& nd = c.node(i);
    bool r = false;
    switch (nd.kind) {
      case Kind::Falsum:
        break;
      case Kind::Var:
        r = (sigma >> bits[i]) & 1U;
        break;
      case Kind::Imp:
        r = !t.test(static_cast<std::size_t>(nd.left)) || t.test(static_cast<std::size_t>(nd.right));
        break;
      case Kind::Dia:
        r = dia(nd.index, static_cast<std::size_t>(nd.left), t);
        break;
    }
    if (r) t.set(i);
  }
  return t;
}

bool row_has(const TieCond& u, unsigned a, std::size_t pos) {
  return a < u.size() && u[a].test(pos);
}

// Union closure of a family, each union taken over a nonempty subfamily.
VecSet union_closure(const VecSet& family) {
  std::unordered_set<TieVec> all(family.begin(), family.end());
  std::vector<TieVec> frontier(family.begin(), family.end());
  while (!frontier.empty()) {
    std::vector<TieVec> next;
    for (const auto& x : frontier)
      for (const auto& y : family) {
        TieVec z = x | y;
        if (all.insert(z).second) next.push_back(z);
      }
    frontier.swap(next);
    if (all.size() > 4000000) throw std::runtime_error("union closure too large");
  }
  VecSet out(all.begin(), all.end());
  normalize(out);
  return out;
}

using Profiles128 = unsigned __int128;

int lowest_bit(std::uint64_t x) { return std::countr_zero(x); }
int lowest_bit(Profiles128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  return lo ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
}

// Cluster models with at most 128 valuation profiles (P is a profile bitset). Positions are evaluated
// bottom-up as profile masks; at each <a>psi over a total relation it branches
// on whether psi holds somewhere, which either demands a witness or removes
// the profiles where psi holds.
template <class P>
class ClusterSearch {
 public:
  ClusterSearch(const Closure& c, const TieCond& u, unsigned total_mask, const TieVec& mask)
      : c_(c), u_(u), total_(total_mask), mask_(mask), tv_(c.size(), 0), var_(c.size(), 0) {
    const auto bits = profile_bits(c);
    const std::size_t profiles = std::size_t{1} << c.variables().size();
    all_ = profiles == 8 * sizeof(P) ? ~P{0} : (P{1} << profiles) - 1;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (bits[i] >= 0)
        for (std::size_t s = 0; s < profiles; ++s)
          if (s >> bits[i] & 1U) var_[i] |= P{1} << s;
  }

  VecSet run() {
    step(c_.size(), all_);
    normalize(out_);
    return std::move(out_);
  }

 private:
  bool witnesses(P allowed) const {
    for (std::size_t j : required_)
      if (!(tv_[j] & allowed)) return false;
    return true;
  }

  void step(std::size_t remaining, P allowed) {
    for (std::size_t i = remaining; i-- > 0;) {
      const auto& nd = c_.node(i);
      switch (nd.kind) {
        case Kind::Falsum:
          tv_[i] = 0;
          break;
        case Kind::Var:
          tv_[i] = var_[i];
          break;
        case Kind::Imp:
          tv_[i] = (~tv_[static_cast<std::size_t>(nd.left)] | tv_[static_cast<std::size_t>(nd.right)]) & all_;
          break;
        case Kind::Dia: {
          const auto body = static_cast<std::size_t>(nd.left);
          if (row_has(u_, nd.index, body)) {
            tv_[i] = all_;
          } else if (!(total_ >> nd.index & 1U)) {
            tv_[i] = 0;
          } else {
            const P w = tv_[body];
            if (w & allowed) {
              tv_[i] = all_;
              required_.push_back(body);
              step(i, allowed);
              required_.pop_back();
            }
            const P rest = allowed & ~w;
            if (rest && witnesses(rest)) {
              tv_[i] = 0;
              step(i, rest);
            }
            return;
          }
          break;
        }
      }
    }
    leaf(allowed);
  }

  // Unions over nonempty sets of allowed profiles that meet every demand.
  void leaf(P allowed) {
    TieVec keep = mask_;
    TieVec req(c_.size());
    for (std::size_t j : required_) req.set(j);
    keep |= req;
    const Packing pk(keep);
    if (!pk.fits()) throw std::runtime_error("cluster oracle: projection wider than 64 positions");
    const std::uint64_t need = pk.pack(req);
    std::vector<std::uint64_t> types;
    for (P rest = allowed; rest; rest &= rest - 1) {
      const int s = lowest_bit(rest);
      std::uint64_t t = 0;
      for (std::size_t j = 0; j < pk.pos.size(); ++j)
        if (tv_[pk.pos[j]] >> s & 1U) t |= std::uint64_t{1} << j;
      types.push_back(t);
    }
    const std::uint64_t mask_bits = pk.pack(mask_);
    for (std::uint64_t x : word_unions(std::move(types), static_cast<unsigned>(pk.pos.size()), pk.pos.size()))
      if ((x & need) == need) out_.push_back(pk.unpack(x & mask_bits));
  }

  const Closure& c_;
  const TieCond& u_;
  unsigned total_;
  TieVec mask_;
  P all_ = 0;
  std::vector<P> tv_;
  std::vector<P> var_;
  std::vector<std::size_t> required_;
  VecSet out_;
};

}  // namespace

// ---------------------------------------------------------------- base

VecSet SummandOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (c.size() > 22) throw std::runtime_error(name() + ": realizable enumeration too large");
  auto shared = std::make_shared<const Closure>(c.root());
  VecSet out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.size()); ++m) {
    TieVec v = TieVec::from_mask(c.size(), m);
    if (csat(Tie(shared, v, u))) out.push_back(v & mask);
  }
  normalize(out);
  return out;
}

void SummandOracle::check_alphabet(const Tie& tie) const {
  unsigned a = alphabet();
  if (a != 0 && tie.alphabet() != a)
    throw std::invalid_argument(name() + ": expected alphabet " + std::to_string(a) + ", tie has " +
                                std::to_string(tie.alphabet()));
}

std::optional<VecSet> RealizableCache::find(const Closure& c, const TieCond& u,
                                            const TieVec& mask) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(Key{c.root(), u, mask});
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void RealizableCache::store(const Closure& c, const TieCond& u, const TieVec& mask,
                            const VecSet& s) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (map_.size() > 200000) map_.clear();
  map_.emplace(Key{c.root(), u, mask}, s);
}

// ---------------------------------------------------------------- clusters

ClusterOracle::ClusterOracle(unsigned alphabet, unsigned total_mask, bool singleton)
    : alphabet_(alphabet), total_mask_(total_mask), singleton_(singleton) {}

std::string ClusterOracle::name() const {
  if (singleton_) {
    if (alphabet_ == 1) return total_mask_ ? "S1" : "S0";
    return "S_" + std::to_string(alphabet_) + (total_mask_ ? "(loops)" : "");
  }
  if (alphabet_ == 1 && total_mask_ == 1) return "cluster";
  return "cluster(" + std::to_string(alphabet_) + "," + std::to_string(total_mask_) + ")";
}

FrameClassTag ClusterOracle::tag() const {
  if (singleton_ && alphabet_ == 1)
    return FrameClassTag::of(total_mask_ ? FrameClass::ReflexiveSingleton
                                         : FrameClass::IrreflexiveSingleton);
  if (!singleton_ && alphabet_ == 1 && total_mask_ == 1) return FrameClassTag::of(FrameClass::Clusters);
  return FrameClassTag::modal_clusters(alphabet_, total_mask_);
}

bool ClusterOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  const Closure& c = *tie.closure;
  const auto bits = profile_bits(c);
  const std::uint32_t profiles = 1U << c.variables().size();
  const TieVec& v = tie.v;
  if (singleton_) {
    for (std::uint32_t s = 0; s < profiles; ++s) {
      TieVec t = eval_point(c, bits, s, [&](unsigned a, std::size_t body, const TieVec& cur) {
        return row_has(tie.U, a, body) || ((total_mask_ >> a & 1U) && cur.test(body));
      });
      if (t == v) return true;
    }
    return false;
  }
  // In a cluster <a>psi holds everywhere iff psi holds somewhere, i.e. psi is in v.
  TieVec covered(c.size());
  bool some_point = false;
  for (std::uint32_t s = 0; s < profiles; ++s) {
    TieVec t = eval_point(c, bits, s, [&](unsigned a, std::size_t body, const TieVec&) {
      return row_has(tie.U, a, body) || ((total_mask_ >> a & 1U) && v.test(body));
    });
    if (t.is_subset_of(v)) {
      covered |= t;
      some_point = true;
    }
  }
  return some_point && covered == v;
}

VecSet ClusterOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (auto hit = cache_.find(c, u, mask)) return *hit;
  const auto bits = profile_bits(c);
  const std::size_t k = c.variables().size();
  const std::uint32_t profiles = 1U << k;
  VecSet out;
  if (singleton_) {
    for (std::uint32_t s = 0; s < profiles; ++s) {
      TieVec t = eval_point(c, bits, s, [&](unsigned a, std::size_t body, const TieVec& cur) {
        return row_has(u, a, body) || ((total_mask_ >> a & 1U) && cur.test(body));
      });
      out.push_back(t & mask);
    }
    normalize(out);
    cache_.store(c, u, mask, out);
    return out;
  }
  if (k <= 7) {
    out = k <= 6 ? ClusterSearch<std::uint64_t>(c, u, total_mask_, mask).run()
                 : ClusterSearch<Profiles128>(c, u, total_mask_, mask).run();
    cache_.store(c, u, mask, out);
    return out;
  }
  // Wider valuations: guess the set G of total-diamond bodies that hold somewhere.
  TieVec total_bodies(c.size());
  for (unsigned a = 0; a < c.alphabet(); ++a)
    if (total_mask_ >> a & 1U)
      for (int b : c.bodies(a)) total_bodies.set(static_cast<std::size_t>(b));
  const std::size_t nb = total_bodies.count();
  if (nb > 24) throw std::runtime_error("cluster oracle: too many diamond bodies to enumerate");
  const auto body_list = total_bodies.members();
  const TieVec keep = mask | total_bodies;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << nb); ++g) {
    TieVec G(c.size());
    for (std::size_t j = 0; j < nb; ++j)
      if (g >> j & 1U) G.set(body_list[j]);
    VecSet family;
    for (std::uint32_t s = 0; s < profiles; ++s) {
      TieVec t = eval_point(c, bits, s, [&](unsigned a, std::size_t body, const TieVec&) {
        return row_has(u, a, body) || ((total_mask_ >> a & 1U) && G.test(body));
      });
      if ((t & total_bodies).is_subset_of(G)) family.push_back(t & keep);
    }
    normalize(family);
    for (const TieVec& x : union_closure(family))
      if ((x & total_bodies) == G) out.push_back(x & mask);
  }
  normalize(out);
  cache_.store(c, u, mask, out);
  return out;
}

// ---------------------------------------------------------------- difference frames

DifferenceOracle::DifferenceOracle(DifferenceKind kind, std::size_t extra_worlds)
    : kind_(kind), extra_(extra_worlds) {}

std::string DifferenceOracle::name() const {
  switch (kind_) {
    case DifferenceKind::T0: return "t0_difference";
    case DifferenceKind::Confluent: return "confluent_difference";
    default: return "difference";
  }
}

FrameClassTag DifferenceOracle::tag() const {
  switch (kind_) {
    case DifferenceKind::T0: return FrameClassTag::of(FrameClass::T0DifferenceFrames);
    case DifferenceKind::Confluent: return FrameClassTag::of(FrameClass::ConfluentDifferenceFrames);
    default: return FrameClassTag::of(FrameClass::DifferenceFrames);
  }
}

bool DifferenceOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  const auto all = realizable(*tie.closure, tie.U, TieVec::full(tie.width()));
  return std::binary_search(all.begin(), all.end(), tie.v);
}

VecSet DifferenceOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (auto hit = cache_.find(c, u, mask)) return *hit;
  const auto bits = profile_bits(c);
  const std::size_t k = c.variables().size();
  if (k > 4) throw std::runtime_error("difference oracle: too many variables");
  const std::size_t types = std::size_t{2} << k;  // type = 2*profile + reflexive
  const std::size_t bound = max_worlds(c);
  const std::size_t n = c.size();
  // Points of equal type behave alike, and a third copy never changes truth,
  // so counts range over {0,1,2}.
  std::vector<int> count(types, 0);
  std::vector<std::vector<char>> truth(n, std::vector<char>(types, 0));
  std::vector<int> witnesses(n, 0);
  VecSet out;
  std::unordered_set<TieVec> seen;

  auto evaluate = [&]() {
    TieVec ch(n);
    for (std::size_t i = n; i-- > 0;) {
      const auto& nd = c.node(i);
      int cnt = 0;
      for (std::size_t t = 0; t < types; ++t) {
        if (!count[t]) continue;
        bool r = false;
        switch (nd.kind) {
          case Kind::Falsum:
            break;
          case Kind::Var:
            r = (t >> 1 >> bits[i]) & 1U;
            break;
          case Kind::Imp:
            r = !truth[static_cast<std::size_t>(nd.left)][t] || truth[static_cast<std::size_t>(nd.right)][t];
            break;
          case Kind::Dia: {
            auto body = static_cast<std::size_t>(nd.left);
            if (row_has(u, nd.index, body) && nd.index == 0) {
              r = true;
            } else if (nd.index == 0) {
              int others = witnesses[body] - (truth[body][t] ? 1 : 0);
              r = others > 0 || ((t & 1U) && truth[body][t]);
            } else {
              r = row_has(u, nd.index, body);
            }
            break;
          }
        }
        truth[i][t] = r;
        if (r) cnt += count[t];
      }
      witnesses[i] = cnt;
      if (cnt) ch.set(i);
    }
    TieVec proj = ch & mask;
    if (seen.insert(proj).second) out.push_back(proj);
  };

  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t used,
                                                                       std::size_t irr) {
    if (t == types) {
      if (used == 0) return;
      if (kind_ == DifferenceKind::Confluent && irr == used) {
        // A doubled type stands for any number of copies, so only one or two
        // distinct irreflexive points are excluded.
        bool doubled = false;
        for (int x : count) doubled = doubled || x == 2;
        if (!doubled) return;
      }
      evaluate();
      return;
    }
    for (int m = 0; m <= 2; ++m) {
      std::size_t nu = used + static_cast<std::size_t>(m);
      std::size_t ni = irr + ((t & 1U) ? 0 : static_cast<std::size_t>(m));
      if (nu > bound) break;
      if (kind_ == DifferenceKind::T0 && ni > 1) break;
      count[t] = m;
      rec(t + 1, nu, ni);
    }
    count[t] = 0;
  };
  rec(0, 0, 0);
  normalize(out);
  cache_.store(c, u, mask, out);
  return out;
}

// ---------------------------------------------------------------- union

UnionOracle::UnionOracle(std::vector<OraclePtr> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("union of no oracles");
  alphabet_ = members_.front()->alphabet();
  for (const auto& m : members_)
    if (m->alphabet() != alphabet_) throw std::invalid_argument("union of oracles with different alphabets");
}

std::string UnionOracle::name() const {
  std::string s = "union(";
  for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "," : "") + members_[i]->name();
  return s + ")";
}

bool UnionOracle::csat(const Tie& tie) const {
  for (const auto& m : members_)
    if (m->csat(tie)) return true;
  return false;
}

VecSet UnionOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  VecSet out;
  for (const auto& m : members_) {
    auto r = m->realizable(c, u, mask);
    out.insert(out.end(), r.begin(), r.end());
  }
  normalize(out);
  return out;
}

// ---------------------------------------------------------------- brute force

namespace {

// Blocks of interchangeable worlds for the valuation symmetry reduction.
std::vector<std::vector<World>> symmetric_blocks(const FrameClassTag& tag, const Frame& f) {
  const FrameClassTag* base = &tag;
  while (base->kind == FrameClass::UniversalLifted) base = base->inner.get();
  std::vector<std::vector<World>> blocks;
  switch (base->kind) {
    case FrameClass::Clusters:
    case FrameClass::ModalClusters: {
      blocks.emplace_back();
      for (World w = 0; w < f.world_count(); ++w) blocks.back().push_back(w);
      return blocks;
    }
    case FrameClass::DifferenceFrames:
    case FrameClass::T0DifferenceFrames:
    case FrameClass::ConfluentDifferenceFrames: {
      std::vector<World> refl, irr;
      unsigned r = f.alphabet() - 1;  // the difference relation is the last one
      for (World w = 0; w < f.world_count(); ++w) (f.has_edge(r, w, w) ? refl : irr).push_back(w);
      if (!refl.empty()) blocks.push_back(refl);
      if (!irr.empty()) blocks.push_back(irr);
      return blocks;
    }
    default:
      for (World w = 0; w < f.world_count(); ++w) blocks.push_back({w});
      return blocks;
  }
}

// Bit-parallel evaluation on frames with at most 64 worlds.
struct FastFrame {
  std::size_t n = 0;
  std::vector<std::vector<std::uint64_t>> succ;  // [a][w]

  explicit FastFrame(const Frame& f) : n(f.world_count()), succ(f.alphabet()) {
    if (n > 64) throw std::length_error("brute force limited to 64 worlds");
    for (unsigned a = 0; a < f.alphabet(); ++a) {
      succ[a].assign(n, 0);
      for (const auto& [x, y] : f.relation(a)) succ[a][x] |= std::uint64_t{1} << y;
    }
  }
};

TieVec fast_characterize(const Closure& c, const FastFrame& fr, const std::vector<std::uint64_t>& var_worlds,
                         const TieCond& u, std::vector<std::uint64_t>& tv) {
  const std::size_t n = c.size();
  const std::uint64_t all = fr.n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << fr.n) - 1);
  tv.assign(n, 0);
  TieVec ch(n);
  for (std::size_t i = n; i-- > 0;) {
    const auto& nd = c.node(i);
    std::uint64_t r = 0;
    switch (nd.kind) {
      case Kind::Falsum:
        break;
      case Kind::Var:
        r = var_worlds[i];
        break;
      case Kind::Imp:
        r = (~tv[static_cast<std::size_t>(nd.left)] | tv[static_cast<std::size_t>(nd.right)]) & all;
        break;
      case Kind::Dia: {
        auto body = static_cast<std::size_t>(nd.left);
        if (row_has(u, nd.index, body)) {
          r = all;
        } else if (nd.index < fr.succ.size()) {
          std::uint64_t b = tv[body];
          if (b)
            for (std::size_t w = 0; w < fr.n; ++w)
              if (fr.succ[nd.index][w] & b) r |= std::uint64_t{1} << w;
        }
        break;
      }
    }
    tv[i] = r;
    if (r) ch.set(i);
  }
  return ch;
}

// Enumerates profile assignments (profile per world, non-decreasing within blocks).
bool for_each_assignment(const std::vector<std::vector<World>>& blocks, std::size_t worlds,
                         std::uint32_t profiles,
                         const std::function<bool(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> prof(worlds, 0);
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (block, index in block)
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t j = 0; j < blocks[b].size(); ++j) slots.emplace_back(b, j);
  std::function<bool(std::size_t)> rec = [&](std::size_t s) -> bool {
    if (s == slots.size()) return fn(prof);
    auto [b, j] = slots[s];
    std::uint32_t lo = j == 0 ? 0 : prof[blocks[b][j - 1]];
    for (std::uint32_t p = lo; p < profiles; ++p) {
      prof[blocks[b][j]] = p;
      if (rec(s + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

BruteOracle::BruteOracle(FrameClassTag tag, ModelBudget budget) : tag_(std::move(tag)), budget_(budget) {
  if (budget_.max_worlds < 1) throw std::invalid_argument("budget must allow one world");
}

std::string BruteOracle::name() const {
  return "brute(" + tag_.name() + "," + std::to_string(budget_.max_worlds) + ")";
}

bool BruteOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  const auto all = realizable(*tie.closure, tie.U, TieVec::full(tie.width()));
  return std::binary_search(all.begin(), all.end(), tie.v);
}

VecSet BruteOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (auto hit = cache_.find(c, u, mask)) return *hit;
  const auto bits = profile_bits(c);
  const std::uint32_t profiles = 1U << c.variables().size();
  std::unordered_set<TieVec> seen;
  std::vector<std::uint64_t> tv;
  std::vector<std::uint64_t> var_worlds(c.size());
  for (const Frame& f : enumerate_frames(tag_, budget_.max_worlds)) {
    FastFrame ff(f);
    auto blocks = symmetric_blocks(tag_, f);
    for_each_assignment(blocks, f.world_count(), profiles, [&](const std::vector<std::uint32_t>& prof) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        var_worlds[i] = 0;
        if (bits[i] < 0) continue;
        for (std::size_t w = 0; w < prof.size(); ++w)
          if (prof[w] >> bits[i] & 1U) var_worlds[i] |= std::uint64_t{1} << w;
      }
      seen.insert(fast_characterize(c, ff, var_worlds, u, tv) & mask);
      return false;
    });
  }
  VecSet out(seen.begin(), seen.end());
  normalize(out);
  cache_.store(c, u, mask, out);
  return out;
}

bool for_each_model(const FrameClassTag& tag, std::size_t max_worlds, const std::vector<unsigned>& vars,
                    const std::function<bool(const Model&)>& fn) {
  if (vars.size() > kMaxProfileBits) throw std::runtime_error("too many variables for enumeration");
  const std::uint32_t profiles = 1U << vars.size();
  for (const Frame& f : enumerate_frames(tag, max_worlds)) {
    auto blocks = symmetric_blocks(tag, f);
    bool stop = for_each_assignment(blocks, f.world_count(), profiles, [&](const std::vector<std::uint32_t>& prof) {
      std::vector<std::vector<World>> val(vars.empty() ? 0 : vars.back() + 1);
      for (std::size_t j = 0; j < vars.size(); ++j)
        for (World w = 0; w < prof.size(); ++w)
          if (prof[w] >> j & 1U) val[vars[j]].push_back(w);
      return fn(make_model(f, std::move(val)));
    });
    if (stop) return true;
  }
  return false;
}

std::optional<std::pair<Model, World>> find_model(const FrameClassTag& tag, std::size_t max_worlds,
                                                  const Formula& f) {
  Closure c(f);
  std::optional<std::pair<Model, World>> found;
  const TieCond none = empty_cond(c.size(), tag.frame_alphabet());
  for_each_model(tag, max_worlds, c.variables(), [&](const Model& m) {
    TruthTable tt(c, m, none);
    for (World w = 0; w < m.frame.world_count(); ++w)
      if (tt.at(0, w)) {
        found.emplace(m, w);
        return true;
      }
    return false;
  });
  return found;
}

// ---------------------------------------------------------------- factories

OraclePtr cluster_oracle() { return std::make_shared<ClusterOracle>(1, 1, false); }
OraclePtr singleton_oracle(bool reflexive, unsigned alphabet) {
  unsigned mask = reflexive ? (alphabet >= 32 ? ~0U : (1U << alphabet) - 1) : 0;
  return std::make_shared<ClusterOracle>(alphabet, mask, true);
}
OraclePtr difference_oracle() { return std::make_shared<DifferenceOracle>(DifferenceKind::All); }
OraclePtr t0_difference_oracle() { return std::make_shared<DifferenceOracle>(DifferenceKind::T0); }
OraclePtr confluent_difference_oracle() { return std::make_shared<DifferenceOracle>(DifferenceKind::Confluent); }
OraclePtr union_oracle(std::vector<OraclePtr> members) {
  return std::make_shared<UnionOracle>(std::move(members));
}
OraclePtr brute_oracle(const FrameClassTag& tag, std::size_t max_worlds) {
  return std::make_shared<BruteOracle>(tag, ModelBudget{max_worlds});
}

bool cluster_csat(const Tie& tie) { return ClusterOracle(1, 1, false).csat(tie); }
bool difference_csat(const Tie& tie) { return DifferenceOracle(DifferenceKind::All).csat(tie); }
bool t0_difference_csat(const Tie& tie) { return DifferenceOracle(DifferenceKind::T0).csat(tie); }
bool singleton_csat(const Tie& tie, bool reflexive, unsigned alphabet) {
  return singleton_oracle(reflexive, alphabet)->csat(tie);
}
bool brute_csat(const FrameClassTag& tag, const ModelBudget& budget, const Tie& tie) {
  return BruteOracle(tag, budget).csat(tie);
}

}  // namespace msum
