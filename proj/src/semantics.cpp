#include "msum/semantics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace msum {

Frame::Frame(std::size_t worlds, std::vector<Relation> relations)
    : worlds_(worlds), relations_(std::move(relations)) {
  succ_.resize(relations_.size(), std::vector<std::vector<World>>(worlds_));
  for (std::size_t a = 0; a < relations_.size(); ++a) {
    auto& r = relations_[a];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    for (const auto& [u, v] : r) {
      if (u >= worlds_ || v >= worlds_) throw std::out_of_range("edge endpoint outside frame");
      succ_[a][u].push_back(v);
    }
  }
}

bool Frame::has_edge(unsigned a, World u, World v) const {
  const auto& s = successors(a, u);
  return std::binary_search(s.begin(), s.end(), v);
}

bool Model::holds(unsigned var, World w) const {
  if (var >= valuation.size()) return false;
  const auto& ws = valuation[var];
  return std::binary_search(ws.begin(), ws.end(), w);
}

bool Model::operator==(const Model& o) const {
  if (!(frame == o.frame)) return false;
  std::size_t n = std::max(valuation.size(), o.valuation.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = i < valuation.size() ? valuation[i] : std::vector<World>{};
    const auto& b = i < o.valuation.size() ? o.valuation[i] : std::vector<World>{};
    if (a != b) return false;
  }
  return true;
}

Model make_model(Frame frame, std::vector<std::vector<World>> valuation) {
  for (auto& ws : valuation) {
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    for (World w : ws)
      if (w >= frame.world_count()) throw std::out_of_range("valuation world outside frame");
  }
  while (!valuation.empty() && valuation.back().empty()) valuation.pop_back();
  return Model{std::move(frame), std::move(valuation)};
}

// ---------------------------------------------------------------- truth

TruthTable::TruthTable(const Closure& c, const Model& m, const TieCond& u)
    : n_(c.size()), worlds_(m.frame.world_count()), words_((worlds_ + 63) / 64) {
  if (words_ == 0) words_ = 1;
  bits_.assign(n_ * words_, 0);
  const Frame& fr = m.frame;
  auto row = [&](std::size_t pos) { return bits_.data() + pos * words_; };
  std::uint64_t tail = worlds_ % 64 == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (worlds_ % 64)) - 1);
  for (std::size_t i = n_; i-- > 0;) {
    const auto& nd = c.node(i);
    std::uint64_t* out = row(i);
    switch (nd.kind) {
      case Kind::Falsum:
        break;
      case Kind::Var:
        if (nd.index < m.valuation.size())
          for (World w : m.valuation[nd.index]) out[w >> 6] |= std::uint64_t{1} << (w & 63);
        break;
      case Kind::Imp: {
        const std::uint64_t* l = row(static_cast<std::size_t>(nd.left));
        const std::uint64_t* r = row(static_cast<std::size_t>(nd.right));
        for (std::size_t k = 0; k < words_; ++k) out[k] = ~l[k] | r[k];
        out[words_ - 1] &= tail;
        if (worlds_ == 0) out[0] = 0;
        break;
      }
      case Kind::Dia: {
        bool forced = nd.index < u.size() && u[nd.index].test(static_cast<std::size_t>(nd.left));
        if (forced) {
          for (std::size_t k = 0; k < words_; ++k) out[k] = ~std::uint64_t{0};
          out[words_ - 1] &= tail;
          if (worlds_ == 0) out[0] = 0;
          break;
        }
        if (nd.index >= fr.alphabet()) break;
        const std::uint64_t* b = row(static_cast<std::size_t>(nd.left));
        for (World w = 0; w < worlds_; ++w) {
          for (World v : fr.successors(nd.index, w)) {
            if ((b[v >> 6] >> (v & 63)) & 1U) {
              out[w >> 6] |= std::uint64_t{1} << (w & 63);
              break;
            }
          }
        }
        break;
      }
    }
  }
}

bool TruthTable::anywhere(std::size_t pos) const {
  for (std::size_t k = 0; k < words_; ++k)
    if (bits_[pos * words_ + k]) return true;
  return false;
}

TieVec TruthTable::characterize() const {
  TieVec v(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (anywhere(i)) v.set(i);
  return v;
}

TieVec TruthTable::at_world(World w) const {
  TieVec v(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (at(i, w)) v.set(i);
  return v;
}

namespace {

bool in_set(const FormulaSet& s, const Formula& f) {
  return std::find(s.begin(), s.end(), f) != s.end();
}

class CondEvaluator {
 public:
  CondEvaluator(const Model& m, const Condition& g) : m_(m), g_(g) {}

  bool eval(const Formula& f, World w) {
    auto& row = memo_[f];
    if (row.empty()) row.assign(m_.frame.world_count(), -1);
    if (row[w] >= 0) return row[w] == 1;
    bool r = false;
    switch (f.kind()) {
      case Kind::Falsum:
        r = false;
        break;
      case Kind::Var:
        r = m_.holds(f.index(), w);
        break;
      case Kind::Imp:
        r = !eval(f.left(), w) || eval(f.right(), w);
        break;
      case Kind::Dia: {
        unsigned a = f.index();
        if (a < g_.size() && in_set(g_[a], f.body())) {
          r = true;
        } else if (a < m_.frame.alphabet()) {
          for (World v : m_.frame.successors(a, w))
            if (eval(f.body(), v)) {
              r = true;
              break;
            }
        }
        break;
      }
    }
    memo_[f][w] = r ? 1 : 0;
    return r;
  }

 private:
  const Model& m_;
  const Condition& g_;
  std::unordered_map<Formula, std::vector<signed char>> memo_;
};

}  // namespace

bool eval(const Model& m, World w, const Formula& f) { return eval_cond(m, w, {}, f); }

bool eval_cond(const Model& m, World w, const Condition& gamma, const Formula& f) {
  if (w >= m.frame.world_count()) throw std::out_of_range("world outside model");
  CondEvaluator ev(m, gamma);
  return ev.eval(f, w);
}

FormulaSet characterize(const Formula& f, const Model& m, const Condition& gamma) {
  CondEvaluator ev(m, gamma);
  FormulaSet out;
  for (const Formula& g : subformula_chain(f)) {
    for (World w = 0; w < m.frame.world_count(); ++w)
      if (ev.eval(g, w)) {
        out.push_back(g);
        break;
      }
  }
  return out;
}

TieVec characterize_vec(const Closure& c, const Model& m, const TieCond& u) {
  return TruthTable(c, m, u).characterize();
}

// ---------------------------------------------------------------- sums

std::vector<std::size_t> component_offsets(const std::vector<Frame>& family) {
  std::vector<std::size_t> off(family.size() + 1, 0);
  for (std::size_t i = 0; i < family.size(); ++i) off[i + 1] = off[i] + family[i].world_count();
  return off;
}

Frame sum(const Frame& index, const std::vector<Frame>& family) {
  if (index.world_count() != family.size())
    throw std::invalid_argument("family size must match index frame");
  unsigned A = index.alphabet();
  for (const auto& f : family)
    if (f.alphabet() != A) throw std::invalid_argument("alphabet mismatch in sum");
  auto off = component_offsets(family);
  std::vector<Relation> rel(A);
  for (unsigned a = 0; a < A; ++a) {
    for (std::size_t i = 0; i < family.size(); ++i)
      for (const auto& [u, v] : family[i].relation(a))
        rel[a].emplace_back(static_cast<World>(off[i] + u), static_cast<World>(off[i] + v));
    for (const auto& [i, j] : index.relation(a)) {
      if (i == j) continue;
      for (std::size_t u = 0; u < family[i].world_count(); ++u)
        for (std::size_t v = 0; v < family[j].world_count(); ++v)
          rel[a].emplace_back(static_cast<World>(off[i] + u), static_cast<World>(off[j] + v));
    }
  }
  return Frame(off.back(), std::move(rel));
}

Model sum(const Frame& index, const std::vector<Model>& family) {
  std::vector<Frame> frames;
  for (const auto& m : family) frames.push_back(m.frame);
  auto off = component_offsets(frames);
  std::vector<std::vector<World>> val;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& v = family[i].valuation;
    if (val.size() < v.size()) val.resize(v.size());
    for (std::size_t p = 0; p < v.size(); ++p)
      for (World w : v[p]) val[p].push_back(static_cast<World>(off[i] + w));
  }
  return make_model(sum(index, frames), std::move(val));
}

namespace {

Frame place_on(unsigned a, const Frame& index, unsigned A) {
  if (index.alphabet() != 1) throw std::invalid_argument("index frame must be unimodal");
  if (a >= A) throw std::out_of_range("modality outside alphabet");
  std::vector<Relation> rel(A);
  rel[a] = index.relation(0);
  return Frame(index.world_count(), std::move(rel));
}

unsigned family_alphabet(const std::vector<Frame>& family) {
  if (family.empty()) throw std::invalid_argument("empty family");
  return family.front().alphabet();
}

}  // namespace

Frame a_sum(unsigned a, const Frame& index, const std::vector<Frame>& family) {
  return sum(place_on(a, index, family_alphabet(family)), family);
}

Model a_sum(unsigned a, const Frame& index, const std::vector<Model>& family) {
  if (family.empty()) throw std::invalid_argument("empty family");
  return sum(place_on(a, index, family.front().frame.alphabet()), family);
}

Frame plus_a(unsigned a, const Frame& f, const Frame& g) {
  return a_sum(a, chain_frame(2, true), {f, g});
}

Model plus_a(unsigned a, const Model& f, const Model& g) {
  return a_sum(a, chain_frame(2, true), std::vector<Model>{f, g});
}

Frame disjoint_union(const std::vector<Frame>& family) {
  return sum(empty_frame(family.size(), family_alphabet(family)), family);
}

Frame universal_lift(const Frame& f) {
  std::vector<Relation> rel;
  rel.push_back(total_frame(f.world_count()).relation(0));
  for (const auto& r : f.relations()) rel.push_back(r);
  return Frame(f.world_count(), std::move(rel));
}

Frame empty_lift(const Frame& f, unsigned n) {
  std::vector<Relation> rel(n);
  for (const auto& r : f.relations()) rel.push_back(r);
  return Frame(f.world_count(), std::move(rel));
}

Model universal_lift(const Model& m) { return make_model(universal_lift(m.frame), m.valuation); }

Frame lex_sum(const Frame& index, const std::vector<Frame>& family) {
  if (index.alphabet() != 1) throw std::invalid_argument("index frame must be unimodal");
  if (index.world_count() != family.size())
    throw std::invalid_argument("family size must match index frame");
  unsigned A = family_alphabet(family);
  auto off = component_offsets(family);
  std::vector<Relation> rel(A + 1);
  for (const auto& [i, j] : index.relation(0))
    for (std::size_t u = 0; u < family[i].world_count(); ++u)
      for (std::size_t v = 0; v < family[j].world_count(); ++v)
        rel[0].emplace_back(static_cast<World>(off[i] + u), static_cast<World>(off[j] + v));
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].alphabet() != A) throw std::invalid_argument("alphabet mismatch in sum");
    for (unsigned a = 0; a < A; ++a)
      for (const auto& [u, v] : family[i].relation(a))
        rel[a + 1].emplace_back(static_cast<World>(off[i] + u), static_cast<World>(off[i] + v));
  }
  return Frame(off.back(), std::move(rel));
}

Frame lex_product(const Frame& index, const Frame& f) {
  return lex_sum(index, std::vector<Frame>(index.world_count(), f));
}

Skeleton skeleton_decompose(const Frame& f) {
  if (f.alphabet() < 1) throw std::invalid_argument("frame has no relation");
  const std::size_t n = f.world_count();
  for (World w = 0; w < n; ++w)
    if (!f.has_edge(0, w, w)) throw std::invalid_argument("relation is not reflexive");
  for (const auto& [u, v] : f.relation(0))
    for (World x : f.successors(0, v))
      if (!f.has_edge(0, u, x)) throw std::invalid_argument("relation is not transitive");
  std::vector<int> cluster(n, -1);
  Skeleton sk;
  for (World w = 0; w < n; ++w) {
    if (cluster[w] >= 0) continue;
    int id = static_cast<int>(sk.clusters.size());
    sk.clusters.emplace_back();
    for (World v = w; v < n; ++v)
      if (f.has_edge(0, w, v) && f.has_edge(0, v, w)) {
        cluster[v] = id;
        sk.clusters.back().push_back(v);
      }
  }
  Relation order;
  for (const auto& [u, v] : f.relation(0))
    if (cluster[u] != cluster[v])
      order.emplace_back(static_cast<World>(cluster[u]), static_cast<World>(cluster[v]));
  sk.order = Frame(sk.clusters.size(), {order});
  return sk;
}

Condition external_condition(const Formula& f, const Model& m, const std::vector<World>& V,
                             const Condition& gamma) {
  unsigned A = std::max<unsigned>(m.frame.alphabet(), static_cast<unsigned>(gamma.size()));
  Condition delta(A);
  for (std::size_t a = 0; a < gamma.size(); ++a) delta[a] = gamma[a];
  std::vector<char> inside(m.frame.world_count(), 0);
  for (World w : V) inside.at(w) = 1;
  auto chain = subformula_chain(f);
  CondEvaluator ev(m, gamma);
  for (unsigned a = 0; a < m.frame.alphabet(); ++a) {
    std::vector<char> outside_succ(m.frame.world_count(), 0);
    for (World w : V)
      for (World v : m.frame.successors(a, w))
        if (!inside[v]) outside_succ[v] = 1;
    for (const Formula& chi : chain) {
      if (in_set(delta[a], chi)) continue;
      for (World v = 0; v < m.frame.world_count(); ++v)
        if (outside_succ[v] && ev.eval(chi, v)) {
          delta[a].push_back(chi);
          break;
        }
    }
  }
  return delta;
}

Model restrict_model(const Model& m, const std::vector<World>& V) {
  std::vector<World> ws = V;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  std::map<World, World> idx;
  for (std::size_t i = 0; i < ws.size(); ++i) idx[ws[i]] = static_cast<World>(i);
  std::vector<Relation> rel(m.frame.alphabet());
  for (unsigned a = 0; a < m.frame.alphabet(); ++a)
    for (const auto& [u, v] : m.frame.relation(a))
      if (idx.count(u) && idx.count(v)) rel[a].emplace_back(idx[u], idx[v]);
  std::vector<std::vector<World>> val(m.valuation.size());
  for (std::size_t p = 0; p < m.valuation.size(); ++p)
    for (World w : m.valuation[p])
      if (idx.count(w)) val[p].push_back(idx[w]);
  return make_model(Frame(ws.size(), std::move(rel)), std::move(val));
}

Frame chain_frame(std::size_t n, bool strict) {
  Relation r;
  for (World i = 0; i < n; ++i)
    for (World j = strict ? i + 1 : i; j < n; ++j) r.emplace_back(i, j);
  return Frame(n, {r});
}

Frame total_frame(std::size_t n) {
  Relation r;
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j) r.emplace_back(i, j);
  return Frame(n, {r});
}

Frame empty_frame(std::size_t n, unsigned alphabet) {
  return Frame(n, std::vector<Relation>(alphabet));
}

}  // namespace msum
