#include "msum/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace msum {

Formula translate_cond(const Formula& f, const Condition& gamma) {
  std::vector<std::unordered_set<Formula>> rows;
  for (const auto& row : gamma) rows.emplace_back(row.begin(), row.end());
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> tr = [&](const Formula& g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula out;
    switch (g.kind()) {
      case Kind::Falsum:
      case Kind::Var:
        out = g;
        break;
      case Kind::Imp:
        out = Formula::imp(tr(g.left()), tr(g.right()));
        break;
      case Kind::Dia:
        if (g.index() < rows.size() && rows[g.index()].count(g.body()))
          out = top();
        else
          out = Formula::dia(g.index(), tr(g.body()));
        break;
    }
    memo.emplace(g, out);
    return out;
  };
  return tr(f);
}

Formula delta_m(const Tie& tie, unsigned m) {
  const Closure& c = *tie.closure;
  const Condition gamma = decode_condition(c, tie.U);
  const unsigned A = tie.alphabet();
  std::vector<Formula> conjuncts;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Formula cur = translate_cond(c.at(i), gamma);
    std::vector<Formula> reach{cur};
    for (unsigned n = 1; n <= m; ++n) {
      std::vector<Formula> step;
      for (unsigned a = 0; a < A; ++a) step.push_back(Formula::dia(a, cur));
      cur = disj_all(step);
      reach.push_back(cur);
    }
    Formula d = disj_all(reach);
    conjuncts.push_back(tie.v.test(i) ? d : neg(d));
  }
  return conj_all(conjuncts);
}

bool SpaanResult::admits(const std::function<bool(const Formula&)>& member) const {
  if (!member(tr_root)) return false;
  for (const auto& fr : fresh) {
    const Formula p = Formula::var(fr.var);
    const bool in = member(p);
    if (member(fr.body) != in || member(neg(p)) == in) return false;
  }
  return true;
}

SpaanResult spaan_eliminate(const Formula& f) {
  SpaanResult res;
  std::unordered_map<Formula, unsigned> var_of;
  unsigned next = max_variable_plus_one(f);
  for (const auto& g : subformula_chain(f))
    if (g.kind() == Kind::Dia && g.index() == 0) var_of.emplace(g, next++);

  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> tr = [&](const Formula& g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula out;
    switch (g.kind()) {
      case Kind::Falsum:
      case Kind::Var:
        out = g;
        break;
      case Kind::Imp:
        out = Formula::imp(tr(g.left()), tr(g.right()));
        break;
      case Kind::Dia:
        out = g.index() == 0 ? Formula::var(var_of.at(g)) : Formula::dia(g.index(), tr(g.body()));
        break;
    }
    memo.emplace(g, out);
    return out;
  };

  res.tr_root = tr(f);
  std::vector<Formula> extra;
  for (const auto& g : subformula_chain(f)) {
    if (g.kind() != Kind::Dia || g.index() != 0) continue;
    SpaanResult::Fresh fr{g, tr(g.body()), var_of.at(g)};
    extra.push_back(conj(fr.body, neg(Formula::var(fr.var))));
    res.fresh.push_back(fr);
  }
  res.xi = extra.empty() ? res.tr_root : conj(res.tr_root, conj_all(extra));
  return res;
}

bool sat_univ(const Formula& f, const SummandOracle& base) {
  const SpaanResult res = spaan_eliminate(f);
  auto down = [](const Formula& g) {
    return map_modalities(g, [](unsigned a) {
      if (a == 0) throw std::logic_error("universal modality left after elimination");
      return a - 1;
    });
  };
  const Closure c(down(res.xi));
  const unsigned A = base.alphabet() ? base.alphabet() : std::max(1U, c.alphabet());
  if (c.alphabet() > A) throw std::invalid_argument("formula exceeds the alphabet of the lifted class");

  // Only the positions the constraint looks at are kept.
  TieVec mask(c.size());
  auto mark = [&](const Formula& g) {
    int p = c.position(down(g));
    if (p < 0) throw std::logic_error("constraint formula missing from the closure");
    mask.set(static_cast<std::size_t>(p));
  };
  mark(res.tr_root);
  for (const auto& fr : res.fresh) {
    mark(fr.body);
    mark(Formula::var(fr.var));
    mark(neg(Formula::var(fr.var)));
  }
  for (const TieVec& r : base.realizable(c, empty_cond(c.size(), A), mask)) {
    auto member = [&](const Formula& g) { return r.test(static_cast<std::size_t>(c.position(down(g)))); };
    if (res.admits(member)) return true;
  }
  return false;
}

Formula csat_to_sat_univ(const Tie& tie) {
  const Closure& c = *tie.closure;
  auto up = [](const Formula& g) { return map_modalities(g, [](unsigned a) { return a + 1; }); };
  auto shifted = std::make_shared<const Closure>(up(c.root()));
  auto lift_set = [&](const TieVec& v) {
    FormulaSet s;
    for (const auto& g : decode(c, v)) s.push_back(up(g));
    return encode_set(*shifted, s);
  };
  TieCond U{TieVec(shifted->size())};
  for (const auto& row : tie.U) U.push_back(lift_set(row));
  return delta_m(Tie(shifted, lift_set(tie.v), U), 1);
}

Formula relativize(const Formula& f) {
  const Formula q = Formula::var(max_variable_plus_one(f));
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> tr = [&](const Formula& g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula out;
    switch (g.kind()) {
      case Kind::Falsum:
      case Kind::Var:
        out = g;
        break;
      case Kind::Imp:
        out = Formula::imp(tr(g.left()), tr(g.right()));
        break;
      case Kind::Dia:
        out = Formula::dia(g.index(), conj(tr(g.body()), q));
        break;
    }
    memo.emplace(g, out);
    return out;
  };
  return conj(q, tr(f));
}

// ---------------------------------------------------------------- lifted oracle

UniversalLiftOracle::UniversalLiftOracle(OraclePtr base) : base_(std::move(base)) {}

std::string UniversalLiftOracle::name() const { return "lift(" + base_->name() + ")"; }

FrameClassTag UniversalLiftOracle::tag() const { return FrameClassTag::lifted(base_->tag()); }

unsigned UniversalLiftOracle::alphabet() const { return base_->alphabet() ? base_->alphabet() + 1 : 0; }

namespace {

// Under U and a guess z of which <0>-bodies hold somewhere, every <0>psi is a
// constant and the lifted tie reduces to plain satisfiability on the base class.
// Returns the characterizations consistent with z.
VecSet lift_characterizations(const Closure& c, const TieCond& U, const TieVec& z, const SummandOracle& base) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> tr = [&](const Formula& g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula out;
    switch (g.kind()) {
      case Kind::Falsum:
      case Kind::Var:
        out = g;
        break;
      case Kind::Imp:
        out = Formula::imp(tr(g.left()), tr(g.right()));
        break;
      case Kind::Dia: {
        const auto p = static_cast<std::size_t>(c.position(g.body()));
        if (g.index() == 0)
          out = U[0].test(p) || z.test(p) ? top() : Formula::falsum();
        else
          out = U[g.index()].test(p) ? top() : Formula::dia(g.index() - 1, tr(g.body()));
        break;
      }
    }
    memo.emplace(g, out);
    return out;
  };
  // Bodies that occur only under <0> vanish from tr(root), so all of them are
  // gathered under one carrier formula.
  Formula carrier = tr(c.at(c.size() - 1));
  for (std::size_t i = c.size() - 1; i-- > 0;) carrier = Formula::imp(tr(c.at(i)), carrier);
  const Closure flat(carrier);
  std::vector<std::size_t> pos(c.size());
  TieVec mask(flat.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    pos[i] = static_cast<std::size_t>(flat.position(tr(c.at(i))));
    mask.set(pos[i]);
  }
  const unsigned A = base.alphabet() ? base.alphabet() : std::max(1U, flat.alphabet());
  VecSet out;
  for (const TieVec& r : base.realizable(flat, empty_cond(flat.size(), A), mask)) {
    TieVec v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (r.test(pos[i])) v.set(i);
    bool ok = true;
    for (int b : c.bodies(0)) ok = ok && v.test(static_cast<std::size_t>(b)) == z.test(static_cast<std::size_t>(b));
    if (ok) out.push_back(v);
  }
  normalize(out);
  return out;
}

}  // namespace

bool UniversalLiftOracle::csat(const Tie& tie) const {
  check_alphabet(tie);
  const VecSet vs = lift_characterizations(*tie.closure, tie.U, tie.v, *base_);
  return std::binary_search(vs.begin(), vs.end(), tie.v);
}

VecSet UniversalLiftOracle::realizable(const Closure& c, const TieCond& u, const TieVec& mask) const {
  if (auto hit = cache_.find(c, u, mask)) return *hit;
  const auto& b0 = c.bodies(0);
  if (b0.size() > 20) throw std::runtime_error("too many universal diamonds");
  VecSet out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << b0.size()); ++m) {
    TieVec z(c.size());
    for (std::size_t j = 0; j < b0.size(); ++j)
      if (m >> j & 1U) z.set(static_cast<std::size_t>(b0[j]));
    for (const TieVec& v : lift_characterizations(c, u, z, *base_)) out.push_back(v & mask);
  }
  normalize(out);
  cache_.store(c, u, mask, out);
  return out;
}

OraclePtr universal_lift_oracle(OraclePtr base) { return std::make_shared<UniversalLiftOracle>(std::move(base)); }

// ---------------------------------------------------------------- QBF

Qbf parse_qbf(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected ':' after the prefix", text.size());
  Qbf q;
  std::size_t i = 0;
  while (i < colon) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const char k = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (k != 'E' && k != 'A') throw ParseError("expected quantifier E or A", i);
    ++i;
    std::size_t j = i;
    while (j < colon && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw ParseError("expected variable index", i);
    const unsigned idx = static_cast<unsigned>(std::stoul(std::string(text.substr(i, j - i))));
    if (idx != q.prefix.size() + 1)
      throw ParseError("quantifier " + std::to_string(q.prefix.size() + 1) + " must bind p" +
                           std::to_string(q.prefix.size() + 1),
                       start);
    q.prefix.emplace_back(k == 'A', idx);
    i = j;
  }
  try {
    q.matrix = parse(text.substr(colon + 1), 0);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in matrix: ") + e.what(), colon + 1 + e.position());
  }
  for (unsigned v : variables_of(q.matrix))
    if (v < 1 || v > q.prefix.size())
      throw ParseError("matrix uses unquantified variable p" + std::to_string(v), colon + 1);
  return q;
}

std::string render_qbf(const Qbf& q) {
  std::string s;
  for (const auto& [universal, v] : q.prefix) {
    if (!s.empty()) s += ' ';
    s += (universal ? 'A' : 'E') + std::to_string(v);
  }
  return s + " : " + render(q.matrix);
}

namespace {

bool prop_eval(const Formula& f, const std::vector<bool>& val) {
  switch (f.kind()) {
    case Kind::Falsum:
      return false;
    case Kind::Var:
      return f.index() < val.size() && val[f.index()];
    case Kind::Imp:
      return !prop_eval(f.left(), val) || prop_eval(f.right(), val);
    case Kind::Dia:
      break;
  }
  throw std::invalid_argument("modal operator in a QBF matrix");
}

bool qbf_rec(const Qbf& q, std::size_t i, std::vector<bool>& val) {
  if (i == q.size()) return prop_eval(q.matrix, val);
  const unsigned v = q.prefix[i].second;
  val[v] = false;
  const bool r0 = qbf_rec(q, i + 1, val);
  if (q.prefix[i].first ? !r0 : r0) return r0;
  val[v] = true;
  return qbf_rec(q, i + 1, val);
}

}  // namespace

bool qbf_eval(const Qbf& q) {
  if (q.size() > 20) throw std::invalid_argument("qbf_eval supports at most 20 quantifiers");
  std::vector<bool> val(q.size() + 1, false);
  return qbf_rec(q, 0, val);
}

Formula box_n(unsigned a, unsigned n, const Formula& f) {
  Formula g = f;
  for (unsigned i = 0; i < n; ++i) g = box(a, g);
  return g;
}

Formula box_upto(unsigned a, unsigned n, const Formula& f) {
  std::vector<Formula> parts;
  for (unsigned k = 0; k <= n; ++k) parts.push_back(box_n(a, k, f));
  return conj_all(parts);
}

Formula ladner_encode(const Qbf& q) {
  const auto m = static_cast<unsigned>(q.size());
  if (m == 0) throw std::invalid_argument("empty quantifier prefix");
  auto qv = [&](unsigned i) { return Formula::var(m + 1 + i); };
  auto p = [](unsigned i) { return Formula::var(i); };
  std::vector<Formula> cs{qv(0)};
  for (unsigned i = 0; i < m; ++i) cs.push_back(box_upto(0, m, Formula::imp(qv(i), Formula::dia(0, qv(i + 1)))));
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = i + 1; j <= m; ++j) cs.push_back(box_upto(0, m, Formula::imp(qv(i), neg(qv(j)))));
  cs.push_back(box_n(0, m, Formula::imp(qv(m), q.matrix)));
  for (unsigned i = 0; i < m; ++i) {
    if (!q.prefix[i].first) continue;
    Formula branch = conj(Formula::dia(0, conj(qv(i + 1), p(i + 1))), Formula::dia(0, conj(qv(i + 1), neg(p(i + 1)))));
    cs.push_back(box_n(0, i, Formula::imp(qv(i), branch)));
  }
  for (unsigned i = 1; i + 1 <= m; ++i) {
    Formula keep = disj(box_upto(0, m, p(i)), box_upto(0, m, neg(p(i))));
    cs.push_back(box_n(0, i, Formula::imp(qv(i), keep)));
  }
  return conj_all(cs);
}

QuantifierTree quantifier_tree(const Qbf& q) {
  QuantifierTree t;
  std::vector<World> parent;
  t.nodes.push_back({});
  parent.push_back(0);
  Relation edges;
  std::size_t level_begin = 0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const std::size_t level_end = t.nodes.size();
    for (std::size_t n = level_begin; n < level_end; ++n) {
      for (int bit = 0; bit <= (q.prefix[k].first ? 1 : 0); ++bit) {
        auto seq = t.nodes[n];
        seq.push_back(bit);
        edges.emplace_back(static_cast<World>(n), static_cast<World>(t.nodes.size()));
        t.nodes.push_back(std::move(seq));
        parent.push_back(static_cast<World>(n));
      }
    }
    level_begin = level_end;
  }
  Relation star;
  for (World w = 0; w < t.nodes.size(); ++w) {
    World x = w;
    for (;;) {
      star.emplace_back(x, w);
      if (x == 0) break;
      x = parent[x];
    }
  }
  std::sort(star.begin(), star.end());
  t.tree = Frame(t.nodes.size(), {edges});
  t.closure = Frame(t.nodes.size(), {star});
  return t;
}

}  // namespace msum
