#include "msum/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace msum {

struct Formula::Node {
  Kind kind;
  unsigned index;
  Formula left;
  Formula right;
  std::size_t size;
  std::size_t hash;
};

Kind Formula::kind() const { return node_->kind; }
unsigned Formula::index() const { return node_->index; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula() : Formula(falsum()) {}

Formula Formula::falsum() {
  // The falsum node has no children; left/right default-construct would recurse.
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::shared_ptr<Node>(new Node{Kind::Falsum, 0, Formula(nullptr), Formula(nullptr), 1,
                                            0x51ed27});
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

Formula Formula::var(unsigned index) {
  auto n = std::make_shared<Node>(
      Node{Kind::Var, index, Formula(nullptr), Formula(nullptr), 1, mix(0x7a11, index)});
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::imp(const Formula& lhs, const Formula& rhs) {
  std::size_t h = mix(mix(0x1b3, lhs.hash()), rhs.hash());
  auto n = std::make_shared<Node>(Node{Kind::Imp, 0, lhs, rhs, 1 + lhs.size() + rhs.size(), h});
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::dia(unsigned modality, const Formula& body) {
  std::size_t h = mix(mix(0xd1a, modality), body.hash());
  auto n = std::make_shared<Node>(
      Node{Kind::Dia, modality, body, Formula(nullptr), 1 + body.size(), h});
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

const Formula& Formula::left() const {
  if (kind() != Kind::Imp && kind() != Kind::Dia) throw std::logic_error("formula has no children");
  return node_->left;
}

const Formula& Formula::right() const {
  if (kind() != Kind::Imp) throw std::logic_error("formula is not an implication");
  return node_->right;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.hash != b.hash || a.kind != b.kind || a.size != b.size || a.index != b.index) return false;
  switch (a.kind) {
    case Kind::Falsum:
    case Kind::Var:
      return true;
    case Kind::Dia:
      return a.left == b.left;
    case Kind::Imp:
      return a.left == b.left && a.right == b.right;
  }
  return false;
}

Formula neg(const Formula& f) { return Formula::imp(f, Formula::falsum()); }
Formula top() { return neg(Formula::falsum()); }
Formula conj(const Formula& a, const Formula& b) { return neg(Formula::imp(a, neg(b))); }
Formula disj(const Formula& a, const Formula& b) { return Formula::imp(neg(a), b); }
Formula iff(const Formula& a, const Formula& b) {
  return conj(Formula::imp(a, b), Formula::imp(b, a));
}
Formula box(unsigned modality, const Formula& body) {
  return neg(Formula::dia(modality, neg(body)));
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::falsum();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, unsigned alphabet) : s_(text), alphabet_(alphabet) {}

  Formula run() {
    Formula f = parse_iff();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected input", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }

  unsigned number() {
    skip();
    std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (v > 1000000) throw ParseError("index too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return static_cast<unsigned>(v);
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (eat("<->")) return iff(lhs, parse_iff());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (eat("->")) return Formula::imp(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (eat("|")) acc = disj(acc, parse_and());
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (eat("&")) acc = conj(acc, parse_unary());
    return acc;
  }

  unsigned modality(char close) {
    std::size_t at = pos_;
    unsigned a = number();
    if (a >= alphabet_) throw ParseError("modality " + std::to_string(a) + " outside alphabet", at);
    skip();
    if (pos_ >= s_.size() || s_[pos_] != close)
      throw ParseError(std::string("expected '") + close + "'", pos_);
    ++pos_;
    return a;
  }

  Formula parse_unary() {
    skip();
    if (eat("~")) return neg(parse_unary());
    if (!peek("<->") && eat("<")) {
      unsigned a = modality('>');
      return Formula::dia(a, parse_unary());
    }
    if (eat("[")) {
      unsigned a = modality(']');
      return box(a, parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      if (!eat(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (c == 'T') {
      ++pos_;
      return top();
    }
    if (c == 'F') {
      ++pos_;
      return Formula::falsum();
    }
    if (c == 'p') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected variable index", pos_);
      return Formula::var(number());
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  unsigned alphabet_;
  std::size_t pos_ = 0;
};

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Falsum:
      out += 'F';
      return;
    case Kind::Var:
      out += 'p';
      out += std::to_string(f.index());
      return;
    case Kind::Dia:
      out += '<';
      out += std::to_string(f.index());
      out += '>';
      render_into(f.body(), out);
      return;
    case Kind::Imp:
      out += '(';
      render_into(f.left(), out);
      out += " -> ";
      render_into(f.right(), out);
      out += ')';
      return;
  }
}

bool is_neg(const Formula& f) {
  return f.kind() == Kind::Imp && f.right().kind() == Kind::Falsum;
}

// Levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary/atom.
std::string pretty_at(const Formula& f, int& level);

std::string pretty_min(const Formula& f, int min_level) {
  int level = 0;
  std::string s = pretty_at(f, level);
  if (level < min_level) return "(" + s + ")";
  return s;
}

std::string pretty_at(const Formula& f, int& level) {
  level = 3;
  switch (f.kind()) {
    case Kind::Falsum:
      return "F";
    case Kind::Var:
      return "p" + std::to_string(f.index());
    case Kind::Dia:
      return "<" + std::to_string(f.index()) + ">" + pretty_min(f.body(), 3);
    case Kind::Imp:
      break;
  }
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (l.kind() == Kind::Falsum && r.kind() == Kind::Falsum) return "T";
  if (is_neg(f)) {
    // [a]x = ~<a>~x
    if (l.kind() == Kind::Dia && is_neg(l.body()))
      return "[" + std::to_string(l.index()) + "]" + pretty_min(l.body().left(), 3);
    // x & y = ~(x -> ~y)
    if (l.kind() == Kind::Imp && is_neg(l.right())) {
      level = 2;
      return pretty_min(l.left(), 2) + " & " + pretty_min(l.right().left(), 3);
    }
    return "~" + pretty_min(l, 3);
  }
  if (is_neg(l)) {
    level = 1;
    return pretty_min(l.left(), 1) + " | " + pretty_min(r, 2);
  }
  level = 0;
  return pretty_min(l, 1) + " -> " + pretty_min(r, 0);
}

void collect(const Formula& f, std::unordered_set<Formula>& seen) {
  if (!seen.insert(f).second) return;
  if (f.kind() == Kind::Imp) {
    collect(f.left(), seen);
    collect(f.right(), seen);
  } else if (f.kind() == Kind::Dia) {
    collect(f.body(), seen);
  }
}

void walk(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  if (f.kind() == Kind::Imp) {
    walk(f.left(), fn);
    walk(f.right(), fn);
  } else if (f.kind() == Kind::Dia) {
    walk(f.body(), fn);
  }
}

}  // namespace

Formula parse(std::string_view text, unsigned alphabet_size) {
  return Parser(text, alphabet_size).run();
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::string pretty(const Formula& f) {
  int level = 0;
  return pretty_at(f, level);
}

std::vector<Formula> subformula_chain(const Formula& f) {
  std::unordered_set<Formula> seen;
  collect(f, seen);
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(seen.size());
  for (const Formula& g : seen) keyed.emplace_back(render(g), g);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.second.size() != y.second.size()) return x.second.size() > y.second.size();
    return x.first < y.first;
  });
  std::vector<Formula> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

std::vector<unsigned> variables_of(const Formula& f) {
  std::set<unsigned> vs;
  walk(f, [&](const Formula& g) {
    if (g.kind() == Kind::Var) vs.insert(g.index());
  });
  return {vs.begin(), vs.end()};
}

std::vector<unsigned> modalities_of(const Formula& f) {
  std::set<unsigned> ms;
  walk(f, [&](const Formula& g) {
    if (g.kind() == Kind::Dia) ms.insert(g.index());
  });
  return {ms.begin(), ms.end()};
}

unsigned max_variable_plus_one(const Formula& f) {
  auto vs = variables_of(f);
  return vs.empty() ? 0 : vs.back() + 1;
}

Formula map_modalities(const Formula& f, const std::function<unsigned(unsigned)>& fn) {
  switch (f.kind()) {
    case Kind::Falsum:
    case Kind::Var:
      return f;
    case Kind::Dia:
      return Formula::dia(fn(f.index()), map_modalities(f.body(), fn));
    case Kind::Imp:
      return Formula::imp(map_modalities(f.left(), fn), map_modalities(f.right(), fn));
  }
  return f;
}

std::pair<Formula, unsigned> hat_normalize(const Formula& f) {
  auto ms = modalities_of(f);
  Formula g = map_modalities(f, [&](unsigned a) {
    return static_cast<unsigned>(std::lower_bound(ms.begin(), ms.end(), a) - ms.begin());
  });
  return {g, static_cast<unsigned>(ms.size())};
}

// ---------------------------------------------------------------- closure

Closure::Closure(const Formula& root) : chain_(subformula_chain(root)) {
  for (std::size_t i = 0; i < chain_.size(); ++i) pos_.emplace(chain_[i], static_cast<int>(i));
  std::set<unsigned> vars;
  nodes_.reserve(chain_.size());
  for (const Formula& g : chain_) {
    Node n{g.kind(), g.index()};
    if (g.kind() == Kind::Imp) {
      n.left = pos_.at(g.left());
      n.right = pos_.at(g.right());
    } else if (g.kind() == Kind::Dia) {
      n.left = pos_.at(g.body());
      alphabet_ = std::max(alphabet_, g.index() + 1);
    } else if (g.kind() == Kind::Var) {
      vars.insert(g.index());
    }
    nodes_.push_back(n);
  }
  variables_.assign(vars.begin(), vars.end());
  bodies_.resize(alphabet_);
  for (const Node& n : nodes_) {
    if (n.kind != Kind::Dia) continue;
    auto& b = bodies_[n.index];
    if (std::find(b.begin(), b.end(), n.left) == b.end()) b.push_back(n.left);
  }
  for (auto& b : bodies_) std::sort(b.begin(), b.end());
}

int Closure::position(const Formula& f) const {
  auto it = pos_.find(f);
  return it == pos_.end() ? -1 : it->second;
}

const std::vector<int>& Closure::bodies(unsigned a) const {
  static const std::vector<int> none;
  return a < bodies_.size() ? bodies_[a] : none;
}

}  // namespace msum
