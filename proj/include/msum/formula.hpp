#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace msum {

enum class Kind : std::uint8_t { Falsum, Var, Imp, Dia };

// Immutable formula over the primitives bottom, p_i, implication and <a>.
// Derived connectives are expanded at construction time.
class Formula {
 public:
  Formula();  // falsum

  static Formula falsum();
  static Formula var(unsigned index);
  static Formula imp(const Formula& lhs, const Formula& rhs);
  static Formula dia(unsigned modality, const Formula& body);

  Kind kind() const;
  // Variable index for Var, modality for Dia.
  unsigned index() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }

  // Number of nodes of the primitive tree.
  std::size_t size() const;
  std::size_t hash() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula neg(const Formula& f);
Formula top();
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);
Formula box(unsigned modality, const Formula& body);
Formula conj_all(const std::vector<Formula>& fs);  // empty -> top
Formula disj_all(const std::vector<Formula>& fs);  // empty -> falsum

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar: atoms p<digits>, T, F; unary ~, <a>, [a]; binary &, |, ->, <->.
// Precedence from tightest: unary, &, |, ->, <->. & and | associate left,
// -> and <-> right. A modality index >= alphabet_size is rejected.
Formula parse(std::string_view text, unsigned alphabet_size = UINT32_MAX);

// Canonical ASCII form of the primitive tree; parse(render(f)) == f.
std::string render(const Formula& f);

// Human-oriented rendering that folds the derived connectives back.
std::string pretty(const Formula& f);

// Distinct subformulas, longer first, ties broken by ascending render().
// Element 0 is the formula itself.
std::vector<Formula> subformula_chain(const Formula& f);

// Remaps the occurring modalities a_0 < ... < a_{N-1} onto 0..N-1.
std::pair<Formula, unsigned> hat_normalize(const Formula& f);

std::vector<unsigned> variables_of(const Formula& f);
std::vector<unsigned> modalities_of(const Formula& f);
unsigned max_variable_plus_one(const Formula& f);

// Applies fn to the modality index of every diamond.
Formula map_modalities(const Formula& f, const std::function<unsigned(unsigned)>& fn);

}  // namespace msum

template <>
struct std::hash<msum::Formula> {
  std::size_t operator()(const msum::Formula& f) const noexcept { return f.hash(); }
};

namespace msum {

// Index over the subformula chain used by every evaluator.
class Closure {
 public:
  struct Node {
    Kind kind;
    unsigned index;  // variable or modality
    int left = -1;   // chain positions of children
    int right = -1;
  };

  explicit Closure(const Formula& root);

  const Formula& root() const { return chain_.front(); }
  std::size_t size() const { return chain_.size(); }
  const std::vector<Formula>& chain() const { return chain_; }
  const Formula& at(std::size_t i) const { return chain_[i]; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  // Position of a subformula, or -1 when absent.
  int position(const Formula& f) const;

  const std::vector<unsigned>& variables() const { return variables_; }
  // One past the largest modality that occurs (0 if none).
  unsigned alphabet() const { return alphabet_; }
  // Chain positions psi such that <a>psi occurs, per modality.
  const std::vector<int>& bodies(unsigned a) const;

 private:
  std::vector<Formula> chain_;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, int> pos_;
  std::vector<unsigned> variables_;
  unsigned alphabet_ = 0;
  std::vector<std::vector<int>> bodies_;
};

}  // namespace msum
