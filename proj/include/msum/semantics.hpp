#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "msum/formula.hpp"
#include "msum/ties.hpp"

namespace msum {

using World = std::uint32_t;
using Edge = std::pair<World, World>;
using Relation = std::vector<Edge>;  // sorted, no duplicates

class Frame {
 public:
  Frame() = default;
  Frame(std::size_t worlds, std::vector<Relation> relations);

  std::size_t world_count() const { return worlds_; }
  unsigned alphabet() const { return static_cast<unsigned>(relations_.size()); }
  const Relation& relation(unsigned a) const { return relations_.at(a); }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<World>& successors(unsigned a, World w) const { return succ_.at(a).at(w); }
  bool has_edge(unsigned a, World u, World v) const;

  bool operator==(const Frame& o) const {
    return worlds_ == o.worlds_ && relations_ == o.relations_;
  }

 private:
  std::size_t worlds_ = 0;
  std::vector<Relation> relations_;
  std::vector<std::vector<std::vector<World>>> succ_;
};

// valuation[i] lists the worlds where p_i holds (sorted); missing rows are empty.
struct Model {
  Frame frame;
  std::vector<std::vector<World>> valuation;

  bool holds(unsigned var, World w) const;
  bool operator==(const Model& o) const;
};

Model make_model(Frame frame, std::vector<std::vector<World>> valuation);

// Truth of every chain position at every world, as world bitsets.
class TruthTable {
 public:
  TruthTable(const Closure& c, const Model& m, const TieCond& u);
  bool at(std::size_t pos, World w) const {
    return (bits_[pos * words_ + (w >> 6)] >> (w & 63)) & 1U;
  }
  bool anywhere(std::size_t pos) const;
  TieVec characterize() const;
  // Chain positions true at w.
  TieVec at_world(World w) const;

 private:
  std::size_t n_;
  std::size_t worlds_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Plain truth, condition empty.
bool eval(const Model& m, World w, const Formula& f);
// Conditional truth: <a>psi holds when psi is in gamma[a] or some R_a-successor satisfies psi.
bool eval_cond(const Model& m, World w, const Condition& gamma, const Formula& f);
// Subformulas of f conditionally true somewhere in m.
FormulaSet characterize(const Formula& f, const Model& m, const Condition& gamma);
TieVec characterize_vec(const Closure& c, const Model& m, const TieCond& u);

// Disjoint union with cross a-edges (i,w)->(j,v) for i != j, i S_a j.
// Components are laid out in index order; the index diagonal is ignored.
Frame sum(const Frame& index, const std::vector<Frame>& family);
Model sum(const Frame& index, const std::vector<Model>& family);
// Index relation placed on modality a only; `index` must be unimodal.
Frame a_sum(unsigned a, const Frame& index, const std::vector<Frame>& family);
Model a_sum(unsigned a, const Frame& index, const std::vector<Model>& family);
Frame plus_a(unsigned a, const Frame& f, const Frame& g);
Model plus_a(unsigned a, const Model& f, const Model& g);
Frame disjoint_union(const std::vector<Frame>& family);
std::vector<std::size_t> component_offsets(const std::vector<Frame>& family);

Frame universal_lift(const Frame& f);
Frame empty_lift(const Frame& f, unsigned n);
Model universal_lift(const Model& m);
// Relation 0 links (i,w)->(j,v) whenever i S j, including i = j.
Frame lex_sum(const Frame& index, const std::vector<Frame>& family);
Frame lex_product(const Frame& index, const Frame& f);

struct Skeleton {
  Frame order;                              // strict quotient order
  std::vector<std::vector<World>> clusters;  // cluster i lists its worlds
};
// Quotient of a preorder (relation 0) by its clusters; throws if not a preorder.
Skeleton skeleton_decompose(const Frame& f);

// gamma[a] plus the subformulas true under gamma at some R_a-successor of V outside V.
Condition external_condition(const Formula& f, const Model& m, const std::vector<World>& V,
                             const Condition& gamma);

// Restriction to the worlds in V (renumbered in ascending order).
Model restrict_model(const Model& m, const std::vector<World>& V);

// Frame helpers used by the class predicates and the enumerators.
Frame chain_frame(std::size_t n, bool strict);  // linear order 0 < 1 < ... < n-1
Frame total_frame(std::size_t n);               // cluster
Frame empty_frame(std::size_t n, unsigned alphabet = 1);

}  // namespace msum
