#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msum/oracles.hpp"

namespace msum {

// <a>psi becomes T when psi is in gamma[a]; homomorphic otherwise.
Formula translate_cond(const Formula& f, const Condition& gamma);

// Conjunction over the chain of D^{<=m} psi^U for members of v and its negation
// for the rest, where D is the disjunction of all A diamonds.
Formula delta_m(const Tie& tie, unsigned m);

// Elimination of the universal modality 0.
struct SpaanResult {
  struct Fresh {
    Formula diamond;  // <0>psi in the input
    Formula body;     // tr(psi)
    unsigned var;     // p_psi
  };
  Formula xi;
  Formula tr_root;
  std::vector<Fresh> fresh;

  // Constraint on the set of satisfiable subformulas of xi, given as a membership test.
  bool admits(const std::function<bool(const Formula&)>& member) const;
};

SpaanResult spaan_eliminate(const Formula& f);

// Satisfiability of f (modality 0 universal) on the lift of the base class.
bool sat_univ(const Formula& f, const SummandOracle& base);

// delta_1 of the tie with every modality shifted up by one.
Formula csat_to_sat_univ(const Tie& tie);

// q & tr(f) with <a>psi -> <a>(tr(psi) & q), q the first variable above f's.
Formula relativize(const Formula& f);

// CSat over universal lifts. Once it is fixed which <0>-bodies hold somewhere,
// every <0>psi is a constant, so each guess costs one call to the base class.
class UniversalLiftOracle : public SummandOracle {
 public:
  explicit UniversalLiftOracle(OraclePtr base);
  std::string name() const override;
  FrameClassTag tag() const override;
  unsigned alphabet() const override;
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  OraclePtr base_;
  RealizableCache cache_;
};

OraclePtr universal_lift_oracle(OraclePtr base);

struct Qbf {
  std::vector<std::pair<bool, unsigned>> prefix;  // (universal, variable index 1..m)
  Formula matrix;

  std::size_t size() const { return prefix.size(); }
};

// "E1 A2 : (p1 <-> p2)". The i-th quantifier must bind p_i.
Qbf parse_qbf(std::string_view text);
std::string render_qbf(const Qbf& q);

bool qbf_eval(const Qbf& q);

Formula ladner_encode(const Qbf& q);

struct QuantifierTree {
  Frame tree;     // one-step extensions
  Frame closure;  // reflexive-transitive closure
  std::vector<std::vector<int>> nodes;  // the 0/1 sequence of each node
};

QuantifierTree quantifier_tree(const Qbf& q);

// Chained boxes and diamonds over modality a.
Formula box_n(unsigned a, unsigned n, const Formula& f);
Formula box_upto(unsigned a, unsigned n, const Formula& f);

}  // namespace msum
