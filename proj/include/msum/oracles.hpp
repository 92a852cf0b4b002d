#pragma once

#include <map>
#include <unordered_map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "msum/frames.hpp"
#include "msum/semantics.hpp"
#include "msum/ties.hpp"

namespace msum {

// Sorted, duplicate-free list of characterizations.
using VecSet = std::vector<TieVec>;
void normalize(VecSet& s);

// Conditional satisfiability on a class of frames.
class SummandOracle {
 public:
  virtual ~SummandOracle() = default;
  virtual std::string name() const = 0;
  virtual FrameClassTag tag() const = 0;
  // Number of relations of the class frames; 0 accepts any alphabet.
  virtual unsigned alphabet() const = 0;

  virtual bool csat(const Tie& tie) const = 0;

  // {characterize(M, u) & mask : M a model on a class frame}. The default asks
  // csat for every subset of SF(phi), so it is only usable for small formulas.
  virtual VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const;

 protected:
  void check_alphabet(const Tie& tie) const;
};

using OraclePtr = std::shared_ptr<const SummandOracle>;

// Caches realizable() per (formula, condition, mask); fills are idempotent.
class RealizableCache {
 public:
  std::optional<VecSet> find(const Closure& c, const TieCond& u, const TieVec& mask) const;
  void store(const Closure& c, const TieCond& u, const TieVec& mask, const VecSet& s) const;

 private:
  struct Key {
    Formula f;
    TieCond u;
    TieVec mask;
    bool operator==(const Key& o) const { return mask == o.mask && u == o.u && f == o.f; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return k.f.hash() ^ (cond_hash(k.u) * 31) ^ (k.mask.hash() * 131);
    }
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, VecSet, KeyHash> map_;
};

struct ModelBudget {
  std::size_t max_worlds = 1;
};

// Clusters whose relation a is total when bit a of total_mask is set and empty
// otherwise. With singleton=true the frame has exactly one point, so a set bit
// means a loop. Covers C, S_0, S_1, S_A and the 2-modal (C, empty, C x C).
class ClusterOracle : public SummandOracle {
 public:
  ClusterOracle(unsigned alphabet, unsigned total_mask, bool singleton);
  std::string name() const override;
  FrameClassTag tag() const override;
  unsigned alphabet() const override { return alphabet_; }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  unsigned alphabet_;
  unsigned total_mask_;
  bool singleton_;
  RealizableCache cache_;
};

// Frames with every off-diagonal edge; points reflexive or not. T0 allows at
// most one irreflexive point; Confluent drops the irreflexive singleton and the
// irreflexive pair. Search is bounded by max_worlds(#phi) worlds.
enum class DifferenceKind { All, T0, Confluent };

class DifferenceOracle : public SummandOracle {
 public:
  explicit DifferenceOracle(DifferenceKind kind, std::size_t extra_worlds = 1);
  std::string name() const override;
  FrameClassTag tag() const override;
  unsigned alphabet() const override { return 1; }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;
  std::size_t max_worlds(const Closure& c) const { return c.size() + extra_; }

 private:
  DifferenceKind kind_;
  std::size_t extra_;
  RealizableCache cache_;
};

class UnionOracle : public SummandOracle {
 public:
  explicit UnionOracle(std::vector<OraclePtr> members);
  std::string name() const override;
  FrameClassTag tag() const override { return members_.front()->tag(); }
  unsigned alphabet() const override { return alphabet_; }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  std::vector<OraclePtr> members_;
  unsigned alphabet_;
};

// Independent reference: all frames of the class up to the budget, all
// valuations of the formula's variables, characterize compared directly.
class BruteOracle : public SummandOracle {
 public:
  BruteOracle(FrameClassTag tag, ModelBudget budget);
  std::string name() const override;
  FrameClassTag tag() const override { return tag_; }
  unsigned alphabet() const override { return tag_.frame_alphabet(); }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  FrameClassTag tag_;
  ModelBudget budget_;
  RealizableCache cache_;
};

OraclePtr cluster_oracle();
OraclePtr singleton_oracle(bool reflexive, unsigned alphabet = 1);
OraclePtr difference_oracle();
OraclePtr t0_difference_oracle();
OraclePtr confluent_difference_oracle();
OraclePtr union_oracle(std::vector<OraclePtr> members);
OraclePtr brute_oracle(const FrameClassTag& tag, std::size_t max_worlds);

bool cluster_csat(const Tie& tie);
bool difference_csat(const Tie& tie);
bool t0_difference_csat(const Tie& tie);
bool singleton_csat(const Tie& tie, bool reflexive, unsigned alphabet);
bool brute_csat(const FrameClassTag& tag, const ModelBudget& budget, const Tie& tie);

// Calls fn for every model on the class frames up to the budget, valuations over
// `vars`; fn returns true to stop. Interchangeable points of clusters and
// difference frames get non-decreasing valuation profiles.
bool for_each_model(const FrameClassTag& tag, std::size_t max_worlds,
                    const std::vector<unsigned>& vars,
                    const std::function<bool(const Model&)>& fn);

// A model of the class (within the budget) where f holds somewhere.
std::optional<std::pair<Model, World>> find_model(const FrameClassTag& tag, std::size_t max_worlds,
                                                  const Formula& f);

}  // namespace msum
