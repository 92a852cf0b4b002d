#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "msum/oracles.hpp"

namespace msum {

struct TreeParams {
  unsigned h = 1;
  unsigned b = 1;
};

struct SearchStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t max_recursion_depth = 0;
  std::uint64_t memo_hits = 0;

  void merge(const SearchStats& o);
};

struct SolverOptions {
  bool memoize = true;
  // Per-vector recursion over explicit covers (exponential; small inputs only).
  // Otherwise each call returns the whole set of accepted vectors at once.
  bool literal = false;
};

// CSatSum over Sigma^a_{Tr(h,b)} F for one formula. level() evaluates the same
// recurrence as the per-vector procedure for all vectors simultaneously:
//   L(U,1)   = real(U)
//   L(U,h+1) = real(U) + { c | W : W a union of at most b members of L(U,h),
//                                 c in real(U +^a W) }
// where real(U) are the characterizations the oracle accepts under U.
class SumEngine {
 public:
  SumEngine(std::shared_ptr<const Closure> c, unsigned a, OraclePtr oracle, SolverOptions opt = {});

  // Vectors accepted at (U,h,b), projected onto `mask`.
  VecSet level(const TieCond& U, unsigned h, unsigned b, const TieVec& mask);
  bool csat(const TieVec& v, const TieCond& U, unsigned h, unsigned b);

  const SearchStats& stats() const { return stats_; }
  const Closure& closure() const { return *closure_; }

 private:
  struct Key {
    TieCond U;
    unsigned h, b;
    TieVec mask;
    bool operator==(const Key& o) const { return h == o.h && b == o.b && mask == o.mask && U == o.U; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return cond_hash(k.U) ^ (k.mask.hash() * 7) ^ (k.h * 1315423911U) ^ (k.b * 2654435761U);
    }
  };
  struct VKey {
    TieVec v;
    TieCond U;
    unsigned h, b;
    bool operator==(const VKey& o) const { return h == o.h && b == o.b && v == o.v && U == o.U; }
  };
  struct VKeyHash {
    std::size_t operator()(const VKey& k) const noexcept {
      return cond_hash(k.U) ^ (k.v.hash() * 7) ^ (k.h * 1315423911U) ^ (k.b * 2654435761U);
    }
  };

  VecSet level_at(const TieCond& U, unsigned h, unsigned b, const TieVec& mask, unsigned depth);
  VecSet real(const TieCond& U, const TieVec& mask);
  bool literal_at(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned depth);
  bool oracle_csat(const TieVec& v, const TieCond& U);

  std::shared_ptr<const Closure> closure_;
  unsigned a_;
  OraclePtr oracle_;
  SolverOptions opt_;
  TieVec bodies_;
  SearchStats stats_;
  std::unordered_map<Key, VecSet, KeyHash> memo_;
  std::unordered_map<Key, VecSet, KeyHash> real_memo_;
  std::unordered_map<VKey, bool, VKeyHash> vmemo_;
};

// Unions of at most b members of `family` (b >= 1), projected onto nothing.
VecSet bounded_unions(const VecSet& family, unsigned b);

TieCond zero_cond(const Closure& c, unsigned alphabet);
unsigned cond_alphabet(const Closure& c, unsigned a, const SummandOracle& o);

bool csat_sum(const Tie& tie, unsigned h, unsigned b, unsigned a, OraclePtr oracle,
              SolverOptions opt = {}, SearchStats* stats = nullptr);
bool sat_over_sums(const Formula& f, unsigned a, OraclePtr oracle, SolverOptions opt = {},
                   SearchStats* stats = nullptr);
bool csat_over_sums(const Tie& tie, unsigned a, OraclePtr oracle, SolverOptions opt = {},
                    SearchStats* stats = nullptr);
bool csat_disjoint(const Tie& tie, unsigned bound, const SummandOracle& oracle);
bool csat_plus(const Tie& tie, unsigned a, const SummandOracle& left, const SummandOracle& right);

// CSat over Sigma^a_NPO F, i.e. disjoint unions of at most #phi tree sums.
class SumOracle : public SummandOracle {
 public:
  SumOracle(unsigned a, OraclePtr inner, SolverOptions opt = {});
  std::string name() const override;
  FrameClassTag tag() const override { return inner_->tag(); }
  unsigned alphabet() const override { return inner_->alphabet(); }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  unsigned a_;
  OraclePtr inner_;
  SolverOptions opt_;
  RealizableCache cache_;
};

// F +^a G.
class PlusOracle : public SummandOracle {
 public:
  PlusOracle(unsigned a, OraclePtr left, OraclePtr right);
  std::string name() const override;
  FrameClassTag tag() const override { return left_->tag(); }
  unsigned alphabet() const override { return left_->alphabet(); }
  bool csat(const Tie& tie) const override;
  VecSet realizable(const Closure& c, const TieCond& u, const TieVec& mask) const override;

 private:
  unsigned a_;
  OraclePtr left_, right_;
};

OraclePtr sum_oracle(unsigned a, OraclePtr inner, SolverOptions opt = {});
OraclePtr plus_oracle(unsigned a, OraclePtr left, OraclePtr right);

// Satisfiability directly on the oracle's class: some accepted vector has bit 0.
bool sat_direct(const Formula& f, const SummandOracle& oracle);

// Algorithm 2: S(h,b,a,A) = {S_A} if a = A, else Sigma^a_{Tr(h,b)} S(A,A,a+1,A).
class JEngine {
 public:
  JEngine(std::shared_ptr<const Closure> c, unsigned A, SolverOptions opt = {});

  VecSet level(const TieCond& U, unsigned h, unsigned b, unsigned a, const TieVec& mask);
  bool csat(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a);
  const SearchStats& stats() const { return stats_; }

 private:
  struct Key {
    TieCond U;
    unsigned h, b, a;
    TieVec mask;
    bool operator==(const Key& o) const {
      return h == o.h && b == o.b && a == o.a && mask == o.mask && U == o.U;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return cond_hash(k.U) ^ (k.mask.hash() * 7) ^ (k.h * 1315423911U) ^ (k.b * 2654435761U) ^
             (k.a * 40503U);
    }
  };
  VecSet level_at(const TieCond& U, unsigned h, unsigned b, unsigned a, const TieVec& mask,
                  unsigned depth);
  bool literal_at(const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a, unsigned depth);

  std::shared_ptr<const Closure> closure_;
  unsigned A_;
  SolverOptions opt_;
  OraclePtr base_;
  std::vector<TieVec> bodies_;
  SearchStats stats_;
  std::unordered_map<Key, VecSet, KeyHash> memo_;
  std::unordered_map<Key, bool, KeyHash> vmemo_;  // mask slot holds v
};

bool csat_j(const Formula& f, const TieVec& v, const TieCond& U, unsigned h, unsigned b, unsigned a,
            unsigned A, SolverOptions opt = {}, SearchStats* stats = nullptr);
bool sat_j(const Formula& f, SolverOptions opt = {}, SearchStats* stats = nullptr);

enum class Verdict { Sat, Unsat };

struct LogicPreset {
  std::string name;
  unsigned alphabet;  // 0: any
  std::string recipe;
  bool best_effort = false;
  // Brute-force class with the same finite frames, when one is available.
  std::optional<FrameClassTag> brute_class;
  std::function<bool(const Formula&, const SolverOptions&, SearchStats*)> sat;
};

const std::vector<LogicPreset>& presets();
const LogicPreset& preset(const std::string& name);
Verdict solve(const LogicPreset& p, const Formula& f, SolverOptions opt = {}, SearchStats* stats = nullptr);
Verdict solve(const std::string& name, const Formula& f, SolverOptions opt = {},
              SearchStats* stats = nullptr);

}  // namespace msum
