#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "msum/formula.hpp"

namespace msum {

// Subset of chain positions 0..size-1; bit i refers to the i-th subformula.
class TieVec {
 public:
  static constexpr std::size_t kCapacity = 512;
  static constexpr std::size_t kWords = kCapacity / 64;

  TieVec() = default;
  explicit TieVec(std::size_t size);
  static TieVec full(std::size_t size);
  // Bit i of the string is chain position i.
  static TieVec from_string(const std::string& bits);
  // Low bits of `mask`; size must be <= 64.
  static TieVec from_mask(std::size_t size, std::uint64_t mask);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    if (value)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  std::size_t count() const;
  bool none() const;
  bool is_subset_of(const TieVec& other) const;
  bool intersects(const TieVec& other) const;
  std::vector<std::size_t> members() const;
  std::uint64_t low_word() const { return words_[0]; }

  TieVec operator|(const TieVec& o) const;
  TieVec operator&(const TieVec& o) const;
  TieVec minus(const TieVec& o) const;
  TieVec& operator|=(const TieVec& o);
  TieVec& operator&=(const TieVec& o);

  bool operator==(const TieVec& o) const { return size_ == o.size_ && words_ == o.words_; }
  bool operator!=(const TieVec& o) const { return !(*this == o); }
  bool operator<(const TieVec& o) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace msum

template <>
struct std::hash<msum::TieVec> {
  std::size_t operator()(const msum::TieVec& v) const noexcept { return v.hash(); }
};

namespace msum {

// One TieVec row per modality.
using TieCond = std::vector<TieVec>;

TieCond empty_cond(std::size_t size, unsigned alphabet);
std::size_t cond_hash(const TieCond& u);
std::string cond_to_string(const TieCond& u);

struct CondHash {
  std::size_t operator()(const TieCond& u) const noexcept { return cond_hash(u); }
};

// Sets of formulas per modality.
using FormulaSet = std::vector<Formula>;
using Condition = std::vector<FormulaSet>;

struct Tie {
  std::shared_ptr<const Closure> closure;
  TieVec v;
  TieCond U;

  Tie() = default;
  Tie(std::shared_ptr<const Closure> c, TieVec v, TieCond U);
  Tie(const Formula& f, TieVec v, TieCond U);

  const Formula& formula() const { return closure->root(); }
  std::size_t width() const { return closure->size(); }
  unsigned alphabet() const { return static_cast<unsigned>(U.size()); }
};

TieVec or_sum(const TieVec& a, const TieVec& b);
// U +^a v: only row a changes.
TieCond cond_plus_a(const TieCond& U, unsigned a, const TieVec& v);
TieCond cond_union(const TieCond& x, const TieCond& y);

// Restricts each row of gamma to SF(phi).
TieCond encode_condition(const Closure& c, const Condition& gamma, unsigned alphabet);
TieVec encode_set(const Closure& c, const FormulaSet& s);
FormulaSet decode(const Closure& c, const TieVec& v);
Condition decode_condition(const Closure& c, const TieCond& u);

// Each set bit of v picks a nonempty subset of the k+1 slots (u, v_0..v_{k-1}).
// Visits (2^{k+1}-1)^{|v|} covers in lexicographic order of the assignment,
// first set bit most significant, subset codes ascending. The callback returns
// true to stop; the function returns whether it was stopped.
bool for_each_cover(const TieVec& v, unsigned k,
                    const std::function<bool(const TieVec& u, const std::vector<TieVec>& parts)>& fn);

// Projection onto the set positions of a mask (at most 64 of them for pack()).
struct Packing {
  std::vector<std::size_t> pos;
  std::size_t width;

  explicit Packing(const TieVec& m) : pos(m.members()), width(m.size()) {}
  bool fits() const { return pos.size() <= 64; }
  std::uint64_t pack(const TieVec& v) const;
  TieVec unpack(std::uint64_t x) const;
};

// Unions of at most b members of family over nbits-bit words (all unions when
// b >= nbits). Members are included; the result has no duplicates.
std::vector<std::uint64_t> word_unions(std::vector<std::uint64_t> family, unsigned b, std::size_t nbits);

struct Cover {
  TieVec u;
  std::vector<TieVec> parts;
};
std::vector<Cover> enumerate_covers(const TieVec& v, unsigned k);

}  // namespace msum
