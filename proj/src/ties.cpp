#include "msum/ties.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace msum {

TieVec::TieVec(std::size_t size) : size_(size) {
  if (size > kCapacity)
    throw std::length_error("formula has " + std::to_string(size) + " subformulas, limit is " +
                            std::to_string(kCapacity));
}

TieVec TieVec::full(std::size_t size) {
  TieVec v(size);
  for (std::size_t i = 0; i < size; ++i) v.set(i);
  return v;
}

TieVec TieVec::from_string(const std::string& bits) {
  TieVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("tie vector must be a string of 0 and 1");
  }
  return v;
}

TieVec TieVec::from_mask(std::size_t size, std::uint64_t mask) {
  if (size > 64) throw std::length_error("from_mask supports at most 64 bits");
  TieVec v(size);
  v.words_[0] = size == 64 ? mask : (mask & ((std::uint64_t{1} << size) - 1));
  return v;
}

std::size_t TieVec::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool TieVec::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool TieVec::is_subset_of(const TieVec& o) const {
  for (std::size_t i = 0; i < kWords; ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool TieVec::intersects(const TieVec& o) const {
  for (std::size_t i = 0; i < kWords; ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

std::vector<std::size_t> TieVec::members() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < kWords; ++w) {
    std::uint64_t x = words_[w];
    while (x) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

TieVec TieVec::operator|(const TieVec& o) const {
  TieVec r = *this;
  r |= o;
  return r;
}

TieVec TieVec::operator&(const TieVec& o) const {
  TieVec r = *this;
  r &= o;
  return r;
}

TieVec TieVec::minus(const TieVec& o) const {
  TieVec r = *this;
  for (std::size_t i = 0; i < kWords; ++i) r.words_[i] &= ~o.words_[i];
  return r;
}

TieVec& TieVec::operator|=(const TieVec& o) {
  if (size_ != o.size_) throw std::invalid_argument("tie vectors of different width");
  for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
  return *this;
}

TieVec& TieVec::operator&=(const TieVec& o) {
  if (size_ != o.size_) throw std::invalid_argument("tie vectors of different width");
  for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
  return *this;
}

bool TieVec::operator<(const TieVec& o) const {
  if (size_ != o.size_) return size_ < o.size_;
  for (std::size_t i = 0; i < kWords; ++i)
    if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
  return false;
}

std::string TieVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::size_t TieVec::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
  for (auto w : words_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

TieCond empty_cond(std::size_t size, unsigned alphabet) {
  return TieCond(alphabet, TieVec(size));
}

std::size_t cond_hash(const TieCond& u) {
  std::size_t h = u.size();
  for (const auto& r : u) h = h * 1000003U ^ r.hash();
  return h;
}

std::string cond_to_string(const TieCond& u) {
  std::string s = "[";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ",";
    s += u[i].to_string();
  }
  return s + "]";
}

Tie::Tie(std::shared_ptr<const Closure> c, TieVec v_, TieCond U_)
    : closure(std::move(c)), v(v_), U(std::move(U_)) {
  if (v.size() != closure->size()) throw std::invalid_argument("tie vector width mismatch");
  for (const auto& r : U)
    if (r.size() != closure->size()) throw std::invalid_argument("condition width mismatch");
  if (U.size() < closure->alphabet())
    throw std::invalid_argument("condition has fewer rows than the formula's modalities");
}

Tie::Tie(const Formula& f, TieVec v_, TieCond U_)
    : Tie(std::make_shared<const Closure>(f), v_, std::move(U_)) {}

TieVec or_sum(const TieVec& a, const TieVec& b) { return a | b; }

TieCond cond_plus_a(const TieCond& U, unsigned a, const TieVec& v) {
  if (a >= U.size()) throw std::out_of_range("modality outside condition");
  TieCond r = U;
  r[a] |= v;
  return r;
}

TieCond cond_union(const TieCond& x, const TieCond& y) {
  if (x.size() != y.size()) throw std::invalid_argument("conditions of different alphabets");
  TieCond r = x;
  for (std::size_t a = 0; a < r.size(); ++a) r[a] |= y[a];
  return r;
}

TieVec encode_set(const Closure& c, const FormulaSet& s) {
  TieVec v(c.size());
  for (const Formula& f : s) {
    int p = c.position(f);
    if (p >= 0) v.set(static_cast<std::size_t>(p));
  }
  return v;
}

TieCond encode_condition(const Closure& c, const Condition& gamma, unsigned alphabet) {
  TieCond u = empty_cond(c.size(), alphabet);
  for (std::size_t a = 0; a < gamma.size() && a < alphabet; ++a) u[a] = encode_set(c, gamma[a]);
  return u;
}

FormulaSet decode(const Closure& c, const TieVec& v) {
  FormulaSet out;
  for (std::size_t i : v.members()) out.push_back(c.at(i));
  return out;
}

Condition decode_condition(const Closure& c, const TieCond& u) {
  Condition out;
  for (const auto& r : u) out.push_back(decode(c, r));
  return out;
}

bool for_each_cover(const TieVec& v, unsigned k,
                    const std::function<bool(const TieVec&, const std::vector<TieVec>&)>& fn) {
  if (k > 20) throw std::invalid_argument("cover arity too large");
  const auto bits = v.members();
  const unsigned codes = (1U << (k + 1)) - 1;  // nonempty subsets of k+1 slots
  std::vector<unsigned> digit(bits.size(), 1);
  TieVec u(v.size());
  std::vector<TieVec> parts(k, TieVec(v.size()));
  while (true) {
    u = TieVec(v.size());
    for (auto& p : parts) p = TieVec(v.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (digit[i] & 1U) u.set(bits[i]);
      for (unsigned s = 0; s < k; ++s)
        if (digit[i] & (2U << s)) parts[s].set(bits[i]);
    }
    if (fn(u, parts)) return true;
    // Increment the mixed-radix counter; the last set bit is least significant.
    std::size_t i = bits.size();
    while (i > 0) {
      --i;
      if (digit[i] < codes) {
        ++digit[i];
        break;
      }
      digit[i] = 1;
      if (i == 0) return false;
    }
    if (bits.empty()) return false;
  }
}

std::vector<Cover> enumerate_covers(const TieVec& v, unsigned k) {
  std::vector<Cover> out;
  for_each_cover(v, k, [&](const TieVec& u, const std::vector<TieVec>& parts) {
    out.push_back({u, parts});
    return false;
  });
  return out;
}

std::uint64_t Packing::pack(const TieVec& v) const {
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < pos.size(); ++j)
    if (v.test(pos[j])) x |= std::uint64_t{1} << j;
  return x;
}

TieVec Packing::unpack(std::uint64_t x) const {
  TieVec v(width);
  for (std::size_t j = 0; j < pos.size(); ++j)
    if (x >> j & 1U) v.set(pos[j]);
  return v;
}

namespace {

// Set of words; a bitmap when the universe is small.
class WordSet {
 public:
  WordSet(std::size_t nbits, std::size_t expected) {
    if (nbits <= 24 && expected > 256) bitmap_.assign((std::size_t{1} << nbits) / 64 + 1, 0);
  }
  bool insert(std::uint64_t x) {
    if (bitmap_.empty()) return set_.insert(x).second;
    auto& w = bitmap_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }

 private:
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<std::uint64_t> set_;
};

}  // namespace

std::vector<std::uint64_t> word_unions(std::vector<std::uint64_t> family, unsigned b, std::size_t nbits) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  WordSet seen(nbits, family.size() * 4);
  std::vector<std::uint64_t> all;
  if (b >= nbits) {
    // A union of any number of members is a union of at most nbits of them.
    for (std::uint64_t x : family) {
      if (!seen.insert(x)) continue;
      const std::size_t n = all.size();
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t z = all[i] | x;
        if (seen.insert(z)) all.push_back(z);
      }
      all.push_back(x);
      if (all.size() > 20000000) throw std::runtime_error("too many unions of characterizations");
    }
  } else {
    for (std::uint64_t x : family)
      if (seen.insert(x)) all.push_back(x);
    std::vector<std::uint64_t> frontier = all;
    for (unsigned j = 2; j <= b && !frontier.empty(); ++j) {
      std::vector<std::uint64_t> next;
      for (std::uint64_t x : frontier)
        for (std::uint64_t y : family)
          if (seen.insert(x | y)) next.push_back(x | y);
      all.insert(all.end(), next.begin(), next.end());
      frontier.swap(next);
      if (all.size() > 20000000) throw std::runtime_error("too many unions of characterizations");
    }
  }
  return all;
}

}  // namespace msum
