#include "msum/frames.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace msum {

FrameClassTag FrameClassTag::trees(unsigned h, unsigned b) {
  auto t = of(FrameClass::FiniteTrees);
  t.h = h;
  t.b = b;
  return t;
}

FrameClassTag FrameClassTag::lifted(const FrameClassTag& inner) {
  auto t = of(FrameClass::UniversalLifted);
  t.inner = std::make_shared<const FrameClassTag>(inner);
  return t;
}

FrameClassTag FrameClassTag::modal_clusters(unsigned alphabet, unsigned total_mask) {
  auto t = of(FrameClass::ModalClusters);
  t.alphabet = alphabet;
  t.total_mask = total_mask;
  return t;
}

unsigned FrameClassTag::frame_alphabet() const {
  if (kind == FrameClass::UniversalLifted) return 1 + inner->frame_alphabet();
  if (kind == FrameClass::ModalClusters) return alphabet;
  return 1;
}

std::string FrameClassTag::name() const {
  switch (kind) {
    case FrameClass::Clusters: return "clusters";
    case FrameClass::DifferenceFrames: return "difference_frames";
    case FrameClass::T0DifferenceFrames: return "t0_difference_frames";
    case FrameClass::ConfluentDifferenceFrames: return "confluent_difference_frames";
    case FrameClass::IrreflexiveSingleton: return "irreflexive_singleton";
    case FrameClass::ReflexiveSingleton: return "reflexive_singleton";
    case FrameClass::Preorders: return "preorders";
    case FrameClass::PartialOrders: return "partial_orders";
    case FrameClass::StrictPartialOrders: return "strict_partial_orders";
    case FrameClass::Transitive: return "transitive";
    case FrameClass::WeaklyTransitive: return "weakly_transitive";
    case FrameClass::WeaklyTransitiveCR: return "weakly_transitive_cr";
    case FrameClass::FiniteTrees:
      return "finite_trees(" + std::to_string(h) + "," + std::to_string(b) + ")";
    case FrameClass::UniversalLifted: return "universal_lifted(" + inner->name() + ")";
    case FrameClass::ModalClusters:
      return "modal_clusters(" + std::to_string(alphabet) + "," + std::to_string(total_mask) + ")";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxCanon = 8;

// Unimodal adjacency, row[i] bit j = i R j.
struct Adj {
  std::size_t n = 0;
  std::array<std::uint8_t, kMaxCanon> row{};

  bool edge(std::size_t i, std::size_t j) const { return (row[i] >> j) & 1U; }
};

Adj to_adj(const Frame& f, unsigned a) {
  if (f.world_count() > kMaxCanon) throw std::length_error("frame too large for enumeration");
  Adj m;
  m.n = f.world_count();
  for (const auto& [u, v] : f.relation(a)) m.row[u] |= static_cast<std::uint8_t>(1U << v);
  return m;
}

Frame from_adj(const Adj& m) {
  Relation r;
  for (World i = 0; i < m.n; ++i)
    for (World j = 0; j < m.n; ++j)
      if (m.edge(i, j)) r.emplace_back(i, j);
  return Frame(m.n, {r});
}

bool reflexive(const Adj& m) {
  for (std::size_t i = 0; i < m.n; ++i)
    if (!m.edge(i, i)) return false;
  return true;
}

bool irreflexive(const Adj& m) {
  for (std::size_t i = 0; i < m.n; ++i)
    if (m.edge(i, i)) return false;
  return true;
}

bool transitive(const Adj& m) {
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (m.edge(i, j) && (m.row[j] & ~m.row[i])) return false;
  return true;
}

bool weakly_transitive(const Adj& m) {
  for (std::size_t i = 0; i < m.n; ++i) {
    std::uint8_t allowed = m.row[i] | static_cast<std::uint8_t>(1U << i);
    for (std::size_t j = 0; j < m.n; ++j)
      if (m.edge(i, j) && (m.row[j] & ~allowed)) return false;
  }
  return true;
}

bool antisymmetric(const Adj& m) {
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = i + 1; j < m.n; ++j)
      if (m.edge(i, j) && m.edge(j, i)) return false;
  return true;
}

bool church_rosser(const Adj& m) {
  for (std::size_t x = 0; x < m.n; ++x)
    for (std::size_t y1 = 0; y1 < m.n; ++y1)
      for (std::size_t y2 = 0; y2 < m.n; ++y2)
        if (m.edge(x, y1) && m.edge(x, y2) && !(m.row[y1] & m.row[y2])) return false;
  return true;
}

bool total(const Adj& m) {
  std::uint8_t all = static_cast<std::uint8_t>((1U << m.n) - 1);
  for (std::size_t i = 0; i < m.n; ++i)
    if (m.row[i] != all) return false;
  return true;
}

bool difference(const Adj& m) {
  std::uint8_t all = static_cast<std::uint8_t>((1U << m.n) - 1);
  for (std::size_t i = 0; i < m.n; ++i)
    if ((m.row[i] | (1U << i)) != all) return false;
  return true;
}

// Height and branching of a transitive irreflexive tree; false if not a tree.
bool tree_shape(const Adj& m, unsigned& height, unsigned& branching) {
  if (m.n == 0 || !irreflexive(m) || !transitive(m)) return false;
  std::size_t roots = 0;
  height = 0;
  branching = 0;
  for (std::size_t i = 0; i < m.n; ++i) {
    std::uint8_t preds = 0;
    for (std::size_t j = 0; j < m.n; ++j)
      if (m.edge(j, i)) preds |= static_cast<std::uint8_t>(1U << j);
    if (!preds) ++roots;
    // predecessors must form a chain
    for (std::size_t j = 0; j < m.n; ++j)
      for (std::size_t k = j + 1; k < m.n; ++k)
        if ((preds >> j & 1U) && (preds >> k & 1U) && !m.edge(j, k) && !m.edge(k, j)) return false;
    height = std::max(height, static_cast<unsigned>(std::popcount(preds)) + 1);
    unsigned immediate = 0;
    for (std::size_t j = 0; j < m.n; ++j) {
      if (!m.edge(i, j)) continue;
      bool direct = true;
      for (std::size_t k = 0; k < m.n; ++k)
        if (m.edge(i, k) && m.edge(k, j)) direct = false;
      if (direct) ++immediate;
    }
    branching = std::max(branching, immediate);
  }
  return roots == 1;
}

bool adj_in_class(const Adj& m, const FrameClassTag& tag) {
  switch (tag.kind) {
    case FrameClass::Clusters: return m.n > 0 && total(m);
    case FrameClass::DifferenceFrames: return m.n > 0 && difference(m);
    case FrameClass::T0DifferenceFrames: {
      if (m.n == 0 || !difference(m)) return false;
      std::size_t irr = 0;
      for (std::size_t i = 0; i < m.n; ++i) irr += m.edge(i, i) ? 0 : 1;
      return irr <= 1;
    }
    case FrameClass::ConfluentDifferenceFrames: {
      if (m.n == 0 || !difference(m)) return false;
      // Only the irreflexive singleton and the irreflexive pair lack common successors.
      bool refl = false;
      for (std::size_t i = 0; i < m.n; ++i) refl = refl || m.edge(i, i);
      return refl || m.n >= 3;
    }
    case FrameClass::IrreflexiveSingleton: return m.n == 1 && !m.edge(0, 0);
    case FrameClass::ReflexiveSingleton: return m.n == 1 && m.edge(0, 0);
    case FrameClass::Preorders: return m.n > 0 && reflexive(m) && transitive(m);
    case FrameClass::PartialOrders:
      return m.n > 0 && reflexive(m) && transitive(m) && antisymmetric(m);
    case FrameClass::StrictPartialOrders: return m.n > 0 && irreflexive(m) && transitive(m);
    case FrameClass::Transitive: return m.n > 0 && transitive(m);
    case FrameClass::WeaklyTransitive: return m.n > 0 && weakly_transitive(m);
    case FrameClass::WeaklyTransitiveCR:
      return m.n > 0 && weakly_transitive(m) && church_rosser(m);
    case FrameClass::FiniteTrees: {
      unsigned h = 0, b = 0;
      return tree_shape(m, h, b) && h <= tag.h && b <= tag.b;
    }
    default: break;
  }
  throw std::logic_error("class is not unimodal");
}

// Canonical code: lexicographically least per-relation adjacency words over the
// permutations that respect a degree-based vertex partition.
std::vector<std::uint64_t> canon(const std::vector<Adj>& rels, std::size_t n) {
  std::vector<std::array<int, 3>> inv;
  std::vector<std::vector<int>> key(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const Adj& m : rels) {
      int in = 0;
      for (std::size_t j = 0; j < n; ++j) in += m.edge(j, i);
      key[i].push_back(m.edge(i, i));
      key[i].push_back(std::popcount(m.row[i]));
      key[i].push_back(in);
    }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return key[x] < key[y]; });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  for (auto& [s, e] : blocks) std::sort(order.begin() + s, order.begin() + e);
  std::vector<std::uint64_t> best;
  std::vector<std::uint64_t> cur(rels.size());
  while (true) {
    // order[k] = old vertex placed at new position k
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rels[r].edge(order[i], order[j])) code |= std::uint64_t{1} << (i * kMaxCanon + j);
      cur[r] = code;
    }
    if (best.empty() || cur < best) best = cur;
    // next permutation across the blocks (odometer)
    std::size_t b = blocks.size();
    bool advanced = false;
    while (b > 0) {
      --b;
      auto [s, e] = blocks[b];
      if (std::next_permutation(order.begin() + s, order.begin() + e)) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  best.push_back(n);
  return best;
}

std::vector<Adj> extend_all(const std::vector<Adj>& smaller, const FrameClassTag& tag) {
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Adj> out;
  for (const Adj& f : smaller) {
    std::size_t n = f.n;
    for (unsigned in = 0; in < (1U << n); ++in)
      for (unsigned outm = 0; outm < (1U << n); ++outm)
        for (unsigned loop = 0; loop < 2; ++loop) {
          Adj g = f;
          g.n = n + 1;
          g.row[n] = static_cast<std::uint8_t>(outm | (loop << n));
          for (std::size_t i = 0; i < n; ++i)
            if (in >> i & 1U) g.row[i] |= static_cast<std::uint8_t>(1U << n);
          if (!adj_in_class(g, tag)) continue;
          if (seen.insert(canon({g}, g.n)).second) out.push_back(g);
        }
  }
  return out;
}

std::vector<Adj> trees_extend(const std::vector<Adj>& smaller, const FrameClassTag& tag) {
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Adj> out;
  for (const Adj& f : smaller) {
    std::size_t n = f.n;
    for (std::size_t p = 0; p < n; ++p) {
      Adj g = f;
      g.n = n + 1;
      for (std::size_t i = 0; i < n; ++i)
        if (i == p || g.edge(i, p)) g.row[i] |= static_cast<std::uint8_t>(1U << n);
      if (!adj_in_class(g, tag)) continue;
      if (seen.insert(canon({g}, g.n)).second) out.push_back(g);
    }
  }
  return out;
}

std::vector<Frame> generate(const FrameClassTag& tag, std::size_t n) {
  std::vector<Frame> out;
  if (n == 0) return out;
  switch (tag.kind) {
    case FrameClass::Clusters:
      out.push_back(total_frame(n));
      return out;
    case FrameClass::ModalClusters: {
      std::vector<Relation> rel(tag.alphabet);
      for (unsigned a = 0; a < tag.alphabet; ++a)
        if (tag.total_mask >> a & 1U) rel[a] = total_frame(n).relation(0);
      out.emplace_back(n, rel);
      return out;
    }
    case FrameClass::DifferenceFrames:
    case FrameClass::T0DifferenceFrames:
    case FrameClass::ConfluentDifferenceFrames:
      for (std::size_t r = 0; r <= n; ++r) {
        if (tag.kind == FrameClass::T0DifferenceFrames && r + 1 < n) continue;
        if (tag.kind == FrameClass::ConfluentDifferenceFrames && r == 0 && n < 3) continue;
        Relation rel;
        for (World i = 0; i < n; ++i)
          for (World j = 0; j < n; ++j)
            if (i != j || i < r) rel.emplace_back(i, j);
        out.emplace_back(n, std::vector<Relation>{rel});
      }
      return out;
    case FrameClass::IrreflexiveSingleton:
      if (n == 1) out.push_back(empty_frame(1));
      return out;
    case FrameClass::ReflexiveSingleton:
      if (n == 1) out.push_back(total_frame(1));
      return out;
    case FrameClass::UniversalLifted:
      for (const Frame& f : frames_of_size(*tag.inner, n)) out.push_back(universal_lift(f));
      return out;
    case FrameClass::WeaklyTransitiveCR:
      for (const Frame& f : frames_of_size(FrameClassTag::of(FrameClass::WeaklyTransitive), n))
        if (church_rosser(to_adj(f, 0))) out.push_back(f);
      return out;
    default:
      break;
  }
  if (n > kMaxCanon) throw std::length_error("enumeration limited to 8 worlds");
  std::vector<Adj> smaller;
  if (n == 1) {
    Adj empty;
    empty.n = 0;
    smaller.push_back(empty);
  } else {
    for (const Frame& f : frames_of_size(tag, n - 1)) smaller.push_back(to_adj(f, 0));
  }
  std::vector<Adj> grown;
  if (tag.kind == FrameClass::FiniteTrees) {
    if (n == 1) {
      Adj g;
      g.n = 1;
      if (adj_in_class(g, tag)) grown.push_back(g);
    } else {
      grown = trees_extend(smaller, tag);
    }
  } else {
    grown = extend_all(smaller, tag);
  }
  for (const Adj& g : grown) out.push_back(from_adj(g));
  return out;
}

}  // namespace

bool in_class(const Frame& f, const FrameClassTag& tag) {
  if (f.alphabet() != tag.frame_alphabet()) return false;
  if (tag.kind == FrameClass::UniversalLifted) {
    if (f.world_count() == 0) return false;
    if (f.relation(0) != total_frame(f.world_count()).relation(0)) return false;
    std::vector<Relation> rest(f.relations().begin() + 1, f.relations().end());
    return in_class(Frame(f.world_count(), rest), *tag.inner);
  }
  if (tag.kind == FrameClass::ModalClusters) {
    if (f.world_count() == 0) return false;
    for (unsigned a = 0; a < tag.alphabet; ++a) {
      bool want_total = tag.total_mask >> a & 1U;
      const Relation& expect = want_total ? total_frame(f.world_count()).relation(0) : Relation{};
      if (f.relation(a) != expect) return false;
    }
    return true;
  }
  if (f.world_count() > kMaxCanon) {
    // Direct checks for the classes that do not need the bit matrix.
    if (tag.kind == FrameClass::Clusters) return f.relation(0) == total_frame(f.world_count()).relation(0);
    throw std::length_error("class membership limited to 8 worlds");
  }
  return adj_in_class(to_adj(f, 0), tag);
}

const std::vector<Frame>& frames_of_size(const FrameClassTag& tag, std::size_t n) {
  static std::recursive_mutex mu;
  static std::map<std::pair<std::string, std::size_t>, std::vector<Frame>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(tag.name(), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto frames = generate(tag, n);
  return cache.emplace(key, std::move(frames)).first->second;
}

std::vector<Frame> enumerate_frames(const FrameClassTag& tag, std::size_t max_worlds) {
  std::vector<Frame> out;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const auto& fs = frames_of_size(tag, n);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<std::uint64_t> canonical_code(const Frame& f) {
  std::vector<Adj> rels;
  for (unsigned a = 0; a < f.alphabet(); ++a) rels.push_back(to_adj(f, a));
  return canon(rels, f.world_count());
}

}  // namespace msum
