#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msum/semantics.hpp"

namespace msum {

enum class FrameClass {
  Clusters,
  DifferenceFrames,    // every off-diagonal pair, each point reflexive or not
  T0DifferenceFrames,  // difference frames with at most one irreflexive point
  ConfluentDifferenceFrames,  // difference frames where any two points share a successor
  IrreflexiveSingleton,
  ReflexiveSingleton,
  Preorders,
  PartialOrders,        // reflexive
  StrictPartialOrders,  // finite, hence Noetherian
  Transitive,
  WeaklyTransitive,
  WeaklyTransitiveCR,  // weakly transitive and Church-Rosser
  FiniteTrees,         // transitive irreflexive trees, height <= h, branching <= b
  UniversalLifted,     // a total relation 0 prepended to the inner class
  ModalClusters,       // clusters where relation a is total iff bit a of total_mask is set
};

struct FrameClassTag {
  FrameClass kind = FrameClass::Clusters;
  unsigned h = 0;
  unsigned b = 0;
  unsigned alphabet = 1;
  unsigned total_mask = 1;
  std::shared_ptr<const FrameClassTag> inner;

  static FrameClassTag of(FrameClass k) {
    FrameClassTag t;
    t.kind = k;
    return t;
  }
  static FrameClassTag trees(unsigned h, unsigned b);
  static FrameClassTag lifted(const FrameClassTag& inner);
  static FrameClassTag modal_clusters(unsigned alphabet, unsigned total_mask);

  unsigned frame_alphabet() const;
  std::string name() const;
};

bool in_class(const Frame& f, const FrameClassTag& tag);

// Frames of the class with 1..max_worlds worlds, one per isomorphism type.
// Results are cached per (class, size).
const std::vector<Frame>& frames_of_size(const FrameClassTag& tag, std::size_t n);
std::vector<Frame> enumerate_frames(const FrameClassTag& tag, std::size_t max_worlds);

// Canonical adjacency code of a frame with at most 8 worlds.
std::vector<std::uint64_t> canonical_code(const Frame& f);

}  // namespace msum
