#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "msum/formula.hpp"

namespace msum {

struct CorpusSpec {
  std::size_t max_closure = 4;  // #phi bound
  unsigned variables = 2;
  unsigned modalities = 1;
};

// Every formula with #phi <= max_closure over F, p_i, ->, <a>, ordered by
// (#phi, render).
std::vector<Formula> enumerate_formulas(const CorpusSpec& spec);

// Random formula with #phi <= max_closure; grows a random tree and retries.
Formula random_formula(std::mt19937_64& rng, const CorpusSpec& spec);

}  // namespace msum
