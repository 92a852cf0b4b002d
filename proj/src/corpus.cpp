#include "msum/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace msum {

namespace {

using Ids = std::vector<int>;  // sorted subformula ids

Ids merge(const Ids& a, const Ids& b) {
  Ids out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Formula> enumerate_formulas(const CorpusSpec& spec) {
  if (spec.max_closure == 0) return {};
  std::vector<Formula> all;
  std::vector<Ids> sf;
  std::unordered_map<Formula, int> id;
  auto add = [&](const Formula& f, Ids s) {
    if (id.count(f)) return;
    const int k = static_cast<int>(all.size());
    id.emplace(f, k);
    s.insert(std::lower_bound(s.begin(), s.end(), k), k);
    all.push_back(f);
    sf.push_back(std::move(s));
  };
  add(Formula::falsum(), {});
  for (unsigned i = 0; i < spec.variables; ++i) add(Formula::var(i), {});
  for (std::size_t n = 2; n <= spec.max_closure; ++n) {
    const std::size_t known = all.size();
    for (std::size_t x = 0; x < known; ++x) {
      if (sf[x].size() + 1 == n)
        for (unsigned a = 0; a < spec.modalities; ++a) add(Formula::dia(a, all[x]), sf[x]);
      for (std::size_t y = 0; y < known; ++y) {
        if (std::max(sf[x].size(), sf[y].size()) + 1 > n || sf[x].size() + sf[y].size() + 1 < n) continue;
        Ids u = merge(sf[x], sf[y]);
        if (u.size() + 1 == n) add(Formula::imp(all[x], all[y]), std::move(u));
      }
    }
  }
  std::vector<std::pair<std::size_t, std::string>> keys;
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    order[i] = i;
    keys.emplace_back(sf[i].size(), render(all[i]));
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<Formula> out;
  for (auto i : order) out.push_back(all[i]);
  return out;
}

Formula random_formula(std::mt19937_64& rng, const CorpusSpec& spec) {
  if (spec.max_closure == 0) throw std::invalid_argument("closure bound must be positive");
  // Random tree with exactly n nodes; #phi <= n.
  std::function<Formula(std::size_t)> grow = [&](std::size_t n) -> Formula {
    if (n == 1) {
      std::uniform_int_distribution<unsigned> atom(0, spec.variables);
      unsigned k = atom(rng);
      return k == spec.variables ? Formula::falsum() : Formula::var(k);
    }
    std::bernoulli_distribution dia(n == 2 ? 1.0 : 0.4);
    if (dia(rng)) {
      std::uniform_int_distribution<unsigned> mod(0, spec.modalities - 1);
      return Formula::dia(mod(rng), grow(n - 1));
    }
    std::uniform_int_distribution<std::size_t> split(1, n - 2);
    const std::size_t l = split(rng);
    Formula lhs = grow(l);
    return Formula::imp(lhs, grow(n - 1 - l));
  };
  std::uniform_int_distribution<std::size_t> nodes(1, 2 * spec.max_closure);
  for (;;) {
    Formula f = grow(nodes(rng));
    if (subformula_chain(f).size() <= spec.max_closure) return f;
  }
}

}  // namespace msum
