#include "msum/io.hpp"

#include <algorithm>
#include <stdexcept>

namespace msum {

using nlohmann::json;

json frame_to_json(const Frame& f) {
  json rels = json::array();
  for (const auto& r : f.relations()) {
    json edges = json::array();
    for (const auto& [u, v] : r) edges.push_back({u, v});
    rels.push_back(std::move(edges));
  }
  return {{"alphabet", f.alphabet()}, {"worlds", f.world_count()}, {"relations", rels}};
}

Frame frame_from_json(const json& j) {
  const auto n = j.at("worlds").get<std::size_t>();
  const auto& rels = j.at("relations");
  const auto A = j.contains("alphabet") ? j.at("alphabet").get<unsigned>() : static_cast<unsigned>(rels.size());
  if (rels.size() > A) throw std::invalid_argument("more relations than the alphabet");
  std::vector<Relation> out(A);
  for (std::size_t a = 0; a < rels.size(); ++a)
    for (const auto& e : rels[a]) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
      auto u = e[0].get<World>(), v = e[1].get<World>();
      if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      out[a].emplace_back(u, v);
    }
  for (auto& r : out) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return Frame(n, std::move(out));
}

json model_to_json(const Model& m) {
  json j = frame_to_json(m.frame);
  json val = json::object();
  for (std::size_t i = 0; i < m.valuation.size(); ++i) val["p" + std::to_string(i)] = m.valuation[i];
  j["valuation"] = val;
  return j;
}

Model model_from_json(const json& j) {
  Frame f = frame_from_json(j);
  std::vector<std::vector<World>> val;
  if (j.contains("valuation")) {
    for (const auto& [key, worlds] : j.at("valuation").items()) {
      if (key.size() < 2 || key[0] != 'p' ||
          !std::all_of(key.begin() + 1, key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw std::invalid_argument("bad variable name '" + key + "'");
      const auto idx = std::stoul(key.substr(1));
      if (idx >= 4096) throw std::invalid_argument("variable index too large");
      if (val.size() <= idx) val.resize(idx + 1);
      for (const auto& w : worlds) {
        auto x = w.get<World>();
        if (x >= f.world_count()) throw std::invalid_argument("valuation world out of range");
        val[idx].push_back(x);
      }
    }
  }
  return make_model(std::move(f), std::move(val));
}

json condition_to_json(const Condition& c) {
  json j = json::array();
  for (const auto& row : c) {
    json r = json::array();
    for (const auto& f : row) r.push_back(render(f));
    j.push_back(std::move(r));
  }
  return j;
}

Condition condition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("condition must be an array of formula arrays");
  Condition c;
  for (const auto& row : j) {
    FormulaSet s;
    for (const auto& f : row) s.push_back(parse(f.get<std::string>()));
    c.push_back(std::move(s));
  }
  return c;
}

json tie_to_json(const Tie& t) {
  json rows = json::array();
  for (const auto& r : t.U) rows.push_back(r.to_string());
  return {{"formula", render(t.formula())}, {"v", t.v.to_string()}, {"U", rows}};
}

Tie tie_from_json(const json& j) {
  Formula f = parse(j.at("formula").get<std::string>());
  TieCond U;
  for (const auto& r : j.at("U")) U.push_back(TieVec::from_string(r.get<std::string>()));
  return Tie(f, TieVec::from_string(j.at("v").get<std::string>()), U);
}

}  // namespace msum
