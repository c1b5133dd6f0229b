#include "monpres/presentations.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <functional>
#include <sstream>

namespace monpres {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int generator_index(const MonoidPresentation& p, char c) {
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    if (p.generators[i][0] == c) return static_cast<int>(i);
  return -1;
}

std::string show_word(const std::string& w) { return w.empty() ? "1" : w; }

}  // namespace

void validate(const MonoidPresentation& p) {
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const std::string& g = p.generators[i];
    if (g.size() != 1 || !std::isalpha(static_cast<unsigned char>(g[0])))
      throw StructuralError("generators must be single letters: '" + g + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (p.generators[j] == g) throw StructuralError("duplicate generator: " + g);
  }
  for (const auto& [l, r] : p.relations)
    for (const std::string* w : {&l, &r})
      for (char c : *w)
        if (generator_index(p, c) < 0)
          throw StructuralError(std::string("relation word uses undeclared generator: '") + c +
                                "'");
}

MonoidPresentation parse_presentation(const std::string& text) {
  MonoidPresentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_gens = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("generators:", 0) == 0) {
      if (have_gens) throw ParseError("duplicate generators line", lineno, 1);
      std::istringstream items(line.substr(11));
      std::string item;
      while (std::getline(items, item, ',')) {
        item = strip(item);
        if (!item.empty()) p.generators.push_back(item);
      }
      have_gens = true;
      continue;
    }
    if (line.rfind("relations:", 0) == 0) {
      if (!have_gens) throw ParseError("relations before generators", lineno, 1);
      std::istringstream items(line.substr(10));
      std::string item;
      while (std::getline(items, item, ';')) {
        if (strip(item).empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
          throw ParseError("relation needs '=': " + strip(item), lineno, 1);
        p.relations.emplace_back(strip(item.substr(0, eq)), strip(item.substr(eq + 1)));
      }
      continue;
    }
    throw ParseError("unrecognised line: " + line, lineno, 1);
  }
  if (!have_gens) throw ParseError("missing generators line", lineno ? lineno : 1, 1);
  try {
    validate(p);
  } catch (const StructuralError& e) {
    throw ParseError(e.what(), lineno ? lineno : 1, 1);
  }
  return p;
}

MonoidPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_presentation(os.str());
}

MonoidPresentation presentation_from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  MonoidPresentation p;
  for (const auto& g : j.at("generators")) p.generators.push_back(g.get<std::string>());
  for (const auto& r : j.at("relations")) {
    if (!r.is_array() || r.size() != 2)
      throw StructuralError("relation entries must be [lhs, rhs] pairs");
    p.relations.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
  }
  validate(p);
  return p;
}

std::string presentation_to_json_text(const MonoidPresentation& p) {
  ordered_json j;
  j["generators"] = p.generators;
  ordered_json rels = ordered_json::array();
  for (const auto& [l, r] : p.relations) rels.push_back(ordered_json::array({l, r}));
  j["relations"] = rels;
  return j.dump(2);
}

Theory encode_as_theory(const MonoidPresentation& p) {
  validate(p);
  Theory th;
  th.name = "presented";
  std::vector<OpDecl> decls;
  for (const std::string& g : p.generators) decls.push_back({"f_" + g, 1});
  th.sig = Signature(std::move(decls));
  auto chain = [&](const std::string& w) {
    Term t = var("x");
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      t = app(th.sig, std::string("f_") + *it, {std::move(t)});
    return t;
  };
  for (const auto& [l, r] : p.relations)
    th.equations.push_back(
        make_equation(th.sig, chain(l), chain(r), show_word(l) + "=" + show_word(r)));
  return th;
}

// ---------------------------------------------------------------------------

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial:
      return "Trivial";
    case Triviality::NonTrivial:
      return "NonTrivial";
    case Triviality::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

namespace {

// Words reachable from `w` by applying one relation, either direction, at any
// position. Empty left sides insert at every position.
std::vector<std::string> word_neighbours(const MonoidPresentation& p, const std::string& w) {
  std::vector<std::string> out;
  auto apply = [&](const std::string& from, const std::string& to) {
    for (std::size_t i = 0; i + from.size() <= w.size(); ++i)
      if (w.compare(i, from.size(), from) == 0)
        out.push_back(w.substr(0, i) + to + w.substr(i + from.size()));
  };
  for (const auto& [l, r] : p.relations) {
    apply(l, r);
    apply(r, l);
  }
  return out;
}

// Breadth-first path in the rewrite graph; `used` counts words visited across
// calls so a whole run shares one budget.
std::optional<std::vector<std::string>> word_path(const MonoidPresentation& p,
                                                  const std::string& from, const std::string& to,
                                                  std::uint64_t budget, std::uint64_t& used) {
  auto reconstruct = [&](const std::map<std::string, std::string>& parent, std::string cur) {
    std::vector<std::string> chain;
    for (;;) {
      chain.push_back(cur);
      auto it = parent.find(cur);
      if (it->second == cur) break;
      cur = it->second;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  };
  if (from == to) return std::vector<std::string>{from};
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue;
  parent[from] = from;
  ++used;
  queue.push_back(from);
  while (!queue.empty() && used < budget) {
    std::string cur = queue.front();
    queue.pop_front();
    for (std::string& nx : word_neighbours(p, cur)) {
      if (parent.count(nx)) continue;
      parent[nx] = cur;
      ++used;
      if (nx == to) return reconstruct(parent, nx);
      if (used >= budget) return std::nullopt;
      queue.push_back(std::move(nx));
    }
  }
  return std::nullopt;
}

int eval_word(const MonoidTable& m, const std::vector<int>& images,
              const MonoidPresentation& p, const std::string& w) {
  int val = m.unit;
  for (char c : w) val = m.times(val, images[static_cast<std::size_t>(generator_index(p, c))]);
  return val;
}

// Smallest monoid of size <= bound satisfying the relations with a generator
// image off the unit. Tables are completed cell by cell (unit row and column
// fixed), pruning as soon as a fully determined associativity triple fails.
std::optional<MonoidCountermodel> find_monoid_countermodel(const MonoidPresentation& p,
                                                            int bound) {
  for (int n = 2; n <= bound; ++n) {
    std::vector<int> table(static_cast<std::size_t>(n * n), -1);
    for (int i = 0; i < n; ++i) {
      table[static_cast<std::size_t>(i)] = i;
      table[static_cast<std::size_t>(i * n)] = i;
    }
    std::vector<std::pair<int, int>> cells;
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) cells.emplace_back(i, j);

    auto get = [&](int a, int b) { return table[static_cast<std::size_t>(a * n + b)]; };
    auto associative_so_far = [&]() {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            int ab = get(a, b), bc = get(b, c);
            if (ab < 0 || bc < 0) continue;
            int l = get(ab, c), r = get(a, bc);
            if (l >= 0 && r >= 0 && l != r) return false;
          }
      return true;
    };

    std::optional<MonoidCountermodel> found;
    std::function<bool(std::size_t)> descend = [&](std::size_t ci) -> bool {
      if (ci == cells.size()) {
        MonoidTable m{n, table, 0, false};
        m.commutative = true;
        for (int a = 0; a < n && m.commutative; ++a)
          for (int b = 0; b < n; ++b)
            if (get(a, b) != get(b, a)) {
              m.commutative = false;
              break;
            }
        std::vector<int> images(p.generators.size(), 0);
        for (;;) {
          bool holds = true;
          for (const auto& [l, r] : p.relations)
            if (eval_word(m, images, p, l) != eval_word(m, images, p, r)) {
              holds = false;
              break;
            }
          if (holds && std::any_of(images.begin(), images.end(), [&](int v) { return v != m.unit; })) {
            MonoidCountermodel cm;
            cm.monoid = m;
            for (std::size_t g = 0; g < p.generators.size(); ++g)
              cm.images[p.generators[g]] = images[g];
            found = std::move(cm);
            return true;
          }
          int pos = static_cast<int>(images.size()) - 1;
          while (pos >= 0 && images[static_cast<std::size_t>(pos)] + 1 == n) {
            images[static_cast<std::size_t>(pos)] = 0;
            --pos;
          }
          if (pos < 0) break;
          ++images[static_cast<std::size_t>(pos)];
        }
        return false;
      }
      auto [i, j] = cells[ci];
      for (int v = 0; v < n; ++v) {
        table[static_cast<std::size_t>(i * n + j)] = v;
        if (associative_so_far() && descend(ci + 1)) return true;
      }
      table[static_cast<std::size_t>(i * n + j)] = -1;
      return false;
    };
    if (descend(0)) return found;
  }
  return std::nullopt;
}

}  // namespace

std::string TrivialityReport::to_json() const {
  ordered_json j;
  j["verdict"] = monpres::to_string(verdict);
  ordered_json tr = ordered_json::array();
  for (const auto& chain : traces) tr.push_back(chain);
  j["traces"] = tr;
  if (countermodel) {
    ordered_json cm;
    cm["monoid"] = ordered_json::parse(monoid_to_json_text(countermodel->monoid));
    ordered_json im = ordered_json::object();
    for (const auto& [g, v] : countermodel->images) im[g] = v;
    cm["images"] = im;
    j["countermodel"] = cm;
  } else {
    j["countermodel"] = nullptr;
  }
  j["rewrite_budget"] = rewrite_budget;
  j["model_bound"] = model_bound;
  return j.dump(2);
}

TrivialityReport t1_triviality(const MonoidPresentation& p, std::uint64_t rewrite_budget,
                               int model_bound) {
  validate(p);
  TrivialityReport rep;
  rep.rewrite_budget = rewrite_budget;
  rep.model_bound = model_bound;

  if (std::optional<MonoidCountermodel> cm = find_monoid_countermodel(p, model_bound)) {
    rep.verdict = Triviality::NonTrivial;
    rep.countermodel = std::move(cm);
    return rep;
  }

  std::uint64_t used = 0;
  std::vector<std::vector<std::string>> traces;
  for (const std::string& g : p.generators) {
    std::optional<std::vector<std::string>> chain = word_path(p, g, "", rewrite_budget, used);
    if (!chain) {
      rep.verdict = Triviality::Unknown;
      return rep;
    }
    traces.push_back(std::move(*chain));
  }
  rep.verdict = Triviality::Trivial;
  rep.traces = std::move(traces);
  return rep;
}

PropVerdict affineness_of_presented(const MonoidPresentation& p, std::uint64_t rewrite_budget,
                                    int model_bound) {
  TrivialityReport rep = t1_triviality(p, rewrite_budget, model_bound);
  PropVerdict v;
  v.bound = model_bound;
  switch (rep.verdict) {
    case Triviality::Trivial:
      v.status = PropStatus::Yes;
      v.certificate = "presented-monoid-trivial";
      v.detail = "every generator rewrites to the empty word";
      break;
    case Triviality::NonTrivial: {
      v.status = PropStatus::No;
      std::ostringstream os;
      os << "unit set has a quotient of size " << rep.countermodel->monoid.size
         << " separating a generator from the unit";
      v.detail = os.str();
      break;
    }
    case Triviality::Unknown:
      v.status = PropStatus::UnknownUpTo;
      v.detail = "budgets exhausted; the question is undecidable in general";
      break;
  }
  return v;
}

}  // namespace monpres
