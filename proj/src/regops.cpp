#include "polysync/regops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace polysync {

namespace {

std::vector<std::vector<int>> adjacency(const Automaton& a) {
  std::vector<std::vector<int>> adj(a.n_states);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) adj[q].push_back(t);
  return adj;
}

}  // namespace

SccDecomposition scc(const Automaton& a) {
  const int n = a.n_states;
  auto adj = adjacency(a);

  // One-pass Tarjan with an explicit frame stack; components complete in
  // reverse topological order.
  std::vector<int> idx(n, -1), low(n, 0), comp_of(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<int> stck;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stck.push_back(root);
    onstack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stck.push_back(w);
          onstack[w] = true;
          frames.push_back({w, 0});
        } else if (onstack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == idx[v]) {
          std::vector<int> comp;
          while (true) {
            int w = stck.back();
            stck.pop_back();
            onstack[w] = false;
            comp_of[w] = static_cast<int>(comps.size());
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }

  // Renumber so that dag edges always point from lower to higher ids.
  const int m = static_cast<int>(comps.size());
  SccDecomposition out;
  out.components.resize(m);
  out.component_of.assign(n, -1);
  for (int c = 0; c < m; ++c) out.components[m - 1 - c] = std::move(comps[c]);
  for (int c = 0; c < m; ++c)
    for (int q : out.components[c]) out.component_of[q] = c;

  std::set<std::pair<int, int>> edges;
  for (int q = 0; q < n; ++q)
    for (int t : adj[q])
      if (out.component_of[q] != out.component_of[t])
        edges.insert({out.component_of[q], out.component_of[t]});
  out.dag_edges.assign(edges.begin(), edges.end());

  out.is_single_cycle.assign(m, false);
  out.is_trivial.assign(m, false);
  for (int c = 0; c < m; ++c) {
    const auto& comp = out.components[c];
    bool multi = false;
    int total_inner = 0;
    std::vector<int> inner_next(comp.size(), -1);
    for (size_t i = 0; i < comp.size(); ++i) {
      int q = comp[i];
      int cnt = 0;
      for (int x = 0; x < a.alphabet.size(); ++x)
        for (int t : a.successors(q, x))
          if (out.component_of[t] == c) {
            ++cnt;
            inner_next[i] = t;
          }
      if (cnt > 1) multi = true;
      total_inner += cnt;
    }
    if (multi) continue;
    if (total_inner == 0) {
      out.is_trivial[c] = true;
      continue;
    }
    if (comp.size() == 1) {
      out.is_single_cycle[c] = true;  // exactly one self-loop
      continue;
    }
    // Each member has at most one inner transition; confirm they chain into
    // one cycle visiting every member.
    if (total_inner != static_cast<int>(comp.size())) continue;
    int q = comp[0];
    size_t steps = 0;
    do {
      auto it = std::lower_bound(comp.begin(), comp.end(), q);
      q = inner_next[it - comp.begin()];
      ++steps;
    } while (q != comp[0] && steps <= comp.size());
    out.is_single_cycle[c] = (q == comp[0] && steps == comp.size());
  }
  return out;
}

StateSet step_symbol(const Automaton& a, const StateSet& s, int sym) {
  StateSet next(a.n_states);
  for (auto q = s.find_first(); q != StateSet::npos; q = s.find_next(q))
    for (int t : a.successors(static_cast<int>(q), sym)) next.set(t);
  return next;
}

StateSet step(const Automaton& a, const StateSet& s, const Word& w) {
  StateSet cur = s;
  for (int x : w) cur = step_symbol(a, cur, x);
  return cur;
}

namespace {

Automaton determinize_impl(const Automaton& a, bool keep_partial) {
  if (!a.initial) fail(Errc::invalid_argument, "determinize requires an initial state");
  const int k = a.alphabet.size();

  std::map<StateSet, int> id_of;
  std::vector<StateSet> subsets;
  std::deque<int> queue;
  auto intern = [&](const StateSet& s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(subsets.size());
    id_of.emplace(s, id);
    subsets.push_back(s);
    queue.push_back(id);
    return id;
  };

  StateSet start(a.n_states);
  start.set(*a.initial);
  intern(start);

  std::vector<std::vector<int>> table;  // subset id -> per-symbol target (-1 undefined)
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (static_cast<int>(table.size()) <= id) table.resize(id + 1, std::vector<int>(k, -1));
    for (int x = 0; x < k; ++x) {
      StateSet img = step_symbol(a, subsets[id], x);
      if (img.none() && keep_partial) continue;
      table[id][x] = intern(img);
      if (static_cast<int>(table.size()) < static_cast<int>(subsets.size()))
        table.resize(subsets.size(), std::vector<int>(k, -1));
    }
  }

  Automaton d = new_automaton(keep_partial ? Kind::Pdfa : Kind::Dcsa, a.alphabet,
                              static_cast<int>(subsets.size()));
  for (size_t i = 0; i < subsets.size(); ++i) d.state_names[i] = "s" + std::to_string(i);
  d.initial = 0;
  for (size_t i = 0; i < subsets.size(); ++i) {
    if ((subsets[i] & a.finals).any()) d.finals.set(i);
    for (int x = 0; x < k; ++x)
      if (table[i][x] >= 0) d.add_transition(static_cast<int>(i), x, table[i][x]);
  }
  d.validate();
  return d;
}

}  // namespace

Automaton determinize(const Automaton& a) { return determinize_impl(a, false); }

Automaton determinize_partial(const Automaton& a) { return determinize_impl(a, true); }

Automaton make_complete(const Automaton& a) {
  if (!a.is_deterministic())
    fail(Errc::kind_violation, "completion is defined for deterministic automata");
  if (a.is_complete()) return a;
  Automaton c = new_automaton(a.kind, a.alphabet, a.n_states + 1, {});
  c.state_names = a.state_names;
  c.state_names.push_back(fresh_name(a.state_names, "sink"));
  c.initial = a.initial;
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    c.finals.set(q);
  const int trap = a.n_states;
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x) {
      int t = a.dnext(q, x);
      c.add_transition(q, x, t >= 0 ? t : trap);
    }
  for (int x = 0; x < a.alphabet.size(); ++x) c.add_transition(trap, x, trap);
  c.validate();
  return c;
}

Automaton complement(const Automaton& a) {
  if (!a.is_deterministic() || !a.is_complete())
    fail(Errc::kind_violation, "complement requires a complete deterministic automaton");
  if (!a.initial) fail(Errc::kind_violation, "complement requires an initial state");
  Automaton c = a;
  c.finals = ~a.finals;
  return c;
}

Automaton product_intersection(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet == b.alphabet)) fail(Errc::alphabet_mismatch, "alphabets differ");
  if (!a.is_deterministic() || !b.is_deterministic())
    fail(Errc::kind_violation, "product requires deterministic operands");
  if (!a.initial || !b.initial) fail(Errc::kind_violation, "product requires initial states");
  const int k = a.alphabet.size();

  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::pair<int, int>> pairs;
  std::deque<int> queue;
  auto intern = [&](int qa, int qb) {
    auto it = id_of.find({qa, qb});
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(pairs.size());
    id_of.emplace(std::make_pair(qa, qb), id);
    pairs.emplace_back(qa, qb);
    queue.push_back(id);
    return id;
  };
  intern(*a.initial, *b.initial);

  std::vector<std::vector<int>> table;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (static_cast<int>(table.size()) <= id) table.resize(id + 1, std::vector<int>(k, -1));
    auto [qa, qb] = pairs[id];
    for (int x = 0; x < k; ++x) {
      int ta = a.dnext(qa, x);
      int tb = b.dnext(qb, x);
      if (ta < 0 || tb < 0) continue;
      table[id][x] = intern(ta, tb);
      if (table.size() < pairs.size()) table.resize(pairs.size(), std::vector<int>(k, -1));
    }
  }

  Automaton p = new_automaton(Kind::Pdfa, a.alphabet, static_cast<int>(pairs.size()));
  for (size_t i = 0; i < pairs.size(); ++i)
    p.state_names[i] = a.state_names[pairs[i].first] + "|" + b.state_names[pairs[i].second];
  p.initial = 0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (a.finals.test(pairs[i].first) && b.finals.test(pairs[i].second)) p.finals.set(i);
    for (int x = 0; x < k; ++x)
      if (table[i][x] >= 0) p.add_transition(static_cast<int>(i), x, table[i][x]);
  }
  p.validate();
  return p;
}

StateSet reachable_states(const Automaton& a) {
  if (!a.initial) fail(Errc::invalid_argument, "reachability requires an initial state");
  StateSet seen(a.n_states);
  std::deque<int> queue{*a.initial};
  seen.set(*a.initial);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x))
        if (!seen.test(t)) {
          seen.set(t);
          queue.push_back(t);
        }
  }
  return seen;
}

StateSet coaccessible_states(const Automaton& a) {
  std::vector<std::vector<int>> rev(a.n_states);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) rev[t].push_back(q);
  StateSet seen(a.n_states);
  std::deque<int> queue;
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q)) {
    seen.set(q);
    queue.push_back(static_cast<int>(q));
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int t : rev[q])
      if (!seen.test(t)) {
        seen.set(t);
        queue.push_back(t);
      }
  }
  return seen;
}

bool is_empty(const Automaton& a) {
  if (!a.initial) fail(Errc::invalid_argument, "emptiness requires an initial state");
  return !(reachable_states(a) & a.finals).any();
}

bool includes(const Automaton& outer, const Automaton& inner) {
  Automaton co = complement(determinize(outer));
  if (inner.is_deterministic() && inner.has_initial())
    return is_empty(product_intersection(co, inner));
  return is_empty(product_intersection(co, determinize_partial(inner)));
}

bool language_equal(const Automaton& a, const Automaton& b) {
  return includes(a, b) && includes(b, a);
}

Automaton closure_automaton(const Automaton& a, ClosureMode mode) {
  if (!a.initial) fail(Errc::invalid_argument, "closure requires an initial state");
  if (mode == ClosureMode::prefix) {
    Automaton p = a;
    p.finals = coaccessible_states(a);
    return p;
  }
  if (mode == ClosureMode::factor)
    return closure_automaton(closure_automaton(a, ClosureMode::suffix), ClosureMode::prefix);

  // suffix: fresh initial state wired to every transition leaving an
  // accessible state; final when the language is nonempty.
  StateSet reach = reachable_states(a);
  Automaton s = new_automaton(Kind::Nfa, a.alphabet, a.n_states + 1, {});
  s.state_names = a.state_names;
  s.state_names.push_back(fresh_name(a.state_names, "start"));
  const int fresh = a.n_states;
  s.initial = fresh;
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    s.finals.set(q);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) {
        s.add_transition(q, x, t);
        if (reach.test(q)) s.add_transition(fresh, x, t);
      }
  if ((reach & a.finals).any()) s.finals.set(fresh);
  s.validate();
  return s;
}

Automaton trim_reachable(const Automaton& a) {
  StateSet reach = reachable_states(a);
  if (reach.all()) return a;
  std::vector<int> remap(a.n_states, -1);
  std::vector<std::string> names;
  int next = 0;
  for (int q = 0; q < a.n_states; ++q)
    if (reach.test(q)) {
      remap[q] = next++;
      names.push_back(a.state_names[q]);
    }
  Automaton t = new_automaton(a.kind, a.alphabet, next, names);
  t.initial = remap[*a.initial];
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    if (remap[q] >= 0) t.finals.set(remap[q]);
  for (int q = 0; q < a.n_states; ++q) {
    if (remap[q] < 0) continue;
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int to : a.successors(q, x)) t.add_transition(remap[q], x, remap[to]);
  }
  t.validate();
  return t;
}

}  // namespace polysync
