#include "polysync/sync.hpp"

#include <algorithm>
#include <deque>

#include "polysync/regops.hpp"

namespace polysync {

int PairAutomaton::pair_id(int q, int r) const {
  if (q > r) std::swap(q, r);
  // pairs (q,q), (q,q+1), ..., (q,n-1) follow all pairs with smaller q
  return q * n - q * (q - 1) / 2 + (r - q);
}

std::pair<int, int> PairAutomaton::pair_of(int id) const {
  int q = 0;
  int row = n;  // pairs in row q
  while (id >= row) {
    id -= row;
    ++q;
    --row;
  }
  return {q, q + id};
}

bool PairAutomaton::is_singleton(int id) const {
  auto [q, r] = pair_of(id);
  return q == r;
}

PairAutomaton pair_automaton(const Automaton& dcsa) {
  if (!dcsa.is_deterministic() || !dcsa.is_complete())
    fail(Errc::kind_violation, "pair automaton requires a complete deterministic semi-automaton");
  PairAutomaton p;
  p.n = dcsa.n_states;
  p.n_syms = dcsa.alphabet.size();
  p.trans.assign(static_cast<size_t>(p.size()) * p.n_syms, -1);
  for (int id = 0; id < p.size(); ++id) {
    auto [q, r] = p.pair_of(id);
    for (int x = 0; x < p.n_syms; ++x)
      p.trans[static_cast<size_t>(id) * p.n_syms + x] =
          p.pair_id(dcsa.dnext(q, x), dcsa.dnext(r, x));
  }
  return p;
}

bool is_synchronizing(const Automaton& dcsa) {
  PairAutomaton p = pair_automaton(dcsa);
  // Backwards reachability from the singletons.
  std::vector<std::vector<int>> rev(p.size());
  for (int id = 0; id < p.size(); ++id)
    for (int x = 0; x < p.n_syms; ++x) rev[p.next(id, x)].push_back(id);
  std::vector<bool> merges(p.size(), false);
  std::deque<int> queue;
  for (int id = 0; id < p.size(); ++id)
    if (p.is_singleton(id)) {
      merges[id] = true;
      queue.push_back(id);
    }
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (int from : rev[id])
      if (!merges[from]) {
        merges[from] = true;
        queue.push_back(from);
      }
  }
  return std::all_of(merges.begin(), merges.end(), [](bool b) { return b; });
}

namespace {

// Shortest word taking `from` to any singleton of the pair automaton;
// breadth-first with symbols in id order, so the result is the
// lexicographically least among the shortest.
std::optional<Word> shortest_merge(const PairAutomaton& p, int from) {
  std::vector<int> parent(p.size(), -2), via(p.size(), -1);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (p.is_singleton(id)) {
      Word w;
      for (int cur = id; parent[cur] != -1; cur = parent[cur]) w.push_back(via[cur]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int x = 0; x < p.n_syms; ++x) {
      int t = p.next(id, x);
      if (parent[t] == -2) {
        parent[t] = id;
        via[t] = x;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<SyncWitness> synchronizing_word(const Automaton& dcsa) {
  PairAutomaton p = pair_automaton(dcsa);
  StateSet active = dcsa.all_states();
  Word word;
  while (active.count() > 1) {
    int q = static_cast<int>(active.find_first());
    int r = static_cast<int>(active.find_next(q));
    auto merge = shortest_merge(p, p.pair_id(q, r));
    if (!merge) return std::nullopt;
    word.insert(word.end(), merge->begin(), merge->end());
    active = step(dcsa, active, *merge);
  }

  StateSet image = step(dcsa, dcsa.all_states(), word);
  if (image.count() != 1) fail(Errc::internal, "greedy merge produced a non-synchronizing word");
  const long long n = dcsa.n_states;
  if (static_cast<long long>(word.size()) > n * n * n)
    fail(Errc::internal, "greedy merge exceeded the cubic length bound");
  return SyncWitness{word, static_cast<int>(image.find_first())};
}

Automaton pair_merge_language(const Automaton& dcsa, int q, int r) {
  if (q < 0 || q >= dcsa.n_states || r < 0 || r >= dcsa.n_states)
    fail(Errc::invalid_argument, "state id out of range");
  PairAutomaton p = pair_automaton(dcsa);
  std::vector<std::string> names(p.size());
  for (int id = 0; id < p.size(); ++id) {
    auto [s, t] = p.pair_of(id);
    names[id] = s == t ? "{" + dcsa.state_names[s] + "}"
                       : "{" + dcsa.state_names[s] + "," + dcsa.state_names[t] + "}";
  }
  Automaton a = new_automaton(Kind::Dcsa, dcsa.alphabet, p.size(), names);
  a.initial = p.pair_id(q, r);
  for (int id = 0; id < p.size(); ++id) {
    if (p.is_singleton(id)) a.finals.set(id);
    for (int x = 0; x < p.n_syms; ++x) a.add_transition(id, x, p.next(id, x));
  }
  a.validate();
  return a;
}

}  // namespace polysync
