#pragma once

// Test-side reference implementations. Everything here decides questions by
// plain enumeration or direct simulation, independently of the library's own
// algorithms, so library results can be checked against them.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "polysync/automaton.hpp"
#include "polysync/io.hpp"

namespace testsupport {

using polysync::Alphabet;
using polysync::Automaton;
using polysync::Kind;
using polysync::Word;

// Plain set-of-states simulation.
inline bool simulate(const Automaton& a, const Word& w) {
  std::set<int> active{*a.initial};
  for (int x : w) {
    std::set<int> next;
    for (int q : active)
      for (int t : a.successors(q, x)) next.insert(t);
    active = std::move(next);
    if (active.empty()) return false;
  }
  for (int q : active)
    if (a.finals.test(q)) return true;
  return false;
}

// All words over k symbols up to max_len, shortlex.
inline std::vector<Word> all_words(int k, int max_len) {
  std::vector<Word> out{Word{}};
  size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (int x = 0; x < k; ++x) {
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

inline std::set<Word> language_upto(const Automaton& a, int max_len) {
  std::set<Word> out;
  for (const auto& w : all_words(a.alphabet.size(), max_len))
    if (simulate(a, w)) out.insert(w);
  return out;
}

// ---- strongly connected components by reachability matrix ----

struct BruteScc {
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
  std::vector<bool> single_cycle;  // exactly one simple cycle, covering the component
  std::vector<bool> trivial;       // no cycle at all
};

inline BruteScc brute_scc(const Automaton& a) {
  const int n = a.n_states;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) reach[q][t] = true;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][m] && reach[m][j]) reach[i][j] = true;

  BruteScc out;
  out.component_of.assign(n, -1);
  for (int q = 0; q < n; ++q) {
    if (out.component_of[q] != -1) continue;
    std::vector<int> comp;
    for (int r = 0; r < n; ++r)
      if (out.component_of[r] == -1 && (r == q || (reach[q][r] && reach[r][q])))
        comp.push_back(r);
    for (int r : comp) out.component_of[r] = static_cast<int>(out.components.size());
    out.components.push_back(comp);
  }

  // Enumerate the simple cycles inside each component: depth-first paths
  // that return to their smallest state.
  out.single_cycle.assign(out.components.size(), false);
  out.trivial.assign(out.components.size(), false);
  for (size_t c = 0; c < out.components.size(); ++c) {
    const auto& comp = out.components[c];
    std::vector<std::vector<int>> cycles;
    for (int start : comp) {
      std::vector<int> path{start};
      std::vector<bool> used(n, false);
      used[start] = true;
      // iterative DFS over (state, next successor index)
      struct Frame {
        int state;
        int sym = 0;
        size_t tgt = 0;
      };
      std::vector<Frame> stack{{start}};
      while (!stack.empty()) {
        Frame& f = stack.back();
        bool advanced = false;
        while (f.sym < a.alphabet.size()) {
          const auto& succ = a.successors(f.state, f.sym);
          if (f.tgt >= succ.size()) {
            ++f.sym;
            f.tgt = 0;
            continue;
          }
          int t = succ[f.tgt++];
          if (out.component_of[t] != static_cast<int>(c)) continue;
          if (t == start) {
            cycles.push_back(path);
            continue;
          }
          if (t < start || used[t]) continue;  // count each cycle from its smallest state
          used[t] = true;
          path.push_back(t);
          stack.push_back({t});
          advanced = true;
          break;
        }
        if (!advanced) {
          if (stack.size() > 1) {
            used[path.back()] = false;
            path.pop_back();
          }
          stack.pop_back();
        }
      }
    }
    if (cycles.empty()) {
      out.trivial[c] = true;
    } else if (cycles.size() == 1 && cycles[0].size() == comp.size()) {
      out.single_cycle[c] = true;
    }
  }
  return out;
}

// ---- loop-word enumeration for the polycyclicity characterization ----

// Loop words of length 1..max_len at state p of a deterministic automaton.
inline std::vector<Word> loop_words(const Automaton& a, int p, int max_len) {
  std::vector<Word> out;
  for (const auto& w : all_words(a.alphabet.size(), max_len)) {
    if (w.empty()) continue;
    if (a.dstep(p, w) == p) out.push_back(w);
  }
  return out;
}

// All enumerated loops lie in the powers of one word; candidates are the
// prefixes of the shortest loop.
inline bool loops_in_single_word_powers(const std::vector<Word>& loops) {
  if (loops.empty()) return true;
  Word shortest = *std::min_element(loops.begin(), loops.end(), [](const Word& x, const Word& y) {
    return x.size() < y.size();
  });
  for (size_t d = 1; d <= shortest.size(); ++d) {
    Word cand(shortest.begin(), shortest.begin() + d);
    bool ok = true;
    for (const auto& w : loops) {
      if (w.size() % d != 0) {
        ok = false;
        break;
      }
      for (size_t i = 0; i < w.size() && ok; ++i)
        if (w[i] != cand[i % d]) ok = false;
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

inline bool brute_polycyclic(const Automaton& a, int max_loop_len) {
  for (int p = 0; p < a.n_states; ++p)
    if (!loops_in_single_word_powers(loop_words(a, p, max_loop_len))) return false;
  return true;
}

// ---- synchronization by subset search (n <= 20) ----

inline bool brute_synchronizing(const Automaton& a) {
  const int n = a.n_states;
  auto image = [&](unsigned mask, int x) {
    unsigned out = 0;
    for (int q = 0; q < n; ++q)
      if (mask & (1u << q)) out |= 1u << a.dnext(q, x);
    return out;
  };
  unsigned full = n == 32 ? ~0u : (1u << n) - 1;
  std::set<unsigned> seen{full};
  std::vector<unsigned> queue{full};
  for (size_t i = 0; i < queue.size(); ++i) {
    unsigned m = queue[i];
    if ((m & (m - 1)) == 0) return true;  // singleton
    for (int x = 0; x < a.alphabet.size(); ++x) {
      unsigned t = image(m, x);
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return false;
}

// ---- prefixes / suffixes / factors, by bounded continuation ----
// A continuation leading to a final state can always be shortened below the
// state count, so the bound makes these exact.

inline bool in_prefixes(const Automaton& a, const Word& w) {
  for (const auto& u : all_words(a.alphabet.size(), a.n_states)) {
    Word wu = w;
    wu.insert(wu.end(), u.begin(), u.end());
    if (simulate(a, wu)) return true;
  }
  return false;
}

inline bool in_suffixes(const Automaton& a, const Word& w) {
  for (const auto& u : all_words(a.alphabet.size(), a.n_states)) {
    Word uw = u;
    uw.insert(uw.end(), w.begin(), w.end());
    if (simulate(a, uw)) return true;
  }
  return false;
}

inline bool in_factors(const Automaton& a, const Word& w) {
  for (const auto& u : all_words(a.alphabet.size(), a.n_states)) {
    for (const auto& v : all_words(a.alphabet.size(), a.n_states)) {
      Word uwv = u;
      uwv.insert(uwv.end(), w.begin(), w.end());
      uwv.insert(uwv.end(), v.begin(), v.end());
      if (simulate(a, uwv)) return true;
    }
  }
  return false;
}

// ---- random generators (all draws via modulo for reproducibility) ----

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool coin() { return below(2) == 0; }
};

inline Alphabet alphabet_of(int k) {
  Alphabet al;
  for (int i = 0; i < k; ++i) al.names.push_back(std::string(1, static_cast<char>('a' + i)));
  return al;
}

inline Automaton random_dcsa(Rng& rng, int n, int k) {
  Automaton a = polysync::new_automaton(Kind::Dcsa, alphabet_of(k), n, {});
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < k; ++x) a.add_transition(q, x, rng.below(n));
  return a;
}

inline Automaton random_pdfa(Rng& rng, int n, int k) {
  Automaton a = polysync::new_automaton(Kind::Pdfa, alphabet_of(k), n, {});
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < k; ++x)
      if (rng.below(100) < 60) a.add_transition(q, x, rng.below(n));
  a.initial = rng.below(n);
  for (int q = 0; q < n; ++q)
    if (rng.below(3) == 0) a.finals.set(q);
  return a;
}

inline Automaton random_nfa(Rng& rng, int n, int k) {
  Automaton a = polysync::new_automaton(Kind::Nfa, alphabet_of(k), n, {});
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < k; ++x) {
      int targets = rng.below(3);
      for (int i = 0; i < targets; ++i) a.add_transition(q, x, rng.below(n));
    }
  a.initial = rng.below(n);
  for (int q = 0; q < n; ++q)
    if (rng.below(3) == 0) a.finals.set(q);
  return a;
}

// Built from disjoint cycles in a topological layer order, with forward
// transitions only: polycyclic by construction, with variety in cycle
// lengths, unreachable parts and final sets.
inline Automaton random_polycyclic(Rng& rng, int max_n, int k) {
  const int n = 1 + rng.below(max_n);
  Automaton a = polysync::new_automaton(Kind::Pdfa, alphabet_of(k), n, {});
  std::vector<int> group_end(n);  // last state id of the group containing the state
  int i = 0;
  while (i < n) {
    bool cycle = rng.coin();
    int len = cycle ? 1 + rng.below(std::min(3, n - i)) : 1;
    int end = i + len - 1;
    if (cycle)
      for (int j = i; j <= end; ++j)
        a.add_transition(j, rng.below(k), j == end ? i : j + 1);
    for (int j = i; j <= end; ++j) group_end[j] = end;
    i = end + 1;
  }
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < k; ++x) {
      if (!a.successors(q, x).empty()) continue;  // cycle edge
      if (group_end[q] + 1 >= n) continue;        // no later group
      if (rng.coin()) continue;
      a.add_transition(q, x, group_end[q] + 1 + rng.below(n - group_end[q] - 1));
    }
  a.initial = rng.below(n);
  for (int q = 0; q < n; ++q)
    if (rng.below(3) == 0) a.finals.set(q);
  return a;
}

inline Word str_word(const Automaton& a, const std::string& s) {
  return polysync::parse_word(a.alphabet, s);
}

}  // namespace testsupport
