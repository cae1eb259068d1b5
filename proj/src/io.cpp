#include "polysync/io.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace polysync {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

struct Line {
  std::string key;
  std::vector<Token> args;
  int number;
};

[[noreturn]] void syntax_error(int line, int column, const std::string& what) {
  fail(Errc::parse,
       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++lineno;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    size_t i = 0;
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i >= raw.size() || raw[i] == '#') continue;

    size_t colon = raw.find(':', i);
    if (colon == std::string_view::npos)
      syntax_error(lineno, static_cast<int>(i) + 1, "expected 'key: ...'");
    std::string key(raw.substr(i, colon - i));
    Line out{key, {}, lineno};
    size_t j = colon + 1;
    while (j < raw.size()) {
      while (j < raw.size() && std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j >= raw.size()) break;
      size_t start = j;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      out.args.push_back({std::string(raw.substr(start, j - start)), lineno,
                          static_cast<int>(start) + 1});
    }
    lines.push_back(std::move(out));
  }
  return lines;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  auto lines = tokenize(text);

  std::optional<Kind> kind;
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::optional<Token> initial_tok;
  std::vector<Token> final_toks;
  std::vector<Line> trans_lines;
  bool saw_states = false, saw_alphabet = false;

  for (auto& ln : lines) {
    if (ln.key == "kind") {
      if (ln.args.size() != 1) syntax_error(ln.number, 1, "kind takes exactly one value");
      const std::string& k = ln.args[0].text;
      if (k == "dcsa")
        kind = Kind::Dcsa;
      else if (k == "pdfa")
        kind = Kind::Pdfa;
      else if (k == "nfa")
        kind = Kind::Nfa;
      else
        syntax_error(ln.number, ln.args[0].column, "unknown kind '" + k + "'");
    } else if (ln.key == "alphabet") {
      if (ln.args.empty()) syntax_error(ln.number, 1, "empty alphabet");
      for (auto& t : ln.args) {
        if (alphabet.index_of(t.text) >= 0)
          syntax_error(ln.number, t.column, "duplicate alphabet token '" + t.text + "'");
        alphabet.names.push_back(t.text);
      }
      saw_alphabet = true;
    } else if (ln.key == "states") {
      for (auto& t : ln.args) {
        if (std::find(state_names.begin(), state_names.end(), t.text) != state_names.end())
          syntax_error(ln.number, t.column, "duplicate state name '" + t.text + "'");
        state_names.push_back(t.text);
      }
      saw_states = true;
    } else if (ln.key == "initial") {
      if (ln.args.size() != 1) syntax_error(ln.number, 1, "initial takes exactly one state name");
      initial_tok = ln.args[0];
    } else if (ln.key == "final") {
      for (auto& t : ln.args) final_toks.push_back(t);
    } else if (ln.key == "trans") {
      if (ln.args.size() != 3)
        syntax_error(ln.number, 1, "trans takes 'source symbol target'");
      trans_lines.push_back(ln);
    } else {
      syntax_error(ln.number, 1, "unknown key '" + ln.key + "'");
    }
  }

  if (!kind) fail(Errc::parse, "missing 'kind' line");
  if (!saw_alphabet) fail(Errc::parse, "missing 'alphabet' line");
  if (!saw_states || state_names.empty()) fail(Errc::parse, "missing or empty 'states' line");

  Automaton a = new_automaton(*kind, alphabet, static_cast<int>(state_names.size()), state_names);

  if (initial_tok) {
    int q = a.state_index(initial_tok->text);
    if (q < 0)
      syntax_error(initial_tok->line, initial_tok->column,
                   "dangling state name '" + initial_tok->text + "'");
    a.initial = q;
  }
  for (auto& t : final_toks) {
    int q = a.state_index(t.text);
    if (q < 0) syntax_error(t.line, t.column, "dangling state name '" + t.text + "'");
    a.finals.set(q);
  }
  for (auto& ln : trans_lines) {
    int from = a.state_index(ln.args[0].text);
    if (from < 0)
      syntax_error(ln.number, ln.args[0].column, "dangling state name '" + ln.args[0].text + "'");
    int sym = a.alphabet.index_of(ln.args[1].text);
    if (sym < 0)
      syntax_error(ln.number, ln.args[1].column, "unknown symbol '" + ln.args[1].text + "'");
    int to = a.state_index(ln.args[2].text);
    if (to < 0)
      syntax_error(ln.number, ln.args[2].column, "dangling state name '" + ln.args[2].text + "'");
    a.add_transition(from, sym, to);
  }

  a.validate();
  return a;
}

std::string format_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "kind: " << (a.kind == Kind::Dcsa ? "dcsa" : a.kind == Kind::Pdfa ? "pdfa" : "nfa")
      << "\n";
  out << "alphabet:";
  for (const auto& t : a.alphabet.names) out << " " << t;
  out << "\n";
  out << "states:";
  for (const auto& s : a.state_names) out << " " << s;
  out << "\n";
  if (a.initial) out << "initial: " << a.state_names[*a.initial] << "\n";
  if (a.finals.any()) {
    out << "final:";
    for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
      out << " " << a.state_names[q];
    out << "\n";
  }
  std::vector<std::tuple<int, int, int>> triples;
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) triples.emplace_back(q, x, t);
  std::sort(triples.begin(), triples.end());
  for (auto [q, x, t] : triples)
    out << "trans: " << a.state_names[q] << " " << a.alphabet.names[x] << " " << a.state_names[t]
        << "\n";
  return out.str();
}

std::string to_dot(const Automaton& a) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    out << "  \"" << a.state_names[q] << "\" [shape=doublecircle];\n";
  if (a.initial) {
    out << "  __start [shape=point];\n";
    out << "  __start -> \"" << a.state_names[*a.initial] << "\";\n";
  }
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x))
        out << "  \"" << a.state_names[q] << "\" -> \"" << a.state_names[t] << "\" [label=\""
            << a.alphabet.names[x] << "\"];\n";
  out << "}\n";
  return out.str();
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  if (text.empty() || text == "-") return w;
  if (text.find('.') != std::string_view::npos) {
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t dot = text.find('.', pos);
      std::string tok(text.substr(pos, dot == std::string_view::npos ? std::string_view::npos
                                                                     : dot - pos));
      int sym = alphabet.index_of(tok);
      if (sym < 0) fail(Errc::bad_word, "unknown symbol '" + tok + "' in word");
      w.push_back(sym);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return w;
  }
  bool all_single = true;
  for (const auto& t : alphabet.names)
    if (t.size() != 1) all_single = false;
  if (all_single) {
    for (char c : text) {
      int sym = alphabet.index_of(std::string(1, c));
      if (sym < 0) fail(Errc::bad_word, std::string("unknown symbol '") + c + "' in word");
      w.push_back(sym);
    }
    return w;
  }
  int sym = alphabet.index_of(std::string(text));
  if (sym < 0) fail(Errc::bad_word, "cannot tokenize word '" + std::string(text) + "'");
  w.push_back(sym);
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "-";
  bool all_single = true;
  for (const auto& t : alphabet.names)
    if (t.size() != 1) all_single = false;
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !all_single) out += ".";
    out += alphabet.names[w[i]];
  }
  return out;
}

}  // namespace polysync
