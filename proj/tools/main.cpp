// polysync command line: constrained synchronization for polycyclic
// constraint automata, plus the surrounding toolbox. Thin shell over the
// shared library's C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polysync.h"

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitError);
}

void check(ps_status st) {
  if (st != PS_OK) die(ps_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) die("cannot write '" + out_path + "'");
  out << text;
}

struct AutomatonHandle {
  ps_automaton* ptr = nullptr;
  ~AutomatonHandle() { ps_automaton_free(ptr); }
};

struct InstanceHandle {
  ps_instance* ptr = nullptr;
  ~InstanceHandle() { ps_instance_free(ptr); }
};

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ps_string_free(s);
  return out;
}

void load_automaton(const std::string& path, AutomatonHandle& h) {
  check(ps_automaton_parse(read_file(path).c_str(), &h.ptr));
}

json automaton_stats(const ps_automaton* a) {
  return json{{"states", ps_automaton_state_count(a)},
              {"symbols", ps_automaton_symbol_count(a)}};
}

int verdict_exit(bool yes, const std::string& yes_word, const std::string& no_word, bool as_json,
                 const json& witness, const json& stats) {
  if (as_json) {
    std::cout << json{{"verdict", yes ? yes_word : no_word}, {"witness", witness},
                      {"stats", stats}}
                     .dump()
              << "\n";
  } else {
    std::cout << (yes ? yes_word : no_word) << "\n";
  }
  return yes ? kExitYes : kExitNo;
}

// Instance files may carry S:/T: lines; when explicit sets are given on the
// command line they win and the file lines are ignored.
std::string strip_set_lines(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t");
    if (i != std::string::npos &&
        (line.compare(i, 2, "S:") == 0 || line.compare(i, 2, "T:") == 0))
      continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-automata toolbox for constrained synchronization under polycyclic "
               "constraint languages"};
  app.require_subcommand(1);

  // ---- fmt ----
  std::string fmt_file, fmt_out;
  bool fmt_dot = false;
  auto* fmt = app.add_subcommand("fmt", "re-serialize an automaton file in canonical form");
  fmt->add_option("file", fmt_file, "automaton file")->required();
  fmt->add_flag("--dot", fmt_dot, "emit graphviz instead");
  fmt->add_option("-o,--output", fmt_out, "write to a file instead of stdout");

  // ---- sync ----
  auto* sync = app.add_subcommand("sync", "unconstrained synchronization");
  sync->require_subcommand(1);
  std::string sync_check_file, sync_word_file;
  bool sync_check_json = false, sync_word_json = false;
  auto* sync_check = sync->add_subcommand("check", "is the automaton synchronizing");
  sync_check->add_option("file", sync_check_file)->required();
  sync_check->add_flag("--json", sync_check_json);
  auto* sync_word = sync->add_subcommand("word", "compute a synchronizing word");
  sync_word->add_option("file", sync_word_file)->required();
  sync_word->add_flag("--json", sync_word_json);

  // ---- poly ----
  auto* poly = app.add_subcommand("poly", "polycyclic automata");
  poly->require_subcommand(1);
  std::string poly_check_file, poly_skel_file;
  bool poly_check_json = false;
  auto* poly_check = poly->add_subcommand("check", "is the automaton polycyclic");
  poly_check->add_option("file", poly_check_file)->required();
  poly_check->add_flag("--json", poly_check_json);
  auto* poly_skel = poly->add_subcommand("skeleton", "cycle words of all on-cycle states");
  poly_skel->add_option("file", poly_skel_file)->required();
  std::string op_kind, op_left, op_right, op_word, op_out;
  auto* poly_op = poly->add_subcommand("op", "closure constructions");
  poly_op->add_option("operation", op_kind, "complement|union|intersect|concat|quotient")
      ->required();
  poly_op->add_option("left", op_left, "first operand file")->required();
  poly_op->add_option("right", op_right, "second operand file (union|intersect|concat)");
  poly_op->add_option("--word", op_word, "quotient word");
  poly_op->add_option("-o,--output", op_out, "write to a file instead of stdout");

  // ---- constr ----
  auto* constr = app.add_subcommand("constr", "constrained synchronization");
  constr->require_subcommand(1);
  std::string cs_constraint, cs_input, cs_mode = "auto";
  bool cs_allow_oracle = false, cs_json = false, cs_expand = false;
  std::string cs_max_expansion = "1000";
  auto* cs = constr->add_subcommand("solve", "decide constrained synchronizability");
  cs->add_option("--constraint", cs_constraint, "constraint automaton file")->required();
  cs->add_option("--input", cs_input, "input semi-automaton file")->required();
  cs->add_option("--mode", cs_mode, "auto|search|pcase|oracle");
  cs->add_flag("--allow-oracle", cs_allow_oracle,
               "let auto mode fall back to the exponential oracle");
  cs->add_flag("--json", cs_json);
  cs->add_flag("--expand", cs_expand, "also print the flat witness word");
  cs->add_option("--max-expansion", cs_max_expansion, "expansion length bound");
  std::string cv_constraint, cv_input, cv_code;
  bool cv_json = false;
  auto* cv = constr->add_subcommand("verify", "replay a witness certificate");
  cv->add_option("--constraint", cv_constraint)->required();
  cv->add_option("--input", cv_input)->required();
  cv->add_option("--code", cv_code, "certificate text")->required();
  cv->add_flag("--json", cv_json);

  // ---- reduce ----
  auto* reduce = app.add_subcommand("reduce", "set transporter and hardness gadgets");
  reduce->require_subcommand(1);
  std::string dj_file, dj_s, dj_t, dj_out;
  auto* dj = reduce->add_subcommand("disjointify", "make source and target sets disjoint");
  dj->add_option("file", dj_file, "instance or automaton file")->required();
  dj->add_option("--S", dj_s, "source state names (comma separated)");
  dj->add_option("--T", dj_t, "target state names (comma separated)");
  dj->add_option("-o,--output", dj_out);
  std::string gd_file, gd_u, gd_v, gd_w, gd_out, gd_constraint_out;
  auto* gd = reduce->add_subcommand("gadget", "build the hardness reduction gadget");
  gd->add_option("instance", gd_file, "unary disjoint instance file")->required();
  gd->add_option("--u", gd_u)->required();
  gd->add_option("--v", gd_v)->required();
  gd->add_option("--w", gd_w)->required();
  gd->add_option("-o,--output", gd_out);
  gd->add_option("--constraint-out", gd_constraint_out, "also write the u v* {w} automaton");
  int bt_count = 0, bt_max_q = 0;
  unsigned long long bt_seed = 0;
  std::string bt_triple;
  bool bt_json = false;
  auto* bt = reduce->add_subcommand("batch", "random-instance equivalence report");
  bt->add_option("--count", bt_count)->required();
  bt->add_option("--max-q", bt_max_q)->required();
  bt->add_option("--triple", bt_triple, "u,v,w")->required();
  bt->add_option("--seed", bt_seed)->required();
  bt->add_flag("--json", bt_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (*fmt) {
    AutomatonHandle a;
    load_automaton(fmt_file, a);
    char* text = nullptr;
    check(fmt_dot ? ps_automaton_to_dot(a.ptr, &text) : ps_automaton_format(a.ptr, &text));
    write_output(take_string(text), fmt_out);
    return kExitYes;
  }

  if (*sync_check) {
    AutomatonHandle a;
    load_automaton(sync_check_file, a);
    int yes = 0;
    check(ps_sync_check(a.ptr, &yes));
    return verdict_exit(yes, "yes", "no", sync_check_json, nullptr, automaton_stats(a.ptr));
  }

  if (*sync_word) {
    AutomatonHandle a;
    load_automaton(sync_word_file, a);
    int found = 0;
    char *word = nullptr, *sink = nullptr;
    check(ps_sync_word(a.ptr, &found, &word, &sink));
    json witness;
    if (found) {
      std::string w = take_string(word), s = take_string(sink);
      witness = json{{"word", w}, {"sink", s}};
      std::cerr << "witness: " << w << "\nsink: " << s << "\n";
    }
    return verdict_exit(found, "yes", "no", sync_word_json, witness, automaton_stats(a.ptr));
  }

  if (*poly_check) {
    AutomatonHandle a;
    load_automaton(poly_check_file, a);
    int yes = 0;
    check(ps_poly_check(a.ptr, &yes));
    return verdict_exit(yes, "polycyclic", "not-polycyclic", poly_check_json, nullptr,
                        automaton_stats(a.ptr));
  }

  if (*poly_skel) {
    AutomatonHandle a;
    load_automaton(poly_skel_file, a);
    char* report = nullptr;
    check(ps_poly_skeleton(a.ptr, &report));
    std::cout << take_string(report);
    return kExitYes;
  }

  if (*poly_op) {
    AutomatonHandle left, right, result;
    load_automaton(op_left, left);
    bool binary = op_kind == "union" || op_kind == "intersect" || op_kind == "concat";
    if (binary) {
      if (op_right.empty()) die(op_kind + " takes two operand files");
      load_automaton(op_right, right);
    } else if (!op_right.empty()) {
      die(op_kind + " takes a single operand file");
    }
    if (op_kind == "complement")
      check(ps_poly_complement(left.ptr, &result.ptr));
    else if (op_kind == "union")
      check(ps_poly_union(left.ptr, right.ptr, &result.ptr));
    else if (op_kind == "intersect")
      check(ps_poly_intersection(left.ptr, right.ptr, &result.ptr));
    else if (op_kind == "concat")
      check(ps_poly_concat(left.ptr, right.ptr, &result.ptr));
    else if (op_kind == "quotient")
      check(ps_poly_quotient(left.ptr, op_word.c_str(), &result.ptr));
    else
      die("unknown operation '" + op_kind + "'");
    char* text = nullptr;
    check(ps_automaton_format(result.ptr, &text));
    write_output(take_string(text), op_out);
    return kExitYes;
  }

  if (*cs) {
    AutomatonHandle input, constraint;
    load_automaton(cs_input, input);
    load_automaton(cs_constraint, constraint);
    if (cs_mode == "auto") {
      char* cls = nullptr;
      if (ps_constr_classify(constraint.ptr, &cls) == PS_OK)
        std::cerr << "complexity: " << take_string(cls) << "\n";
    }
    int decision = 0;
    char *witness = nullptr, *length = nullptr;
    check(ps_constr_solve(input.ptr, constraint.ptr, cs_mode.c_str(), cs_allow_oracle ? 1 : 0,
                          &decision, &witness, &length));
    std::string code = take_string(witness), len = take_string(length);
    json jwitness;
    json stats = json{{"mode", cs_mode},
                      {"input", automaton_stats(input.ptr)},
                      {"constraint", automaton_stats(constraint.ptr)}};
    if (decision) {
      jwitness = code;
      stats["expanded_length"] = len;
      std::cerr << "witness: " << code << "\nlength: " << len << "\n";
      if (cs_expand) {
        int fits = 0;
        char* flat = nullptr;
        check(ps_wcode_expand(constraint.ptr, code.c_str(), cs_max_expansion.c_str(), &fits,
                              &flat));
        if (fits) {
          std::string w = take_string(flat);
          stats["expanded"] = w;
          std::cerr << "expanded: " << w << "\n";
        } else {
          std::cerr << "expanded: (longer than " << cs_max_expansion << ")\n";
        }
      }
    }
    return verdict_exit(decision, "yes", "no", cs_json, jwitness, stats);
  }

  if (*cv) {
    AutomatonHandle input, constraint;
    load_automaton(cv_input, input);
    load_automaton(cv_constraint, constraint);
    int accepted = 0;
    check(ps_constr_verify(input.ptr, constraint.ptr, cv_code.c_str(), &accepted));
    std::cerr << (accepted ? "certificate accepted\n" : "certificate rejected\n");
    return verdict_exit(accepted, "yes", "no", cv_json, cv_code, json::object());
  }

  if (*dj) {
    InstanceHandle inst, result;
    std::string text = read_file(dj_file);
    if (!dj_s.empty() || !dj_t.empty()) {
      if (dj_s.empty() || dj_t.empty()) die("--S and --T must be given together");
      AutomatonHandle a;
      check(ps_automaton_parse(strip_set_lines(text).c_str(), &a.ptr));
      check(ps_instance_make(a.ptr, dj_s.c_str(), dj_t.c_str(), &inst.ptr));
    } else {
      check(ps_instance_parse(text.c_str(), &inst.ptr));
    }
    check(ps_reduce_disjointify(inst.ptr, &result.ptr));
    char* out = nullptr;
    check(ps_instance_format(result.ptr, &out));
    write_output(take_string(out), dj_out);
    return kExitYes;
  }

  if (*gd) {
    InstanceHandle inst;
    check(ps_instance_parse(read_file(gd_file).c_str(), &inst.ptr));
    AutomatonHandle gadget, constraint;
    check(ps_reduce_gadget(inst.ptr, gd_u.c_str(), gd_v.c_str(), gd_w.c_str(), &gadget.ptr,
                           &constraint.ptr));
    char* text = nullptr;
    check(ps_automaton_format(gadget.ptr, &text));
    write_output(take_string(text), gd_out);
    if (!gd_constraint_out.empty()) {
      char* ctext = nullptr;
      check(ps_automaton_format(constraint.ptr, &ctext));
      write_output(take_string(ctext), gd_constraint_out);
    }
    return kExitYes;
  }

  if (*bt) {
    auto comma1 = bt_triple.find(',');
    auto comma2 = comma1 == std::string::npos ? std::string::npos
                                              : bt_triple.find(',', comma1 + 1);
    if (comma2 == std::string::npos) die("--triple takes u,v,w");
    std::string u = bt_triple.substr(0, comma1);
    std::string v = bt_triple.substr(comma1 + 1, comma2 - comma1 - 1);
    std::string w = bt_triple.substr(comma2 + 1);
    int all_agree = 0;
    char* report = nullptr;
    check(ps_reduce_batch(bt_count, bt_max_q, u.c_str(), v.c_str(), w.c_str(), bt_seed,
                          &all_agree, &report));
    std::string text = take_string(report);
    if (bt_json)
      std::cout << json{{"verdict", all_agree ? "yes" : "no"},
                        {"witness", nullptr},
                        {"stats", json{{"report", text}}}}
                       .dump()
                << "\n";
    else
      std::cout << text;
    return all_agree ? kExitYes : kExitNo;
  }

  die("no subcommand selected");
}
