// sdtool: command-line front end for the selfdist library.
//
// Exit codes: 0 answered (positive where boolean), 1 negative verdict,
// 2 usage or input error, 3 budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "selfdist/braid.hpp"
#include "selfdist/error.hpp"
#include "selfdist/finite_shelves.hpp"
#include "selfdist/ld_calculus.hpp"
#include "selfdist/ld_word_problem.hpp"
#include "selfdist/racks_quandles.hpp"
#include "selfdist/term.hpp"

using nlohmann::json;
using namespace selfdist;

namespace {

constexpr int kAnswered = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Outcome {
  json record = json::object();
  std::string text;
  int code = kAnswered;
};

Outcome verdict(bool yes, const char *pos, const char *neg) {
  Outcome o;
  o.record["verdict"] = yes ? pos : neg;
  o.text = std::string(yes ? pos : neg) + "\n";
  o.code = yes ? kAnswered : kNegative;
  return o;
}

json table_json(const ShelfTable &s) {
  json rows = json::array();
  for (int a = 1; a <= s.size(); ++a)
    rows.push_back(s.row(a));
  return {{"n", s.size()}, {"rows", rows}};
}

json report_json(const LawReport &r) {
  json j{{"law", r.law}, {"holds", r.holds}};
  j["counterexample"] = r.counterexample ? json(*r.counterexample) : json();
  return j;
}

std::string report_text(const LawReport &r) {
  std::string s = r.law + ": " + (r.holds ? "holds" : "fails");
  if (r.counterexample) {
    s += " at (";
    for (std::size_t i = 0; i < r.counterexample->size(); ++i)
      s += (i ? "," : "") + std::to_string((*r.counterexample)[i]);
    s += ")";
  }
  return s + "\n";
}

ShelfTable load_table(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open table file '" + path + "'");
  return read_table(in);
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty())
      out.push_back(item);
  return out;
}

// wp ---------------------------------------------------------------------------

struct WpArgs {
  std::string lhs, rhs, method;
  std::size_t cap = 100000;
  bool trace = false;
};

Outcome run_polish(const Term &t, const Term &u, const WpArgs &a) {
  PolishOutcome r = wp_polish(t, u, a.cap, a.trace);
  if (r.verdict == PolishVerdict::CapExceeded)
    throw BudgetExceeded("Polish algorithm reached the step cap " +
                         std::to_string(a.cap));
  Outcome o = verdict(r.verdict == PolishVerdict::Equivalent, "equivalent",
                      "not equivalent");
  o.record["steps"] = r.steps;
  o.record["final_left"] = to_infix(r.left);
  o.record["final_right"] = to_infix(r.right);
  if (a.trace) {
    json steps = json::array();
    std::string text;
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const PolishStep &s = r.trace[i];
      steps.push_back({{"p", s.disc.p},
                       {"side", s.disc.side},
                       {"at", s.at.to_string()},
                       {"expansion", to_string(s.expansion)},
                       {"left", s.left_before},
                       {"right", s.right_before}});
      text += "step " + std::to_string(i + 1) + ": clash (" +
              std::to_string(s.disc.p) + "," + std::to_string(s.disc.side) +
              ") expand side " + std::to_string(s.disc.side) + " by " +
              to_string(s.expansion) + "\n  " + s.left_before + "\n  " +
              s.right_before + "\n";
    }
    o.record["trace"] = steps;
    o.text = text + o.text;
  }
  return o;
}

Outcome cmd_wp(const WpArgs &a) {
  Term t = parse_term(a.lhs), u = parse_term(a.rhs);
  std::string method = a.method;
  bool one_var = t.is_one_variable() && u.is_one_variable() &&
                 t.min_var() == u.min_var() && !t.has_bwd() && !u.has_bwd();
  Outcome o;
  if (method.empty()) {
    if (one_var) {
      method = "semantic";
      o = verdict(wp_ld_semantic(t, u), "equivalent", "not equivalent");
    } else {
      try {
        method = "polish";
        o = run_polish(t, u, a);
      } catch (const BudgetExceeded &) {
        method = "syntactic";
        o = verdict(wp_ld_syntactic(t, u), "equivalent", "not equivalent");
      }
    }
  } else if (method == "semantic") {
    o = verdict(wp_ld_semantic(t, u), "equivalent", "not equivalent");
  } else if (method == "polish") {
    o = run_polish(t, u, a);
  } else if (method == "syntactic") {
    o = verdict(wp_ld_syntactic(t, u), "equivalent", "not equivalent");
  } else {
    o = verdict(wp_ld_normalform(t, u), "equivalent", "not equivalent");
  }
  o.record["method"] = method;
  o.record["left"] = to_infix(t);
  o.record["right"] = to_infix(u);
  return o;
}

// Other commands -----------------------------------------------------------

Outcome cmd_wp_structure(const std::string &lhs, const std::string &rhs,
                         bool quandle) {
  Term t = parse_term(lhs), u = parse_term(rhs);
  bool eq = quandle ? wp_quandle(t, u) : wp_rack(t, u);
  Outcome o = verdict(eq, "equivalent", "not equivalent");
  o.record["left"] = to_infix(t);
  o.record["right"] = to_infix(u);
  if (quandle) {
    o.record["left_value"] = to_string(eval_quandle(t));
    o.record["right_value"] = to_string(eval_quandle(u));
  } else {
    o.record["left_value"] = to_string(eval_rack(t));
    o.record["right_value"] = to_string(eval_rack(u));
  }
  return o;
}

Outcome cmd_normal_form(const std::string &term, int max_degree) {
  Term t = parse_term(term);
  NormalFormOptions opts;
  opts.max_degree = max_degree;
  NormalFormResult r = normal_form_ex(t, opts);
  Outcome o;
  o.record["input"] = to_infix(t);
  o.record["normal_form"] = to_infix(r.term);
  o.record["polish"] = to_polish_string(r.term);
  o.record["degree"] = r.degree;
  o.record["n"] = r.n;
  o.text = to_infix(r.term) + "\n";
  return o;
}

Outcome cmd_enum_normal(int n, int degree) {
  auto list = enumerate_normal(n, degree);
  Outcome o;
  json items = json::array();
  for (const auto &nt : list) {
    items.push_back({{"degree", nt.degree},
                     {"term", to_infix(nt.term)},
                     {"polish", to_polish_string(nt.term)}});
    o.text += std::to_string(nt.degree) + " " + to_polish_string(nt.term) + "\n";
  }
  o.record["n"] = n;
  o.record["max_degree"] = degree;
  o.record["terms"] = items;
  return o;
}

Outcome cmd_braid_eval(const std::string &term) {
  Term t = parse_term(term);
  BraidWord w = eval_term(t);
  Outcome o;
  o.record["input"] = to_infix(t);
  o.record["braid"] = braid_to_string(w);
  o.text = braid_to_string(w) + "\n";
  return o;
}

Outcome cmd_braid_equiv(const std::string &a, const std::string &b) {
  BraidWord x = parse_braid_word(a), y = parse_braid_word(b);
  Outcome o = verdict(braid_equiv(x, y), "equivalent", "not equivalent");
  o.record["left"] = braid_to_string(x);
  o.record["right"] = braid_to_string(y);
  return o;
}

Outcome cmd_compare(const std::string &lhs, const std::string &rhs) {
  Term t = parse_term(lhs), u = parse_term(rhs);
  Ordering ord = compare_ld(t, u);
  Outcome o;
  o.record["left"] = to_infix(t);
  o.record["right"] = to_infix(u);
  o.record["order"] = to_string(ord);
  o.text = std::string(to_string(ord)) + "\n";
  return o;
}

Outcome cmd_expand(const std::string &term, const std::string &at,
                   const std::string &word) {
  Term t = parse_term(term);
  Term r = word.empty() ? expand_seq(t, parse_address_list(at))
                        : apply_generator_word(t, parse_generator_word(word));
  Outcome o;
  o.record["input"] = to_infix(t);
  o.record["result"] = to_infix(r);
  o.text = to_infix(r) + "\n";
  return o;
}

Outcome cmd_derive(const std::string &term, int power) {
  Term t = parse_term(term);
  Term r = derive_power(t, power);
  Outcome o;
  o.record["input"] = to_infix(t);
  o.record["power"] = power;
  o.record["size"] = r.size();
  if (r.size() <= 4096) {
    o.record["result"] = to_infix(r);
    o.text = to_infix(r) + "\n";
  } else {
    o.record["result"] = nullptr;
    o.text = "<term with " + std::to_string(r.size()) + " leaves>\n";
  }
  return o;
}

Outcome cmd_laver(int k, int cap) {
  ShelfTable s = laver_table(k, cap);
  Outcome o;
  o.record["k"] = k;
  o.record["table"] = table_json(s);
  std::ostringstream out;
  write_table(out, s);
  o.text = out.str();
  return o;
}

Outcome cmd_check_table(const std::string &path, const std::string &laws) {
  ShelfTable s = load_table(path);
  std::vector<Law> list;
  for (const auto &name : split(laws, ',')) {
    if (name == "rack") {
      list.push_back(Law::RD);
      list.push_back(Law::RightBijective);
    } else {
      list.push_back(parse_law(name));
    }
  }
  if (list.empty())
    throw InvalidArgument("no laws given");
  Outcome o;
  json reports = json::array();
  bool all = true;
  for (Law law : list) {
    LawReport r = check_law(s, law);
    all = all && r.holds;
    reports.push_back(report_json(r));
    o.text += report_text(r);
  }
  o.record["n"] = s.size();
  o.record["reports"] = reports;
  o.record["verdict"] = all ? "holds" : "fails";
  o.code = all ? kAnswered : kNegative;
  return o;
}

Outcome cmd_check_eq(const std::string &path, const std::string &equation,
                     const std::string &assign) {
  ShelfTable s = load_table(path);
  auto eq = equation.find('=');
  if (eq == std::string::npos)
    throw InvalidArgument("equation must have the form lhs=rhs");
  Term lhs = parse_term(equation.substr(0, eq));
  Term rhs = parse_term(equation.substr(eq + 1));
  std::optional<std::map<int, int>> values;
  if (!assign.empty()) {
    values.emplace();
    for (const auto &item : split(assign, ',')) {
      auto pos = item.find('=');
      if (pos == std::string::npos)
        throw InvalidArgument("assignment '" + item + "' lacks '='");
      Term var = parse_term(item.substr(0, pos));
      if (!var.is_leaf())
        throw InvalidArgument("'" + item.substr(0, pos) + "' is not a variable");
      (*values)[var.var()] = std::stoi(item.substr(pos + 1));
    }
  }
  LawReport r = check_equation(s, lhs, rhs, values);
  Outcome o;
  o.record["report"] = report_json(r);
  o.record["verdict"] = r.holds ? "holds" : "fails";
  o.text = report_text(r);
  o.code = r.holds ? kAnswered : kNegative;
  return o;
}

Outcome cmd_rack_nf(const std::string &term, bool quandle) {
  Term t = parse_term(term);
  Term r = quandle ? quandle_normal_term(t) : rack_normal_term(t);
  Outcome o;
  o.record["input"] = to_infix(t);
  o.record["structure"] = quandle ? "quandle" : "rack";
  o.record["normal_form"] = to_infix(r);
  o.text = to_infix(r) + "\n";
  return o;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Selfdistributivity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a JSON record");

  std::string command;
  auto sub = [&](const char *name, const char *help) {
    CLI::App *s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  WpArgs wp;
  {
    auto *s = sub("wp", "LD word problem");
    s->add_option("lhs", wp.lhs)->required();
    s->add_option("rhs", wp.rhs)->required();
    s->add_option("--method", wp.method)
        ->check(CLI::IsMember({"semantic", "polish", "syntactic", "normal"}));
    s->add_option("--cap", wp.cap, "Polish step cap");
    s->add_flag("--trace", wp.trace);
  }
  std::string lhs, rhs, term, at, word, file, laws, equation, assign;
  int n = 3, degree = 3, nf_degree = 4, power = 1, k = 0, cap = kLaverCap;
  bool quandle = false, contract = false;
  for (const char *name : {"wp-rack", "wp-quandle", "braid-equiv", "compare"}) {
    auto *s = sub(name, name);
    s->add_option("lhs", lhs)->required();
    s->add_option("rhs", rhs)->required();
  }
  {
    auto *s = sub("normal-form", "LD normal form of a one-variable term");
    s->add_option("term", term)->required();
    s->add_option("--max-degree", nf_degree);
  }
  {
    auto *s = sub("enum-normal", "Normal terms below x^[n]");
    s->add_option("n,--n", n)->required();
    s->add_option("degree,--degree", degree)->required();
  }
  for (const char *name : {"braid-eval", "rack-nf"}) {
    auto *s = sub(name, name);
    s->add_option("term", term)->required();
    if (std::string(name) == "rack-nf")
      s->add_flag("--quandle", quandle);
  }
  {
    auto *s = sub("expand", "Apply LD expansions or a generator word");
    s->add_option("term", term)->required();
    auto *a = s->add_option("--at", at, "Comma-separated addresses");
    auto *w = s->add_option("--word", word, "Generator word, e.g. 'e 1^-1'");
    a->excludes(w);
    s->add_flag("--contract", contract, "Contract at a single address");
  }
  {
    auto *s = sub("derive", "Derived term");
    s->add_option("term", term)->required();
    s->add_option("--power", power)->check(CLI::Range(0, 64));
  }
  {
    auto *s = sub("laver", "Print the Laver table A_k");
    s->add_option("k", k)->required();
    s->add_option("--cap", cap);
  }
  {
    auto *s = sub("check-table", "Check laws on a table file");
    s->add_option("file", file)->required();
    s->add_option("--laws", laws)->default_val("ld");
  }
  {
    auto *s = sub("check-eq", "Check an equation on a table file");
    s->add_option("file", file)->required();
    s->add_option("equation", equation)->required();
    s->add_option("--assign", assign);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  Outcome out;
  try {
    if (command == "wp")
      out = cmd_wp(wp);
    else if (command == "wp-rack" || command == "wp-quandle")
      out = cmd_wp_structure(lhs, rhs, command == "wp-quandle");
    else if (command == "normal-form")
      out = cmd_normal_form(term, nf_degree);
    else if (command == "enum-normal")
      out = cmd_enum_normal(n, degree);
    else if (command == "braid-eval")
      out = cmd_braid_eval(term);
    else if (command == "braid-equiv")
      out = cmd_braid_equiv(lhs, rhs);
    else if (command == "compare")
      out = cmd_compare(lhs, rhs);
    else if (command == "expand") {
      if (contract) {
        Address alpha = Address::parse(at);
        Term r = apply_ld(parse_term(term), alpha, Direction::Contract);
        out.record["input"] = to_infix(parse_term(term));
        out.record["result"] = to_infix(r);
        out.text = to_infix(r) + "\n";
      } else {
        out = cmd_expand(term, at, word);
      }
    } else if (command == "derive")
      out = cmd_derive(term, power);
    else if (command == "laver")
      out = cmd_laver(k, cap);
    else if (command == "check-table")
      out = cmd_check_table(file, laws);
    else if (command == "check-eq")
      out = cmd_check_eq(file, equation, assign);
    else if (command == "rack-nf")
      out = cmd_rack_nf(term, quandle);
  } catch (const BudgetExceeded &e) {
    out.record["error"] = {{"kind", "budget"}, {"message", e.what()}};
    out.text.clear();
    out.code = kBudget;
    std::cerr << "budget exceeded: " << e.what() << "\n";
  } catch (const CapExceeded &e) {
    out.record["error"] = {{"kind", "cap"}, {"message", e.what()}};
    out.code = kUsage;
    std::cerr << "error: " << e.what() << "\n";
  } catch (const Error &e) {
    out.record["error"] = {{"kind", "input"}, {"message", e.what()}};
    out.code = kUsage;
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::logic_error &e) {
    out.record["error"] = {{"kind", "input"}, {"message", e.what()}};
    out.code = kUsage;
    std::cerr << "error: " << e.what() << "\n";
  }

  if (as_json) {
    out.record["command"] = command;
    out.record["exit_code"] = out.code;
    std::cout << out.record.dump(2) << "\n";
  } else {
    std::cout << out.text;
  }
  return out.code;
}
