// pact: batch front end for the process-algebra supervisory toolkit.
//
// Exit codes: 0 all checks pass, 1 a check failed (evidence printed),
// 2 usage or parse error, 3 resource budget exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pact/pact.hpp"

namespace {

struct Options {
  std::string model_path;
  std::string term;
  std::string plant;
  std::string supervisor;
  std::string encap;
  std::string rename;
  std::string left, right;
  std::string rename_left, rename_right;
  std::string b_spec = "U";
  std::vector<std::string> reqs;
  std::string format = "dot";
  std::string out_path;
  std::string evidence_out;
  size_t max_states = 100000;
  bool full_parens = false;
  bool eq = false;
  int verbosity = 0;
};

struct Evidence {
  std::vector<std::string> lines;

  void add(const std::string& line) { lines.push_back(line); }
  void add_trace(const std::vector<pact::Action>& trace) {
    for (const auto& a : trace) add("trace: " + a.str(false));
  }
  void flush(const Options& opt) const {
    for (const auto& l : lines) std::cout << "EVIDENCE: " << l << "\n";
    if (!opt.evidence_out.empty()) {
      std::ofstream f(opt.evidence_out);
      for (const auto& l : lines) f << l << "\n";
    }
  }
};

pact::Model load_model(const Options& opt) {
  std::ifstream f(opt.model_path);
  if (!f) throw pact::Error("cannot read model file: " + opt.model_path);
  std::stringstream buf;
  buf << f.rdbuf();
  return pact::parse_model(buf.str());
}

std::string sole_key(const std::map<std::string, std::vector<pact::EncapPattern>>& m) {
  return m.size() == 1 ? m.begin()->first : "";
}

const std::vector<pact::EncapPattern>& resolve_encap(const pact::Model& model,
                                                     std::string name) {
  if (name.empty()) name = sole_key(model.encapsulations);
  auto it = model.encapsulations.find(name);
  if (it == model.encapsulations.end()) {
    std::string choices;
    for (const auto& [k, v] : model.encapsulations) choices += " " + k;
    throw pact::Error("encapsulation set not resolved; pass --encap; available:" +
                      choices);
  }
  return it->second;
}

pact::RenamingMap resolve_renaming(const pact::Model& model, std::string name,
                                   bool required) {
  if (name.empty()) {
    if (model.renamings.size() == 1) return model.renamings.begin()->second;
    if (!required && model.renamings.empty()) return pact::RenamingMap{};
    std::string choices;
    for (const auto& [k, v] : model.renamings) choices += " " + k;
    throw pact::Error("renaming not resolved; pass --rename; available:" + choices);
  }
  auto it = model.renamings.find(name);
  if (it == model.renamings.end())
    throw pact::Error("unknown renaming: " + name);
  return it->second;
}

std::string resolve_plant_name(const pact::Model& model, const std::string& given) {
  if (!given.empty()) return given;
  if (model.plants.size() == 1) return model.plants.begin()->first;
  throw pact::Error("plant not resolved; pass --plant");
}

pact::Lts build(const pact::Model& model, const pact::TermPtr& term,
                size_t max_states) {
  if (model.state_based)
    return pact::build_sb_lts(term, model.effect, model.init, model.symbols,
                              max_states);
  return pact::build_lts(term, max_states);
}

// Supervised composition with grammar warnings (warn, not fail).
pact::TermPtr compose(const pact::Model& model, const std::string& plant_name,
                      const std::string& sup_name, const std::string& encap_name,
                      std::vector<std::string>& warnings) {
  pact::TermPtr plant = model.expand_named(plant_name);
  pact::TermPtr sup = model.expand_named(sup_name);
  auto E = resolve_encap(model, encap_name);
  pact::GrammarClass pg = model.state_based ? pact::GrammarClass::plant_state
                                            : pact::GrammarClass::plant_event;
  pact::GrammarClass sg = model.state_based
                              ? pact::GrammarClass::supervisor_state
                              : pact::GrammarClass::supervisor_event;
  auto pr = pact::classify_term(plant, pg, model.channel_classes);
  if (!pr.ok)
    warnings.push_back("plant " + plant_name + " violates the plant grammar at '" +
                       pact::term_str(pr.violation) + "': " + pr.reason);
  auto sr = pact::classify_term(sup, sg, model.channel_classes);
  if (!sr.ok)
    warnings.push_back("supervisor " + sup_name +
                       " violates the supervisor grammar at '" +
                       pact::term_str(sr.violation) + "': " + sr.reason);
  return pact::compose_supervised(plant, sup, E);
}

pact::BisimActionSet parse_b(const pact::Model& model, const std::string& spec) {
  if (spec == "all") return pact::BisimActionSet::all();
  if (spec == "U" || spec == "uncontrollable")
    return pact::BisimActionSet::uncontrollable(model.channel_classes);
  if (spec == "none" || spec == "empty" || spec.empty())
    return pact::BisimActionSet::none();
  std::set<pact::Action> actions;
  std::string item;
  std::stringstream ss(spec);
  while (std::getline(ss, item, ','))
    if (!item.empty()) actions.insert(pact::parse_action_literal(item));
  return pact::BisimActionSet::explicit_set(std::move(actions));
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out_path);
  f << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int report(const Options& opt, const std::string& what,
           const pact::ControlVerdict& v, const pact::Lts* l1 = nullptr,
           const pact::Lts* l2 = nullptr) {
  print_warnings(v.warnings);
  std::cout << what << ": " << (v.pass ? "PASS" : "FAIL");
  if (!v.pass && !v.detail.empty()) std::cout << " (" << v.detail << ")";
  std::cout << "\n";
  if (v.pass) return 0;
  Evidence ev;
  ev.add_trace(v.trace);
  if (v.witness_state && l1)
    ev.add("state: " + l1->state(*v.witness_state).str());
  if (l1 && l2)
    for (const auto& cex : v.pbisim_cex) pact::cex_lines(cex, *l1, *l2, ev.lines);
  ev.flush(opt);
  return 1;
}

int cmd_parse(const Options& opt) {
  pact::Model m = load_model(opt);
  std::cout << pact::print_model(m, opt.full_parens);
  return 0;
}

int cmd_lts(const Options& opt) {
  pact::Model m = load_model(opt);
  std::vector<std::string> warnings;
  pact::TermPtr t;
  if (!opt.supervisor.empty()) {
    t = compose(m, resolve_plant_name(m, !opt.term.empty() ? opt.term : opt.plant),
                opt.supervisor, opt.encap, warnings);
  } else {
    std::string name = !opt.term.empty() ? opt.term : resolve_plant_name(m, opt.plant);
    t = m.expand_named(name);
  }
  print_warnings(warnings);
  pact::Lts l = build(m, t, opt.max_states);
  if (!opt.rename.empty())
    l = pact::rename_labels(l, resolve_renaming(m, opt.rename, true));
  std::cerr << "states: " << l.num_states()
            << ", transitions: " << l.num_transitions() << "\n";
  write_output(opt, opt.format == "aut" ? pact::to_aut(l) : pact::to_dot(l));
  return 0;
}

int cmd_minimize(const Options& opt) {
  pact::Model m = load_model(opt);
  std::string name = !opt.term.empty() ? opt.term : resolve_plant_name(m, opt.plant);
  pact::TermPtr t = m.expand_named(name);
  pact::Lts l = build(m, t, opt.max_states);
  if (!opt.rename.empty())
    l = pact::rename_labels(l, resolve_renaming(m, opt.rename, true));
  pact::Lts q = pact::minimize(l, parse_b(m, opt.b_spec));
  std::cerr << "states: " << l.num_states() << " -> " << q.num_states()
            << ", transitions: " << l.num_transitions() << " -> "
            << q.num_transitions() << "\n";
  write_output(opt, opt.format == "aut" ? pact::to_aut(q) : pact::to_dot(q));
  return 0;
}

int cmd_check_pbisim(const Options& opt) {
  pact::Model m = load_model(opt);
  pact::TermPtr lt = m.expand_named(opt.left);
  pact::TermPtr rt = m.expand_named(opt.right);
  pact::Lts l1 = build(m, lt, opt.max_states);
  pact::Lts l2 = build(m, rt, opt.max_states);
  if (!opt.rename_left.empty())
    l1 = pact::rename_labels(l1, resolve_renaming(m, opt.rename_left, true));
  if (!opt.rename_right.empty())
    l2 = pact::rename_labels(l2, resolve_renaming(m, opt.rename_right, true));
  pact::BisimActionSet B = parse_b(m, opt.b_spec);
  for (const auto& a : B.strays(l1, l2))
    std::cerr << "warning: bisimulation action " << a.str()
              << " occurs in neither system\n";
  std::string what = opt.left + (opt.eq ? " <->_B " : " <=_B ") + opt.right +
                     " with B = " + B.str();
  if (opt.eq) {
    pact::PbisimEqOutcome r = pact::pbisim_eq(l1, l2, B);
    std::cout << what << ": " << (r.holds ? "PASS" : "FAIL") << "\n";
    if (r.holds) return 0;
    Evidence ev;
    if (!r.forward.holds) {
      ev.add("forward direction fails:");
      for (const auto& cex : r.forward.counterexample)
        pact::cex_lines(cex, l1, l2, ev.lines);
    }
    if (!r.backward.holds) {
      ev.add("backward direction fails:");
      for (const auto& cex : r.backward.counterexample)
        pact::cex_lines(cex, l2, l1, ev.lines);
    }
    ev.flush(opt);
    return 1;
  }
  pact::PbisimOutcome r = pact::pbisim_leq(l1, l2, B);
  std::cout << what << ": " << (r.holds ? "PASS" : "FAIL") << "\n";
  if (r.holds) return 0;
  Evidence ev;
  for (const auto& cex : r.counterexample) pact::cex_lines(cex, l1, l2, ev.lines);
  ev.flush(opt);
  return 1;
}

int cmd_check_controllable(const Options& opt, bool language) {
  pact::Model m = load_model(opt);
  std::vector<std::string> warnings;
  std::string plant_name = resolve_plant_name(m, opt.plant);
  if (opt.supervisor.empty()) throw pact::Error("pass --supervisor");
  pact::TermPtr sup_term = compose(m, plant_name, opt.supervisor, opt.encap, warnings);
  print_warnings(warnings);
  pact::TermPtr plant = m.expand_named(plant_name);
  pact::Lts supervised = build(m, sup_term, opt.max_states);
  pact::Lts renamed_plant = pact::rename_labels(
      build(m, plant, opt.max_states), resolve_renaming(m, opt.rename, false));
  pact::ControlVerdict v =
      language ? pact::check_language_controllability(supervised, renamed_plant,
                                                      m.channel_classes)
               : pact::check_controllability(supervised, renamed_plant,
                                             m.channel_classes);
  std::string what = language ? "check lang-controllable" : "check controllable";
  return report(opt, what, v, &supervised, &renamed_plant);
}

int cmd_check_blocking(const Options& opt, bool nonblocking) {
  pact::Model m = load_model(opt);
  std::vector<std::string> warnings;
  pact::TermPtr t;
  std::string plant_name = resolve_plant_name(m, opt.plant);
  if (!opt.supervisor.empty())
    t = compose(m, plant_name, opt.supervisor, opt.encap, warnings);
  else
    t = m.expand_named(plant_name);
  print_warnings(warnings);
  pact::Lts l = build(m, t, opt.max_states);
  pact::ControlVerdict v =
      nonblocking ? pact::check_nonblocking(l) : pact::check_deadlock_free(l);
  return report(opt, nonblocking ? "check nonblocking" : "check deadlock", v, &l);
}

int cmd_check_reqs(const Options& opt) {
  pact::Model m = load_model(opt);
  if (!m.state_based)
    throw pact::Error("requirements need a state-based model");
  std::vector<std::string> warnings;
  std::string plant_name = resolve_plant_name(m, opt.plant);
  pact::TermPtr t;
  if (!opt.supervisor.empty())
    t = compose(m, plant_name, opt.supervisor, opt.encap, warnings);
  else
    t = m.expand_named(plant_name);
  print_warnings(warnings);
  pact::Lts l = build(m, t, opt.max_states);
  std::vector<const pact::Requirement*> to_run;
  if (opt.reqs.empty()) {
    for (const auto& r : m.requirements) to_run.push_back(&r);
  } else {
    for (const auto& name : opt.reqs) {
      const pact::Requirement* r = m.find_requirement(name);
      if (!r) throw pact::Error("unknown requirement: " + name);
      to_run.push_back(r);
    }
  }
  if (to_run.empty()) throw pact::Error("the model declares no requirements");
  int rc = 0;
  Evidence ev;
  for (const pact::Requirement* r : to_run) {
    pact::RequirementResult res = pact::check_requirement(l, *r, m.effect);
    std::cout << "req " << r->name << ": " << (res.holds ? "PASS" : "FAIL")
              << "\n";
    if (!res.holds) {
      rc = 1;
      for (uint32_t s : res.violations)
        ev.add(r->name + " violated in state: " + l.state(s).str());
    }
  }
  if (rc) ev.flush(opt);
  return rc;
}

int cmd_check_refinement(const Options& opt) {
  pact::Model m = load_model(opt);
  std::vector<std::string> warnings;
  std::string plant_name = resolve_plant_name(m, opt.plant);
  if (opt.supervisor.empty()) throw pact::Error("pass --supervisor");
  if (opt.term.empty()) throw pact::Error("pass --require <process>");
  pact::TermPtr sup_term = compose(m, plant_name, opt.supervisor, opt.encap, warnings);
  print_warnings(warnings);
  pact::Lts supervised = build(m, sup_term, opt.max_states);
  pact::Lts req = build(m, m.expand_named(opt.term), opt.max_states);
  pact::ControlVerdict v = pact::check_requirement_refinement(supervised, req);
  return report(opt, "check refinement", v, &supervised, &req);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pact: process-algebra toolkit for supervisory coordination"};
  app.require_subcommand(1);
  Options opt;

  auto add_model = [&](CLI::App* c) {
    c->add_option("--model", opt.model_path, "model file")->required();
    c->add_option("--max-states", opt.max_states, "state budget");
  };

  CLI::App* parse = app.add_subcommand("parse", "validate and echo a model");
  add_model(parse);
  parse->add_flag("--full-parens", opt.full_parens, "fully parenthesized output");

  CLI::App* lts = app.add_subcommand("lts", "build and export a transition system");
  add_model(lts);
  lts->add_option("--term", opt.term, "process to build");
  lts->add_option("--plant", opt.plant, "plant to build");
  lts->add_option("--supervisor", opt.supervisor, "compose with this supervisor");
  lts->add_option("--encap", opt.encap, "encapsulation set for the composition");
  lts->add_option("--rename", opt.rename, "apply this renaming first");
  lts->add_option("--format", opt.format, "dot or aut")->check(CLI::IsMember({"dot", "aut"}));
  lts->add_option("--out", opt.out_path, "output file (default stdout)");

  CLI::App* minimize = app.add_subcommand("minimize", "partial-bisimulation quotient");
  add_model(minimize);
  minimize->add_option("--term", opt.term, "process to minimize");
  minimize->add_option("--plant", opt.plant, "plant to minimize");
  minimize->add_option("--rename", opt.rename, "apply this renaming first");
  minimize->add_option("--b", opt.b_spec, "bisimulation action set: all, U, none, or actions");
  minimize->add_option("--format", opt.format, "dot or aut")->check(CLI::IsMember({"dot", "aut"}));
  minimize->add_option("--out", opt.out_path, "output file (default stdout)");

  CLI::App* check = app.add_subcommand("check", "run a verification");
  check->require_subcommand(1);
  auto add_evidence = [&](CLI::App* c) {
    c->add_option("--evidence-out", opt.evidence_out, "also write evidence here");
  };

  CLI::App* pb = check->add_subcommand("pbisim", "partial bisimulation between two processes");
  add_model(pb);
  pb->add_option("--left", opt.left, "left process")->required();
  pb->add_option("--right", opt.right, "right process")->required();
  pb->add_option("--b", opt.b_spec, "bisimulation action set: all, U, none, or actions");
  pb->add_option("--rename-left", opt.rename_left, "renaming for the left process");
  pb->add_option("--rename-right", opt.rename_right, "renaming for the right process");
  pb->add_flag("--eq", opt.eq, "check equivalence (both directions)");
  add_evidence(pb);

  CLI::App* ctrl = check->add_subcommand("controllable",
                                         "supervised plant partially bisimulated by the renamed plant");
  CLI::App* lang = check->add_subcommand("lang-controllable",
                                         "language controllability inclusion");
  for (CLI::App* c : {ctrl, lang}) {
    add_model(c);
    c->add_option("--plant", opt.plant, "plant name");
    c->add_option("--supervisor", opt.supervisor, "supervisor name")->required();
    c->add_option("--encap", opt.encap, "encapsulation set for the composition");
    c->add_option("--rename", opt.rename, "plant renaming");
    add_evidence(c);
  }

  CLI::App* dead = check->add_subcommand("deadlock", "deadlock freedom");
  CLI::App* nonb = check->add_subcommand("nonblocking", "every state can reach termination");
  for (CLI::App* c : {dead, nonb}) {
    add_model(c);
    c->add_option("--plant", opt.plant, "plant name");
    c->add_option("--supervisor", opt.supervisor, "compose with this supervisor");
    c->add_option("--encap", opt.encap, "encapsulation set for the composition");
    add_evidence(c);
  }

  CLI::App* reqs = check->add_subcommand("reqs", "state-based control requirements");
  add_model(reqs);
  reqs->add_option("--plant", opt.plant, "plant name");
  reqs->add_option("--supervisor", opt.supervisor, "compose with this supervisor");
  reqs->add_option("--encap", opt.encap, "encapsulation set for the composition");
  reqs->add_option("--req", opt.reqs, "requirement names (default: all)");
  add_evidence(reqs);

  CLI::App* refine = check->add_subcommand("refinement",
                                           "supervised plant simulated by a requirement process");
  add_model(refine);
  refine->add_option("--plant", opt.plant, "plant name");
  refine->add_option("--supervisor", opt.supervisor, "supervisor name")->required();
  refine->add_option("--encap", opt.encap, "encapsulation set for the composition");
  refine->add_option("--require", opt.term, "requirement process name")->required();
  add_evidence(refine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (parse->parsed()) return cmd_parse(opt);
    if (lts->parsed()) return cmd_lts(opt);
    if (minimize->parsed()) return cmd_minimize(opt);
    if (check->parsed()) {
      if (pb->parsed()) return cmd_check_pbisim(opt);
      if (ctrl->parsed()) return cmd_check_controllable(opt, false);
      if (lang->parsed()) return cmd_check_controllable(opt, true);
      if (dead->parsed()) return cmd_check_blocking(opt, false);
      if (nonb->parsed()) return cmd_check_blocking(opt, true);
      if (reqs->parsed()) return cmd_check_reqs(opt);
      if (refine->parsed()) return cmd_check_refinement(opt);
    }
  } catch (const pact::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
