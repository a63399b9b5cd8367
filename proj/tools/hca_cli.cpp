// hca: transform 1D automata onto hyperbolic grids, run and verify them.
//
// Exit codes: 0 clean, 1 verification violations, 2 usage or precondition errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hca/hca.hpp"

namespace {

using namespace hca;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Rule1D parse_rule(const std::string& spec) {
  const std::string prefix = "elementary:";
  if (spec.rfind(prefix, 0) == 0) {
    try {
      return elementary(std::stoi(spec.substr(prefix.size())));
    } catch (const std::logic_error&) {
      throw UsageError("bad elementary rule: " + spec);
    }
  }
  return rule1d_from_json(read_json(spec));
}

// "101", "1,0,1" or "" (empty word)
std::vector<State> parse_word(const std::string& s) {
  std::vector<State> w;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(static_cast<State>(std::stoi(tok)));
  } else {
    for (char c : s) {
      if (c < '0' || c > '9') throw UsageError("word must be digits or comma-separated states");
      w.push_back(static_cast<State>(c - '0'));
    }
  }
  return w;
}

int default_halfwidth(std::size_t word_len) { return static_cast<int>(word_len / 2); }

json report_json(const EquivalenceReport& r) {
  json j{{"ok", r.ok()},
         {"steps", r.steps},
         {"compared", r.compared},
         {"multiple_matches", r.multiple_matches},
         {"conflicts", r.conflicts},
         {"stability_violations", r.stability.size()}};
  if (r.divergence)
    j["divergence"] = {{"time", r.divergence->time},
                       {"position", r.divergence->position},
                       {"expected", r.divergence->expected},
                       {"got", r.divergence->got}};
  return j;
}

int cmd_transform(const std::string& rule, const std::string& theorem, const std::string& grid, const std::string& out) {
  const Rule1D a = parse_rule(rule);
  const HcaAutomaton b = embed(a, parse_theorem(theorem), parse_grid(grid));
  write_text(out, to_json(b).dump(2) + "\n");
  std::cerr << "A: " << a.states() << " states; B: " << b.n_states() << " states on " << to_string(b.grid()) << "\n";
  if (const auto w = is_fixable(a))
    std::cerr << "fixable with witness (" << int(w->quiescent) << ", " << int(w->fixed) << ")\n";
  else
    std::cerr << "not fixable\n";
  return 0;
}

int cmd_simulate(const std::string& automaton, const std::string& word_text, int steps, int radius, int halfwidth,
                 bool check_oracle, const std::string& out, const std::string& svg_dir) {
  const HcaAutomaton b = automaton_from_json(read_json(automaton));
  const auto word = parse_word(word_text);
  if (halfwidth < 0) halfwidth = default_halfwidth(word.size());
  if (radius < 0) radius = is_planar(b.grid()) ? std::min(steps + 1, max_radius(b.grid())) : 3;
  const Region region = build_region(b.grid(), radius, halfwidth);
  std::vector<Configuration> history;
  Configuration cfg = init_configuration(region, b, word);
  certify_background(region, b, cfg);
  json trace{{"grid", to_string(b.grid())}, {"theorem", to_string(b.theorem())}, {"radius", radius},
             {"halfwidth", halfwidth}, {"word", word}};
  int status = 0;
  if (check_oracle) {
    const auto rep = equivalence_check(b.source(), b, region, word, steps, &history);
    trace["oracle"] = report_json(rep);
    std::cerr << (rep.ok() ? "oracle: ok\n" : "oracle: divergence\n");
    if (!rep.ok()) status = 1;
  } else {
    history.push_back(cfg);
    for (int t = 0; t < steps; ++t) history.push_back(step_hca(b, region, history.back()));
  }
  json rows = json::array();
  for (const auto& r : yellow_trace(history, region)) rows.push_back(to_json(r));
  trace["rows"] = rows;
  write_text(out, trace.dump(2) + "\n");
  if (!svg_dir.empty()) {
    std::filesystem::create_directories(svg_dir);
    const RenderSpec spec = default_render_spec(b);
    for (const auto& c : history)
      write_text(svg_dir + "/step_" + std::to_string(c.time) + ".svg", render_svg(region, c.states, spec));
  }
  return status;
}

int cmd_verify(const std::string& automaton, const std::string& rules_file, const std::string& grid_name, int radius,
               int horizon, int halfwidth, const std::string& word_text, const std::string& out) {
  json report;
  bool clean = true;
  if (!rules_file.empty()) {
    if (grid_name.empty()) throw UsageError("--rules needs --grid");
    const GridKind g = parse_grid(grid_name);
    std::vector<Rule> rules;
    for (const auto& r : read_json(rules_file)) {
      Rule rule{{r.at("self").get<State>(), r.at("neighbors").get<std::vector<State>>()}, r.at("next").get<State>()};
      check_arity(rule.context, g);
      rules.push_back(std::move(rule));
    }
    const auto inv = check_rotation_invariance(rules, g);
    report["rules_checked"] = inv.rules_checked;
    report["conflicts"] = inv.conflicts.size();
    clean = inv.ok();
  }
  if (!automaton.empty()) {
    const HcaAutomaton b = automaton_from_json(read_json(automaton));
    const auto word = parse_word(word_text);
    if (halfwidth < 0) halfwidth = std::max(default_halfwidth(word.size()), horizon + 2);
    const Region region = build_region(b.grid(), radius, halfwidth);
    Configuration init = init_configuration(region, b, word);
    certify_background(region, b, init);
    const auto uniq = verify_unique_applicability(b, region, init, horizon);
    std::vector<Configuration> run{init};
    for (int t = 0; t < horizon; ++t) run.push_back(step_hca(b, region, run.back()));
    auto rules = schema_rules(b);
    for (auto& r : context_rules(b, reachable_contexts(b, region, run))) rules.push_back(std::move(r));
    const auto inv = check_rotation_invariance(rules, b.grid());
    json viol = json::array();
    for (const auto& v : uniq.violations)
      viol.push_back({{"time", v.time}, {"cell", idx(v.cell)}, {"matches", v.matches}, {"off_line_change", v.off_line_change}});
    json conflicts = json::array();
    for (const auto& c : inv.conflicts) {
      json rs = json::array();
      for (const auto& r : c.rules) rs.push_back({{"self", r.context.self}, {"neighbors", r.context.neighbors}, {"next", r.next}});
      conflicts.push_back(rs);
    }
    report["automaton"] = {{"grid", to_string(b.grid())}, {"theorem", to_string(b.theorem())}};
    report["invariance"] = {{"rules_checked", inv.rules_checked}, {"orbits", inv.orbits}, {"conflicts", conflicts}};
    report["uniqueness"] = {{"radius", radius}, {"horizon", horizon}, {"certified", init.certified},
                            {"cells_scanned", uniq.cells_scanned}, {"violations", viol}};
    clean = clean && inv.ok() && uniq.ok();
  }
  if (automaton.empty() && rules_file.empty()) throw UsageError("verify needs --automaton or --rules");
  report["clean"] = clean;
  write_text(out, report.dump(2) + "\n");
  std::cerr << (clean ? "verify: clean\n" : "verify: violations found\n");
  return clean ? 0 : 1;
}

int cmd_render(const std::string& grid_name, int radius, int halfwidth, const std::string& automaton,
               const std::string& word_text, int steps, const std::string& snapshot, const std::string& colours,
               int depth, const std::string& out) {
  std::vector<State> states;
  RenderSpec spec = blank_render_spec();
  std::optional<Region> region;
  if (!automaton.empty()) {
    const HcaAutomaton b = automaton_from_json(read_json(automaton));
    const auto word = parse_word(word_text);
    if (halfwidth < 0) halfwidth = default_halfwidth(word.size());
    region = build_region(b.grid(), radius, halfwidth);
    spec = default_render_spec(b);
    Configuration cfg = init_configuration(*region, b, word);
    certify_background(*region, b, cfg);
    if (!snapshot.empty()) cfg = configuration_from_json(read_json(snapshot));
    else
      for (int t = 0; t < steps; ++t) cfg = step_hca(b, *region, cfg);
    states = cfg.states;
  } else {
    if (grid_name.empty()) throw UsageError("render needs --grid or --automaton");
    region = build_region(parse_grid(grid_name), radius, std::max(halfwidth, 0));
    states.assign(region->size(), 0);
  }
  if (!colours.empty()) spec = render_spec_from_json(read_json(colours), spec);
  if (depth != 1000) spec.depth = depth;
  write_text(out, render_svg(*region, states, spec));
  return 0;
}

int cmd_motions(const std::string& out) {
  std::string text = "# f0 f1 : images of faces 0..11\n";
  for (const auto& m : enumerate_motions()) {
    text += std::to_string(m.f0()) + " " + std::to_string(m.f1()) + " :";
    for (int f : m.images()) text += " " + std::to_string(f);
    text += "\n";
  }
  write_text(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cellular automata on the pentagrid, the heptagrid and the dodecagrid"};
  app.require_subcommand(1);

  std::string rule, theorem = "t1", grid, out, automaton, word = "1", svg_dir, rules_file, snapshot, colours;
  int sim_steps = 8, ren_steps = 0, sim_radius = -1, ver_radius = 3, ren_radius = 4;
  int halfwidth = -1, horizon = 10, depth = 1000;
  bool check_oracle = false;

  auto* tr = app.add_subcommand("transform", "embed a 1D rule");
  tr->add_option("--rule", rule, "elementary:N or a rule JSON file")->required();
  tr->add_option("--theorem", theorem, "t1, t3 or t4");
  tr->add_option("--grid", grid, "pentagrid, heptagrid or dodecagrid")->required();
  tr->add_option("--out,-o", out, "automaton file (stdout if omitted)");

  auto* sim = app.add_subcommand("simulate", "run an automaton and write its yellow-line trace");
  sim->add_option("--automaton,-a", automaton)->required();
  sim->add_option("--word,-w", word, "initial word, e.g. 1 or 1,0,2");
  sim->add_option("--steps,-n", sim_steps, "default 8");
  sim->add_option("--radius,-r", sim_radius, "default steps + 1, 3 on the dodecagrid");
  sim->add_option("--halfwidth", halfwidth);
  sim->add_flag("--check-oracle", check_oracle, "compare with the 1D run");
  sim->add_option("--out,-o", out);
  sim->add_option("--svg-dir", svg_dir, "write one SVG per step");

  auto* ver = app.add_subcommand("verify", "rotation invariance and uniqueness of application");
  ver->add_option("--automaton,-a", automaton);
  ver->add_option("--rules", rules_file, "explicit rule list to check for rotation invariance");
  ver->add_option("--grid", grid);
  ver->add_option("--radius,-r", ver_radius)->capture_default_str();
  ver->add_option("--horizon", horizon);
  ver->add_option("--halfwidth", halfwidth);
  ver->add_option("--word,-w", word);
  ver->add_option("--out,-o", out);

  auto* ren = app.add_subcommand("render", "SVG on the Poincaré disk");
  ren->add_option("--grid", grid);
  ren->add_option("--radius,-r", ren_radius)->capture_default_str();
  ren->add_option("--halfwidth", halfwidth);
  ren->add_option("--automaton,-a", automaton);
  ren->add_option("--word,-w", word);
  ren->add_option("--steps,-n", ren_steps)->capture_default_str();
  ren->add_option("--snapshot", snapshot, "configuration JSON");
  ren->add_option("--colours", colours, "colour map JSON");
  ren->add_option("--depth", depth);
  ren->add_option("--out,-o", out);

  auto* mot = app.add_subcommand("motions", "dump the 60 positive motions of the dodecahedron");
  mot->add_option("--out,-o", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tr) return cmd_transform(rule, theorem, grid, out);
    if (*sim) return cmd_simulate(automaton, word, sim_steps, sim_radius, halfwidth, check_oracle, out, svg_dir);
    if (*ver) return cmd_verify(automaton, rules_file, grid, ver_radius, horizon, halfwidth, word, out);
    if (*ren) return cmd_render(grid, ren_radius, halfwidth, automaton, word, ren_steps, snapshot, colours, depth, out);
    if (*mot) return cmd_motions(out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotFixableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidityExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TooDeepError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
