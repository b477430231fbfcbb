#include "efg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "efg/config.hpp"
#include "efg/efb.hpp"
#include "efg/efd.hpp"
#include "efg/error.hpp"
#include "efg/formula.hpp"
#include "efg/json_io.hpp"
#include "efg/measure.hpp"
#include "efg/search.hpp"
#include "efg/solver.hpp"
#include "efg/string_game.hpp"
#include "efg/strings.hpp"

namespace efg {

namespace {

struct ClassPair {
  StructureTable table;
  StructClass a;
  StructClass b;
};

StructClass read_class(const std::string& spec, StructureTable& table) {
  // Inline bit strings ("01,10") or a JSON file.
  if (!spec.empty() && spec.find_first_not_of("01,") == std::string::npos) {
    Json j;
    j["strings"] = Json::array();
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) j["strings"].push_back(item);
    }
    return class_from_json(j, table);
  }
  return load_class_document(read_json_file(spec), table);
}

ClassPair read_pair(const std::string& a, const std::string& b, const std::string& corpus, const std::string& entry) {
  ClassPair p;
  if (!corpus.empty()) {
    for (auto& inst : corpus_from_json(read_json_file(corpus))) {
      if (inst.name == entry) {
        p.a = inst.a;
        p.b = inst.b;
        return p;
      }
    }
    throw Error("unknown-entry", "no corpus entry named '" + entry + "'");
  }
  if (a.empty() || b.empty()) throw Error("bad-argument", "give --classA and --classB, or --corpus and --entry");
  p.a = read_class(a, p.table);
  p.b = read_class(b, p.table);
  return p;
}

Formula read_formula(const std::string& text, const std::string& file) {
  if (!file.empty()) return formula_from_json(read_json_file(file));
  if (text.empty()) throw Error("bad-argument", "give a formula or --file");
  return parse_formula(text);
}

Structure pure_set(std::size_t k) {
  std::vector<Element> universe(k);
  for (std::size_t i = 0; i < k; ++i) universe[i] = static_cast<Element>(i);
  return make_structure("set" + std::to_string(k), {}, universe, {});
}

Structure read_structure(const std::string& file, std::optional<std::size_t> set_size, const char* name) {
  if (set_size) return pure_set(*set_size);
  if (file.empty()) throw Error("bad-argument", std::string("give --") + name + " or --set-" + name);
  const Json doc = read_json_file(file);
  const Vocabulary v = doc.contains("vocabulary") ? vocabulary_from_json(doc.at("vocabulary")) : Vocabulary{};
  return structure_from_json(doc.value("id", std::string(name)), v, doc);
}

std::string value_text(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "none"; }

Json value_json(const std::optional<unsigned>& v) { return v ? Json(*v) : Json(nullptr); }

void check_budget(unsigned budget, std::size_t jmax, const Caps& caps) {
  if (budget > caps.budget) {
    throw Error("cap-exceeded", "budget " + std::to_string(budget) + " exceeds the cap " + std::to_string(caps.budget));
  }
  if (jmax > caps.jmax) {
    throw Error("cap-exceeded", "jmax " + std::to_string(jmax) + " exceeds the cap " + std::to_string(caps.jmax));
  }
}

std::optional<unsigned> solver_value(const StructClass& a, const StructClass& b, const ComplexityMeasure& m,
                                     unsigned budget, std::size_t jmax, const Caps& caps) {
  auto r = min_separating_value(a, b, m, budget, jmax, caps.budget, caps.jmax);
  return r ? std::optional<unsigned>(r->value) : std::nullopt;
}

std::optional<unsigned> search_value(const StructClass& a, const StructClass& b, const ComplexityMeasure& m,
                                     unsigned budget, std::size_t jmax) {
  EnumerationBudget eb;
  eb.max_value = budget;
  eb.jmax = jmax;
  auto r = min_separating_formula(a, b, m, eb);
  return r ? std::optional<unsigned>(r->value) : std::nullopt;
}

DenseProperty read_property(const std::string& spec, const std::string& filter) {
  DenseProperty p;
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    p = dense_property_from_json(read_json_file(spec));
  } else {
    p.base = parse_base_property(spec);
  }
  if (!filter.empty()) p = p.with_filter(parse_segment(filter));
  return p;
}

Json trace_json(const StringGameTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back({{"move", s.move}, {"response", s.response}, {"mode", s.mode}});
  return {{"left", t.left},
          {"right", t.right},
          {"rank", to_json(t.rank)},
          {"winner", t.winner ? Json(player_name(*t.winner)) : Json(nullptr)},
          {"reason", t.reason},
          {"endgame", t.endgame},
          {"e9_maintained", t.e9_maintained},
          {"steps", steps}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for Ehrenfeucht-Fraisse games on classes of structures", "efgame"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "table";
  app.add_option("--format", format, "Output format: table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--seed", config.seed, "Seed for randomized commands");

  // Shared option values.
  std::string measure_name = "size";
  std::optional<unsigned> budget;
  std::optional<std::size_t> jmax;
  std::string class_a, class_b, corpus, entry;
  std::string text, file;
  std::function<void()> action;

  auto add_measure = [&](CLI::App* c) { c->add_option("--measure", measure_name, "Complexity measure"); };
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget", budget, "Largest value tried");
    c->add_option("--jmax", jmax, "Supplement variables x_j with j < jmax");
  };
  auto add_classes = [&](CLI::App* c) {
    c->add_option("--classA", class_a, "Class file, or comma-separated bit strings");
    c->add_option("--classB", class_b, "Class file, or comma-separated bit strings");
    c->add_option("--corpus", corpus, "Corpus file (with --entry)");
    c->add_option("--entry", entry, "Corpus entry name");
  };
  auto emit = [&](const Json& j, const std::string& table) {
    if (config.format == OutputFormat::Json) {
      out << j.dump(2) << "\n";
    } else {
      out << table;
    }
  };

  // ordinal
  auto* ordinal = app.add_subcommand("ordinal", "Ordinal arithmetic below epsilon_0");
  ordinal->require_subcommand(1);
  auto* ord_eval = ordinal->add_subcommand("eval", "Evaluate an expression with # (natural sum)");
  ord_eval->add_option("expression", text, "e.g. \"w # 1\"")->required();
  ord_eval->callback([&] {
    action = [&] {
      const Ordinal v = eval_ordinal_expression(text);
      emit({{"value", v.to_string()}}, v.to_string() + "\n");
    };
  });

  // formula
  auto* formula = app.add_subcommand("formula", "Formula complexity and normal forms");
  formula->require_subcommand(1);
  for (const char* name : {"size", "qr", "nnf"}) {
    auto* sub = formula->add_subcommand(name, std::string("Compute ") + name);
    sub->add_option("formula", text, "Formula in text syntax");
    sub->add_option("--file", file, "Formula in JSON");
    if (std::string(name) == "size") add_measure(sub);
    sub->callback([&, name] {
      action = [&, name] {
        const Formula f = read_formula(text, file);
        const std::string what = name;
        if (what == "size") {
          const Ordinal v = size(f, builtin_measure(measure_name));
          emit({{"formula", to_text(f)}, {"measure", measure_name}, {"value", v.to_string()}}, v.to_string() + "\n");
        } else if (what == "qr") {
          const Ordinal v = quantifier_rank(f);
          emit({{"formula", to_text(f)}, {"qr", v.to_string()}}, v.to_string() + "\n");
        } else {
          const Formula n = to_nnf(f);
          emit({{"nnf", to_text(n)}, {"tree", to_json(n)}}, to_text(n) + "\n");
        }
      };
    });
  }

  // measure
  auto* measure = app.add_subcommand("measure", "Complexity measures");
  measure->require_subcommand(1);
  auto* nice = measure->add_subcommand("check-nice", "Sample the niceness conditions");
  std::size_t samples = 1000;
  nice->add_option("--name", measure_name, "Measure name")->required();
  nice->add_option("--samples", samples, "Number of random samples");
  nice->add_option("--seed", config.seed, "Seed");
  nice->callback([&] {
    action = [&] {
      const NicenessReport r = check_nice(builtin_measure(measure_name), samples, config.seed);
      Json witnesses = Json::array();
      std::string table = std::string("nice: ") + (r.pass ? "yes" : "no") + " (" + std::to_string(r.checked) + " checks)\n";
      for (const auto& w : r.witnesses) {
        witnesses.push_back({{"condition", w.condition}, {"input", w.input}, {"output", w.output.to_string()}});
        table += "  " + w.describe() + "\n";
      }
      emit({{"measure", r.measure}, {"samples", samples}, {"seed", config.seed}, {"pass", r.pass},
            {"checked", r.checked}, {"witnesses", witnesses}},
           table);
    };
  });

  // efd
  auto* efd = app.add_subcommand("efd", "Classical Ehrenfeucht-Fraisse game");
  efd->require_subcommand(1);
  auto* efd_solve = efd->add_subcommand("solve", "Winner of the n-round game");
  std::string file_a, file_b;
  std::optional<std::size_t> set_a, set_b;
  unsigned rounds = 1;
  efd_solve->add_option("--a", file_a, "Structure file");
  efd_solve->add_option("--b", file_b, "Structure file");
  efd_solve->add_option("--set-a", set_a, "Use a pure set of this size");
  efd_solve->add_option("--set-b", set_b, "Use a pure set of this size");
  efd_solve->add_option("--rounds,-n", rounds, "Number of rounds")->required();
  efd_solve->callback([&] {
    action = [&] {
      const Structure a = read_structure(file_a, set_a, "a");
      const Structure b = read_structure(file_b, set_b, "b");
      const Player w = efd_winner(a, b, rounds);
      emit({{"rounds", rounds}, {"winner", player_name(w)}}, std::string(player_name(w)) + "\n");
    };
  });

  // efb
  auto* efb = app.add_subcommand("efb", "Games on classes of structures");
  efb->require_subcommand(1);
  auto* minsize = efb->add_subcommand("minsize", "Least rank at which I wins");
  add_classes(minsize);
  add_measure(minsize);
  add_budget(minsize);
  minsize->callback([&] {
    action = [&] {
      ClassPair p = read_pair(class_a, class_b, corpus, entry);
      const unsigned b = budget.value_or(config.caps.budget);
      const std::size_t j = jmax.value_or(0);
      check_budget(b, j, config.caps);
      auto r = min_separating_value(p.a, p.b, builtin_measure(measure_name), b, j, config.caps.budget, config.caps.jmax);
      std::optional<unsigned> v;
      if (r) v = r->value;
      emit({{"measure", measure_name}, {"budget", b}, {"jmax", j}, {"value", value_json(v)},
            {"strategy", r ? to_json(r->strategy) : Json(nullptr)}},
           value_text(v) + "\n");
    };
  });

  auto* referee = efb->add_subcommand("referee", "Play solver I against solver II");
  std::string trace_file;
  unsigned rank = 1;
  add_classes(referee);
  add_measure(referee);
  referee->add_option("--jmax", jmax, "Supplement variables x_j with j < jmax");
  referee->add_option("--rank", rank, "Starting rank")->required();
  referee->add_option("--trace", trace_file, "Write the JSON trace here");
  referee->callback([&] {
    action = [&] {
      ClassPair p = read_pair(class_a, class_b, corpus, entry);
      const std::size_t j = jmax.value_or(0);
      check_budget(rank, j, config.caps);
      const ComplexityMeasure m = builtin_measure(measure_name);
      SolverOptions options;
      options.jmax = j;
      EFBSolver solver(p.a, p.b, m, options);
      const bool propositional = j == 0;
      StrategyI one = [&](const EFBPosition& pos) -> std::optional<Move> {
        if (!solver.i_wins(pos)) return std::nullopt;
        return solver.winning_move(pos);
      };
      StrategyII two = [&](const EFBPosition& pos, const Move& mv) -> std::size_t {
        return solver.i_wins(pos) ? 0 : solver.losing_choice(pos, mv);
      };
      RefereeOptions ro;
      ro.round_cap = config.caps.round_cap;
      ro.propositional = propositional;
      const GameTrace t = efb_referee(solver.start(rank), m, one, two, ro);
      const Json tj = to_json(t);
      if (!trace_file.empty()) {
        std::ofstream f(trace_file);
        if (!f) throw Error("io-error", "cannot write '" + trace_file + "'");
        f << tj.dump(2) << "\n";
      }
      const std::string winner = t.outcome.winner ? player_name(*t.outcome.winner) : "none";
      emit(tj, "winner: " + winner + " (" + t.outcome.reason + ") after " + std::to_string(t.steps.size()) +
                   " moves\n");
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Formula enumeration");
  search->require_subcommand(1);
  auto* minformula = search->add_subcommand("minformula", "Least separating formula");
  unsigned max_value = 4;
  add_classes(minformula);
  add_measure(minformula);
  minformula->add_option("--max-value", max_value, "Largest value enumerated");
  minformula->add_option("--jmax", jmax, "Quantified variables x_j with j < jmax");
  minformula->callback([&] {
    action = [&] {
      ClassPair p = read_pair(class_a, class_b, corpus, entry);
      const std::size_t j = jmax.value_or(0);
      check_budget(max_value, j, config.caps);
      EnumerationBudget eb;
      eb.max_value = max_value;
      eb.jmax = j;
      auto r = min_separating_formula(p.a, p.b, builtin_measure(measure_name), eb);
      if (!r) {
        emit({{"formula", nullptr}, {"value", nullptr}}, "none\n");
        return;
      }
      const Json tree = to_json(r->formula);
      emit({{"formula", to_text(r->formula)}, {"value", r->value}, {"tree", tree}},
           to_text(r->formula) + "\nvalue: " + std::to_string(r->value) + "\n" + tree.dump() + "\n");
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-checks");
  verify->require_subcommand(1);
  auto* adequacy = verify->add_subcommand("adequacy", "Game values against formula search on a corpus");
  std::vector<std::string> measures;
  adequacy->add_option("--corpus", corpus, "Corpus file")->required();
  adequacy->add_option("--measure", measures, "Measures (default: size and c1)");
  adequacy->add_option("--budget", budget, "Budget for every measure (default 6 for size, 4 otherwise)");
  adequacy->callback([&] {
    action = [&] {
      if (measures.empty()) measures = {"size", "c1"};
      const auto instances = corpus_from_json(read_json_file(corpus));
      std::size_t agree = 0;
      std::size_t total = 0;
      Json disagreements = Json::array();
      std::string table;
      for (const auto& name : measures) {
        const ComplexityMeasure m = builtin_measure(name);
        const unsigned b = budget.value_or(name == "size" ? 6 : 4);
        for (const auto& inst : instances) {
          check_budget(b, inst.jmax, config.caps);
          const auto game = solver_value(inst.a, inst.b, m, b, inst.jmax, config.caps);
          const auto found = search_value(inst.a, inst.b, m, b, inst.jmax);
          ++total;
          if (game == found) {
            ++agree;
            continue;
          }
          disagreements.push_back({{"instance", inst.name}, {"measure", name}, {"game", value_json(game)},
                                   {"search", value_json(found)}});
          table += "disagree " + inst.name + " " + name + ": game " + value_text(game) + ", search " +
                   value_text(found) + "\n";
        }
      }
      table += "agree: " + std::to_string(agree) + "/" + std::to_string(total) + "\n";
      emit({{"agree", agree}, {"total", total}, {"disagreements", disagreements}}, table);
      if (agree != total) throw Error("disagreement", std::to_string(total - agree) + " instances disagree");
    };
  });

  // strings
  auto* strings = app.add_subcommand("strings", "Dense classes of infinite strings");
  strings->require_subcommand(1);
  std::string prop, prop2, filter;
  std::size_t length = 0;
  std::size_t d = 1;

  auto* trunc = strings->add_subcommand("truncate", "Initial segments of a property");
  trunc->add_option("--prop", prop, "fin-ones, odd-ones, ult-periodic or a property JSON file")->required();
  trunc->add_option("--filter", filter, "Segment such as {0:1}");
  trunc->add_option("--L", length, "Length")->required();
  trunc->callback([&] {
    action = [&] {
      const auto s = truncate(read_property(prop, filter), length, config.caps.length_cap);
      std::string table;
      for (const auto& x : s) table += x + "\n";
      emit({{"strings", s}}, table);
    };
  });

  auto* dense = strings->add_subcommand("dense-check", "Is a set of strings d-dense?");
  std::vector<std::string> string_list;
  dense->add_option("--strings", string_list, "Strings of one length")->delimiter(',')->required();
  dense->add_option("--d", d, "Density")->required();
  dense->callback([&] {
    action = [&] {
      const std::set<std::string> s(string_list.begin(), string_list.end());
      const bool ok = is_d_dense(s, d);
      emit({{"d", d}, {"dense", ok}}, std::string(ok ? "dense" : "not dense") + "\n");
    };
  });

  auto* dense_lb = strings->add_subcommand("dense-lb", "Solver lower bound on d-dense pairs");
  std::size_t per_cell = 4;
  dense_lb->add_option("--L", length, "Largest length")->required();
  dense_lb->add_option("--d", d, "Largest density")->required();
  dense_lb->add_option("--per-cell", per_cell, "Pairs per (L, d)");
  dense_lb->callback([&] {
    action = [&] {
      if (length > config.caps.length_cap) throw Error("cap-exceeded", "L exceeds the length cap");
      const ComplexityMeasure m = builtin_measure("size");
      std::size_t violations = 0;
      const auto pairs = dense_pair_corpus(length, d, per_cell, config.seed);
      Json rows = Json::array();
      for (const auto& pr : pairs) {
        StructureTable table;
        Json ja, jb;
        ja["strings"] = pr.left;
        jb["strings"] = pr.right;
        EFBSolver solver(class_from_json(ja, table), class_from_json(jb, table), m);
        const bool separated = solver.i_wins(static_cast<unsigned>(pr.d));
        if (separated) ++violations;
        rows.push_back({{"L", pr.length}, {"d", pr.d}, {"left", pr.left.size()}, {"right", pr.right.size()},
                        {"separated_at_d", separated}});
      }
      emit({{"pairs", pairs.size()}, {"violations", violations}, {"rows", rows}},
           "pairs: " + std::to_string(pairs.size()) + " violations: " + std::to_string(violations) + "\n");
    };
  });

  auto* simulate = strings->add_subcommand("simulate", "Play II's dense strategy against a clopen adversary");
  std::string rank_text = "w";
  std::string adversary = "random";
  simulate->add_option("--p1", prop, "Left property")->required();
  simulate->add_option("--p2", prop2, "Right property")->required();
  simulate->add_option("--rank", rank_text, "Rank below w^2, e.g. w*3+2");
  simulate->add_option("--seed", config.seed, "Seed");
  simulate->add_option("--adversary", adversary, "random or scripted")->check(CLI::IsMember({"random", "scripted"}));
  simulate->callback([&] {
    action = [&] {
      const DenseProperty p1 = read_property(prop, "");
      const DenseProperty p2 = read_property(prop2, "");
      std::unique_ptr<StringAdversary> adv;
      if (adversary == "random") {
        adv = std::make_unique<RandomAdversary>(config.seed);
      } else {
        adv = std::make_unique<ScriptedAdversary>(config.seed);
      }
      DenseGameOptions options;
      options.round_cap = config.caps.round_cap;
      options.support_bound = config.caps.support_bound;
      const StringGameTrace t = simulate_dense_game(p1, p2, parse_ordinal(rank_text), *adv, options);
      const std::string winner = t.winner ? player_name(*t.winner) : "none";
      emit(trace_json(t), "winner: " + winner + " (" + t.reason + ") rounds: " + std::to_string(t.steps.size()) +
                              " endgame: " + (t.endgame ? "yes" : "no") + "\n");
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  try {
    config.format = parse_output_format(format);
    config.caps = caps_from_environment();
    if (!action) return 2;
    action();
  } catch (const Error& e) {
    err << Json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << Json{{"error", "malformed-json"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace efg
