#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plauslab/axioms.hpp"
#include "plauslab/demos.hpp"
#include "plauslab/error.hpp"
#include "plauslab/model_io.hpp"
#include "plauslab/scenarios.hpp"

using namespace plauslab;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kEval = 3 };

Lang lang_of(const std::string& s) {
  if (s == "subj") return Lang::kSubj;
  if (s == "stat") return Lang::kStat;
  throw CLI::ValidationError("--lang", "must be subj or stat");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Runs body, mapping library exceptions to exit codes. Input problems are
// reported before evaluation starts, so body marks when evaluation begins.
int guarded(const std::function<int(bool&)>& body) {
  bool evaluating = false;
  try {
    return body(evaluating);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ValidationError& e) {
    std::cerr << "invalid model: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return evaluating ? kEval : kInput;
  }
}

std::vector<std::string> point_names(const StatisticalStructure& s) {
  std::vector<std::string> out;
  for (int p = 0; p < s.points(); ++p) out.push_back(s.point_name(p));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for first-order conditional logic over plausibility measures"};
  app.require_subcommand(1);

  std::string lang = "subj", measure_class = "qpl", text, path, schema, world;
  int trials = 100, instances = 10, max_dom = 2, max_worlds = 3;
  int sweep_dom = 3, sweep_worlds = 4, sweep_slots = 2;
  std::uint64_t seed = 1;
  bool trace = false, require_qualitative = false, to_json = false;
  std::vector<std::string> disabled, enabled;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print its canonical form");
  parse_cmd->add_option("formula", text)->required();
  parse_cmd->add_option("--lang", lang, "subj or stat");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a model file or demo:SCENARIO");
  eval_cmd->add_option("model", path)->required();
  eval_cmd->add_option("formula", text)->required();
  eval_cmd->add_option("--world", world, "Evaluate at one world instead of all");
  eval_cmd->add_flag("--trace", trace, "Print extensions and plausibility comparisons");
  eval_cmd->add_flag("--require-qualitative", require_qualitative, "Reject measures violating A2 or A3");

  auto* check_cmd = app.add_subcommand("check", "Validate a model file");
  check_cmd->add_option("model", path)->required();
  check_cmd->add_flag("--require-qualitative", require_qualitative, "Also require A2 and A3");

  auto* axioms_cmd = app.add_subcommand("axioms", "Random validity sweep of schemas or a formula");
  axioms_cmd->add_option("--schema", schema, "Schema, group (C-subj, C-stat) or formula");
  axioms_cmd->add_option("--class", measure_class, "qpl, eps, kappa, poss, pref, pref-wf or prob");
  axioms_cmd->add_option("--trials", trials, "Random structures");
  axioms_cmd->add_option("--instances", instances, "Instances per schema per structure");
  axioms_cmd->add_option("--seed", seed);
  axioms_cmd->add_option("--lang", lang, "Default group: C-subj or C-stat");
  axioms_cmd->add_option("--max-dom", sweep_dom, "Largest domain");
  axioms_cmd->add_option("--max-worlds", sweep_worlds, "Largest world set");
  axioms_cmd->add_option("--max-slots", sweep_slots, "Largest statistical slot count");

  auto* search_cmd = app.add_subcommand("search", "Bounded countermodel search");
  search_cmd->add_option("formula", text)->required();
  search_cmd->add_option("--class", measure_class);
  search_cmd->add_option("--max-dom", max_dom);
  search_cmd->add_option("--max-worlds", max_worlds);
  search_cmd->add_flag("--json", to_json, "Print a found countermodel as a model file");

  auto* demo_cmd = app.add_subcommand("demo", "Scripted reproduction of a named claim");
  std::string demo;
  demo_cmd->add_option("name", demo)->required();

  auto* proof_cmd = app.add_subcommand("proof-check", "Check a derivation file");
  proof_cmd->add_option("file", path)->required();
  proof_cmd->add_option("--disable", disabled, "Schemas to remove from the enabled set");
  proof_cmd->add_option("--enable", enabled, "Schemas or groups to add to the enabled set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  if (*parse_cmd)
    return guarded([&](bool&) {
      Formula f = parse(text, lang_of(lang));
      std::cout << print(f) << "\n";
      return kOk;
    });

  if (*eval_cmd)
    return guarded([&](bool& evaluating) {
      std::ostream* tr = trace ? &std::cout : nullptr;
      if (path.rfind("demo:", 0) == 0) {
        const Scenario s = builtin(path.substr(5));
        Formula f = parse(text, s.lang);
        evaluating = true;
        ScenarioEvaluator ev(s, tr);
        bool v = ev.holds(f);
        std::cout << (v ? "true" : "false") << "\n";
        return v ? kOk : kNegative;
      }
      Model m = load_model_file(path, require_qualitative);
      Vocabulary vocab = m.vocab();
      Formula f = parse(text, m.lang, &vocab);
      evaluating = true;
      bool v;
      if (m.subj) {
        SubjectiveEvaluator ev(*m.subj, tr);
        if (world.empty()) {
          v = ev.valid(f);
        } else {
          const auto& ws = m.subj->worlds();
          auto it = std::find(ws.begin(), ws.end(), world);
          if (it == ws.end()) throw std::invalid_argument("unknown world '" + world + "'");
          if (!f.free_vars().empty()) throw std::invalid_argument("--world needs a sentence");
          v = ev.holds(f, static_cast<int>(it - ws.begin()), {});
        }
      } else {
        StatisticalEvaluator ev(*m.stat, StatSemantics::kCylinder, tr);
        v = ev.valid(f);
      }
      std::cout << (v ? "true" : "false") << "\n";
      return v ? kOk : kNegative;
    });

  if (*check_cmd)
    return guarded([&](bool&) {
      std::string source = read_file(path);
      Model m;
      try {
        m = load_model(source);
      } catch (const ValidationError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kNegative;
      }
      std::cout << "valid: arities, totality, poset laws and A1 hold\n" << m.describe();
      if (auto v = check_qualitative(m.pl())) {
        const std::vector<std::string> carrier = m.subj ? m.subj->worlds() : point_names(*m.stat);
        std::cout << "not qualitative: " << v->message << "\n  A = " << format_set(v->a, carrier)
                  << ", B = " << format_set(v->b, carrier);
        if (v->condition == QualitativeViolation::Condition::kA2) std::cout << ", C = " << format_set(v->c, carrier);
        std::cout << "\n";
        return require_qualitative ? kNegative : kOk;
      }
      std::cout << "qualitative: A2 and A3 hold\n";
      return kOk;
    });

  if (*axioms_cmd)
    return guarded([&](bool& evaluating) {
      if (schema.empty()) schema = lang_of(lang) == Lang::kSubj ? "C-subj" : "C-stat";
      MeasureClass c = parse_measure_class(measure_class);
      SizeBounds b{sweep_dom, sweep_worlds, sweep_slots};
      evaluating = true;
      ValidityReport r = test_validity(schema, c, trials, instances, seed, b);
      std::cout << r.text();
      return r.violations == 0 ? kOk : kNegative;
    });

  if (*search_cmd)
    return guarded([&](bool& evaluating) {
      Formula f = parse(text, Lang::kSubj);
      MeasureClass c = parse_measure_class(measure_class);
      evaluating = true;
      SearchReport r = find_countermodel(f, c, {max_dom, max_worlds, 1});
      if (to_json && r.countermodel)
        std::cout << model_to_json(*r.countermodel->model) << "\n";
      else
        std::cout << r.text();
      return r.countermodel ? kNegative : kOk;
    });

  if (*demo_cmd)
    return guarded([&](bool& evaluating) {
      evaluating = true;
      const auto names = demo_names();
      if (std::find(names.begin(), names.end(), demo) == names.end())
        throw std::invalid_argument("unknown demo '" + demo + "'");
      std::cout << run_demo(demo);
      return kOk;
    });

  if (*proof_cmd)
    return guarded([&](bool&) {
      Derivation d = parse_derivation(read_file(path));
      if (d.schemas.empty()) d.schemas = expand_schema_set(d.lang == Lang::kSubj ? "C-subj" : "C-stat");
      for (const std::string& e : enabled)
        for (const std::string& s : expand_schema_set(e)) d.schemas.push_back(s);
      for (const std::string& x : disabled) {
        const std::string name = find_schema(x).name;
        std::erase(d.schemas, name);
      }
      DerivationReport r = check_derivation(d);
      if (r.ok) {
        std::cout << "ok: " << d.lines.size() << " lines\n";
        return kOk;
      }
      std::cout << "rejected at line " << r.bad_line << ": " << r.reason << "\n";
      return kNegative;
    });
  return kInput;
}
