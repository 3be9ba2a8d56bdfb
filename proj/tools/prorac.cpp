// Command-line front end for the progression oracle, the ProRAC pipeline,
// the benchmark harness and the label auditor.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prorac/baselines.hpp"
#include "prorac/cache_reasoner.hpp"
#include "prorac/harness.hpp"
#include "prorac/http_reasoner.hpp"
#include "prorac/mock_reasoner.hpp"

namespace {

using namespace prorac;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CliConfig {
  std::vector<std::string> domain_files;
  std::vector<std::string> annotation_files;
  std::string problem_file;
  std::string actions;     // comma-separated canonical terms
  std::string query;       // literals, optionally with a leading kind tag
  std::string task = "projection";
  std::string instances_file;
  std::string method = "prorac";
  std::string mode = "mock";
  std::string out_dir;
  std::string config_file;
  std::string pipeline_mode = "structured";
  int parallelism = 1;
};

DomainRegistry load_registry(const CliConfig& cli) {
  if (cli.domain_files.size() != cli.annotation_files.size() &&
      !cli.annotation_files.empty())
    throw Error("give one --annotations per --domain (or none)");
  DomainRegistry registry;
  for (std::size_t i = 0; i < cli.domain_files.size(); ++i) {
    Domain d = parse_domain(read_file(cli.domain_files[i]));
    NlAnnotations ann;
    if (i < cli.annotation_files.size()) {
      ann = NlAnnotations::from_json_text(read_file(cli.annotation_files[i]), d);
    } else {
      // minimal sidecar: canonical text stands in for prose
      ann.domain = d.name;
      ann.description = "Domain " + d.name.str() + ".";
      for (const auto& [n, s] : d.schemas) ann.action_templates[n] = n.str();
      for (const auto& [n, p] : d.predicates) {
        if (p.arity() == 0)
          ann.zero_arity_templates[n] = n.str();
        else
          ann.fluent_templates[n] = n.str();
      }
    }
    registry.add(std::move(d), std::move(ann));
  }
  return registry;
}

std::vector<GroundAction> parse_action_list(const std::string& text,
                                            const Domain& d,
                                            const std::map<Name, Name>& objects) {
  std::vector<GroundAction> out;
  std::string cur;
  auto flush = [&] {
    auto begin = cur.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      cur.clear();
      return;
    }
    out.push_back(parse_action_term(cur, d, objects));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

ReasonerConfig reasoner_config(const CliConfig& cli) {
  ReasonerConfig rc;
  if (!cli.config_file.empty())
    rc = ReasonerConfig::from_json_text(read_file(cli.config_file));
  rc.mode = cli.mode;
  if (rc.cache_dir.empty() && !cli.out_dir.empty())
    rc.cache_dir = (std::filesystem::path(cli.out_dir) / "cache").string();
  return rc;
}

std::shared_ptr<Reasoner> make_reasoner(const ReasonerConfig& rc,
                                        const DomainRegistry& registry) {
  if (rc.mode == "mock") return std::make_shared<SymbolicMockReasoner>(registry);
  if (rc.mode == "live") return std::make_shared<HttpReasoner>(rc);
  if (rc.cache_dir.empty())
    throw Error("mode '" + rc.mode + "' needs a cache dir (--out or config)");
  if (rc.mode == "replay")
    return std::make_shared<CacheReasoner>(rc.cache_dir, CacheMode::Replay);
  if (rc.mode == "record")
    return std::make_shared<CacheReasoner>(rc.cache_dir, CacheMode::Record,
                                           std::make_shared<HttpReasoner>(rc));
  throw Error("unknown mode '" + rc.mode + "'");
}

int cmd_progress(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  const auto& entry = registry.entries().begin()->second;
  Problem p = parse_problem(read_file(cli.problem_file), entry.domain);
  auto actions = parse_action_list(cli.actions, entry.domain, p.objects);
  Trace t = progress(p.init, actions);
  std::cout << trace_report(t);
  return t.failure_index ? 1 : 0;
}

int cmd_check(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  const auto& entry = registry.entries().begin()->second;
  Problem p = parse_problem(read_file(cli.problem_file), entry.domain);
  auto actions = parse_action_list(cli.actions, entry.domain, p.objects);
  if (actions.size() != 1) throw Error("check takes exactly one action");
  ApplicabilityResult r = is_applicable(p.init, actions[0]);
  if (r.applicable) {
    std::cout << "applicable\n";
    return 0;
  }
  std::cout << "not applicable:";
  for (const auto& l : r.unsatisfied) std::cout << ' ' << l.text();
  std::cout << '\n';
  return 1;
}

int cmd_answer(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  const auto& entry = registry.entries().begin()->second;
  Problem p = parse_problem(read_file(cli.problem_file), entry.domain);
  auto actions = parse_action_list(cli.actions, entry.domain, p.objects);
  Trace t = progress(p.init, actions);

  std::vector<Literal> literals;
  {
    std::istringstream is(cli.query);
    std::string buf((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
    // parse one or more literals
    std::size_t i = 0;
    while (i < buf.size()) {
      if (std::isspace(static_cast<unsigned char>(buf[i]))) {
        ++i;
        continue;
      }
      int depth = 0;
      std::size_t start = i;
      for (; i < buf.size(); ++i) {
        if (buf[i] == '(') ++depth;
        if (buf[i] == ')' && --depth == 0) {
          ++i;
          break;
        }
      }
      literals.push_back(
          parse_literal_text(buf.substr(start, i - start), entry.domain));
    }
  }

  QueryKind kind = query_kind_from_tag(cli.task);
  Verdict v;
  switch (kind) {
    case QueryKind::Projection: v = eval_projection(t, literals); break;
    case QueryKind::Executability: v = eval_executability(t); break;
    case QueryKind::PlanVerification:
      v = eval_plan_verification(t, literals);
      break;
    case QueryKind::Validation: v = classify_sequence(t, literals); break;
  }
  std::cout << answer_text(v.answer) << '\n';
  return 0;
}

int cmd_run_bench(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  auto instances = load_instances(cli.instances_file, registry);
  ReasonerConfig rc = reasoner_config(cli);
  auto reasoner = make_reasoner(rc, registry);

  PipelineConfig cfg;
  cfg.mode = cli.pipeline_mode;
  cfg.model = rc.model;
  cfg.temperature = rc.temperature;
  cfg.sc_temperature = rc.sc_temperature;
  cfg.max_tokens = rc.max_tokens;

  RunSuiteOptions opts;
  opts.parallelism = cli.parallelism;
  if (!cli.out_dir.empty())
    opts.record_dir =
        (std::filesystem::path(cli.out_dir) / "run-records").string();

  ResultsTable table = run_suite(instances, method_from_name(cli.method),
                                 registry, cfg, *reasoner, opts);
  std::string md = emit_table(table, TableFormat::Markdown);
  std::cout << md;
  if (!cli.out_dir.empty()) {
    std::filesystem::create_directories(cli.out_dir);
    std::ofstream(std::filesystem::path(cli.out_dir) / "results.md") << md;
    std::ofstream(std::filesystem::path(cli.out_dir) / "results.csv")
        << emit_table(table, TableFormat::Csv);
  }
  for (const auto& [key, cell] : table.cells)
    if (cell.method_errors > 0) return 1;
  return 0;
}

int cmd_audit(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  auto instances = load_instances(cli.instances_file, registry);
  AuditReport report = audit_labels(instances, registry);
  for (const auto& e : report.entries) {
    if (e.flagged)
      std::cout << "FLAG " << e.question_id << ": gold=" << e.gold
                << " oracle=" << e.oracle << " (" << e.evidence << ")\n";
  }
  std::cout << report.flagged_count() << " of " << report.entries.size()
            << " audited instances flagged\n";
  if (!cli.out_dir.empty()) {
    std::filesystem::create_directories(cli.out_dir);
    std::ofstream(std::filesystem::path(cli.out_dir) / "audit.patch.jsonl")
        << audit_patch_text(report);
  }
  return report.flagged_count() > 0 ? 1 : 0;
}

int cmd_render_prompts(const CliConfig& cli) {
  DomainRegistry registry = load_registry(cli);
  auto instances = load_instances(cli.instances_file, registry);
  PipelineConfig cfg;
  cfg.mode = cli.pipeline_mode;
  for (const auto& inst : instances) {
    auto prompts = render_all_prompts(inst.task(), registry, cfg);
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      std::cout << "=== " << inst.question_id << " prompt " << i + 1 << " ===\n"
                << prompts[i] << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ProRAC toolkit: symbolic progression oracle, LLM pipeline, "
               "benchmark harness"};
  app.require_subcommand(1);

  CliConfig cli;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-d,--domain", cli.domain_files, "domain file(s)");
    sub->add_option("--annotations", cli.annotation_files,
                    "NL annotation sidecar(s), one per domain");
  };

  auto* progress_cmd = app.add_subcommand("progress", "print a progression trace");
  add_common(progress_cmd);
  progress_cmd->add_option("-p,--problem", cli.problem_file)->required();
  progress_cmd->add_option("-a,--actions", cli.actions,
                           "comma-separated action terms");

  auto* check_cmd = app.add_subcommand("check", "single-action applicability");
  add_common(check_cmd);
  check_cmd->add_option("-p,--problem", cli.problem_file)->required();
  check_cmd->add_option("-a,--actions", cli.actions)->required();

  auto* answer_cmd = app.add_subcommand("answer", "evaluate a query");
  add_common(answer_cmd);
  answer_cmd->add_option("-p,--problem", cli.problem_file)->required();
  answer_cmd->add_option("-a,--actions", cli.actions);
  answer_cmd->add_option("-q,--query", cli.query, "query literals");
  answer_cmd->add_option("--task", cli.task,
                         "projection|executability|plan_verification|validation");

  auto* bench_cmd = app.add_subcommand("run-bench", "run a method over instances");
  add_common(bench_cmd);
  bench_cmd->add_option("-i,--instances", cli.instances_file)->required();
  bench_cmd->add_option("--method", cli.method);
  bench_cmd->add_option("--mode", cli.mode, "live|record|replay|mock");
  bench_cmd->add_option("--pipeline-mode", cli.pipeline_mode, "structured|nl");
  bench_cmd->add_option("--out", cli.out_dir);
  bench_cmd->add_option("--config", cli.config_file);
  bench_cmd->add_option("--parallelism", cli.parallelism);

  auto* audit_cmd = app.add_subcommand("audit", "audit gold labels against the oracle");
  add_common(audit_cmd);
  audit_cmd->add_option("-i,--instances", cli.instances_file)->required();
  audit_cmd->add_option("--out", cli.out_dir);

  auto* render_cmd =
      app.add_subcommand("render-prompts", "emit all prompts, no reasoner calls");
  add_common(render_cmd);
  render_cmd->add_option("-i,--instances", cli.instances_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (progress_cmd->parsed()) return cmd_progress(cli);
    if (check_cmd->parsed()) return cmd_check(cli);
    if (answer_cmd->parsed()) return cmd_answer(cli);
    if (bench_cmd->parsed()) return cmd_run_bench(cli);
    if (audit_cmd->parsed()) return cmd_audit(cli);
    if (render_cmd->parsed()) return cmd_render_prompts(cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
