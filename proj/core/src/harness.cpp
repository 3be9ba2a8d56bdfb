#include "prorac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace prorac {

namespace {

using nlohmann::json;

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<Literal> parse_literal_array(const json& arr, const Domain& d) {
  std::vector<Literal> out;
  for (const auto& item : arr)
    out.push_back(parse_literal_text(item.get<std::string>(), d));
  return out;
}

std::string join_literals(const std::vector<Literal>& ls) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) os << ' ';
    os << ls[i].text();
  }
  return os.str();
}

}  // namespace

std::string canonical_category(const std::string& raw) {
  std::string t = lowercase(raw);
  if (t == "projection" || t == "effects" || t == "fluent_tracking" ||
      t == "state_tracking" || t == "progression")
    return "projection";
  if (t == "executability" || t == "action_executability" ||
      t == "applicability")
    return "executability";
  if (t == "plan_verification") return "plan_verification";
  if (t == "validation") return "validation";
  throw SchemaError("unknown question category '" + raw + "'");
}

std::vector<Instance> load_instances(const std::string& path,
                                     const DomainRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file " + path);

  std::vector<Instance> out;
  std::string line;
  int record = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++record;
    try {
      json j = json::parse(line);
      Instance inst;
      inst.question_id = j.at("question_id").get<std::string>();
      inst.domain_name = Name(j.at("domain_name").get<std::string>());
      inst.question_category =
          canonical_category(j.at("question_category").get<std::string>());
      inst.answer_type = j.at("answer_type").get<std::string>();
      if (inst.answer_type != "bool" && inst.answer_type != "mcq")
        throw SchemaError("answer_type must be bool or mcq");
      inst.question = j.at("question").get<std::string>();
      inst.gold = lowercase(j.at("answer").get<std::string>());
      inst.plan_length = j.at("plan_length").get<int>();
      if (j.contains("initial_state_nl"))
        inst.initial_state_nl = j["initial_state_nl"].get<std::string>();
      if (j.contains("validation_semantics"))
        inst.validation_semantics = j["validation_semantics"].get<std::string>();

      if (j.contains("structured")) {
        if (!registry.has(inst.domain_name))
          throw SchemaError("structured instance for unregistered domain '" +
                            inst.domain_name.str() + "'");
        const Domain& d = registry.at(inst.domain_name).domain;
        const json& s = j["structured"];
        StructuredQuestion q;
        std::ostringstream init_text;
        for (const auto& f : s.at("init")) {
          init_text << f.get<std::string>() << ' ';
        }
        q.init = parse_state_text(init_text.str(), d);
        std::ostringstream plan_text;
        bool first = true;
        for (const auto& a : s.at("actions")) {
          if (!first) plan_text << " ; ";
          plan_text << a.get<std::string>();
          first = false;
        }
        std::string question_text = "init: " + q.init.canonical_text() +
                                    " | plan: " + plan_text.str() + " | ";
        q.query.kind = inst.kind();
        if (s.contains("choices")) {
          for (const auto& [letter, lits] : s["choices"].items()) {
            StructuredChoice c;
            c.letter = letter;
            std::transform(c.letter.begin(), c.letter.end(), c.letter.begin(),
                           [](unsigned char ch) { return std::toupper(ch); });
            c.literals = parse_literal_array(lits, d);
            q.query.choices.push_back(std::move(c));
          }
        } else if (inst.kind() == QueryKind::PlanVerification ||
                   inst.kind() == QueryKind::Validation) {
          q.query.literals = parse_literal_array(s.at("goal"), d);
        } else if (inst.kind() == QueryKind::Projection) {
          q.query.literals = parse_literal_array(s.at("query"), d);
        }
        question_text += format_query_section(q.query);
        // plan itself parsed through the shared structured path so every
        // instance round-trips the same way the mock sees it
        q = parse_structured_question(question_text, d);
        if (static_cast<int>(q.plan.size()) != inst.plan_length)
          throw SchemaError("plan_length " + std::to_string(inst.plan_length) +
                            " does not match " +
                            std::to_string(q.plan.size()) + " actions");
        inst.structured = std::move(q);
        if (inst.question.empty()) inst.question = question_text;
      }
      out.push_back(std::move(inst));
    } catch (const json::exception& e) {
      throw SchemaError("record " + std::to_string(record) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError("record " + std::to_string(record) + ": " + e.what());
    } catch (const Error& e) {
      throw SchemaError("record " + std::to_string(record) + ": " + e.what());
    }
  }
  return out;
}

std::string oracle_answer(const Instance& inst) {
  if (!inst.structured)
    throw UnauditableInstance("instance " + inst.question_id +
                              " has no structured block");
  const StructuredQuestion& q = *inst.structured;
  Trace t = progress(q.init, q.plan);
  if (q.query.is_mcq()) {
    for (const auto& c : q.query.choices) {
      if (eval_projection(t, c.literals).answer == Answer::True)
        return lowercase(c.letter);
    }
    return "false";
  }
  Verdict v;
  switch (q.query.kind) {
    case QueryKind::Projection:
      v = eval_projection(t, q.query.literals);
      break;
    case QueryKind::Executability:
      v = eval_executability(t);
      break;
    case QueryKind::PlanVerification:
      v = eval_plan_verification(t, q.query.literals);
      break;
    case QueryKind::Validation:
      v = classify_sequence(t, q.query.literals);
      break;
  }
  if (q.query.kind == QueryKind::Validation &&
      inst.validation_semantics != "three_way") {
    bool yes = inst.validation_semantics == "bool_plan"
                   ? v.answer == Answer::Plan
                   : v.answer != Answer::Invalid;
    return yes ? "true" : "false";
  }
  return answer_text(v.answer);
}

std::string accuracy_percent(int correct, int total) {
  if (total == 0) return "0.00";
  long double v = 10000.0L * correct / total;
  long long scaled = static_cast<long long>(std::floor(v + 0.5L));
  std::ostringstream os;
  os << scaled / 100 << '.' << std::setw(2) << std::setfill('0')
     << scaled % 100;
  return os.str();
}

namespace {

std::string task_tag(const Instance& inst) {
  return inst.question_category + (inst.mcq() ? "-mcq" : "");
}

void write_run_record(const std::string& dir, const Instance& inst,
                      const std::string& method,
                      const InstanceOutcome& outcome,
                      const Transcript* transcript) {
  nlohmann::ordered_json j;
  j["question_id"] = inst.question_id;
  j["domain"] = inst.domain_name.str();
  j["task"] = task_tag(inst);
  j["method"] = method;
  j["question"] = inst.question;
  j["gold"] = inst.gold;
  j["answer"] = outcome.answer;
  j["correct"] = outcome.correct;
  if (!outcome.error.empty()) j["error"] = outcome.error;
  j["calls"] = nlohmann::ordered_json::array();
  if (transcript) {
    for (const auto& e : transcript->entries) {
      nlohmann::ordered_json call;
      call["request"] = json::parse(canonical_request_json(e.request));
      call["responses"] = e.responses;
      call["latency_ms"] = e.latency_ms;
      j["calls"].push_back(std::move(call));
    }
  }
  std::filesystem::create_directories(dir);
  std::filesystem::path file =
      std::filesystem::path(dir) / (inst.question_id + "." + method + ".json");
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

ResultsTable run_suite(const std::vector<Instance>& instances,
                       MethodKind method, const DomainRegistry& registry,
                       const PipelineConfig& cfg, Reasoner& reasoner,
                       const RunSuiteOptions& opts) {
  struct Slot {
    InstanceOutcome outcome;
    Transcript transcript;
  };
  std::vector<Slot> slots(instances.size());

  auto work = [&](std::size_t i) {
    const Instance& inst = instances[i];
    Slot& slot = slots[i];
    slot.outcome.question_id = inst.question_id;
    slot.outcome.gold = inst.gold;
    try {
      if (method == MethodKind::ProRAC) {
        PipelineRun run = run_prorac(inst.task(), registry, cfg, reasoner);
        slot.outcome.answer = run.answer_norm;
        slot.transcript = std::move(run.transcript);
      } else {
        BaselineResult res =
            run_baseline(inst.task(), method, registry, cfg, reasoner);
        slot.outcome.answer = res.answer_norm;
        slot.transcript = std::move(res.transcript);
      }
      // benchmarks with boolean validation labels expect true/false even
      // though methods answer in the three-way vocabulary
      if (inst.kind() == QueryKind::Validation &&
          inst.validation_semantics != "three_way") {
        const std::string& a = slot.outcome.answer;
        if (a == "plan" || a == "applicable" || a == "invalid") {
          bool yes = inst.validation_semantics == "bool_plan"
                         ? a == "plan"
                         : a != "invalid";
          slot.outcome.answer = yes ? "true" : "false";
        }
      }
      slot.outcome.correct = slot.outcome.answer == inst.gold;
    } catch (const Error& e) {
      // unparseable or failed runs score as incorrect, never dropped
      slot.outcome.error = e.what();
      slot.outcome.correct = false;
    }
  };

  int parallelism = std::max(1, opts.parallelism);
  if (parallelism == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < parallelism; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < instances.size();
             i = next.fetch_add(1))
          work(i);
      });
    }
    for (auto& t : workers) t.join();
  }

  // deterministic aggregation ordered by question_id
  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instances[a].question_id < instances[b].question_id;
  });

  ResultsTable table;
  std::string mname = method_name(method);
  for (std::size_t i : order) {
    const Instance& inst = instances[i];
    CellKey key{inst.domain_name.str(), task_tag(inst), mname};
    ResultsCell& cell = table.cells[key];
    cell.total += 1;
    cell.correct += slots[i].outcome.correct ? 1 : 0;
    cell.method_errors += slots[i].outcome.error.empty() ? 0 : 1;
    cell.outcomes.push_back(slots[i].outcome);
    if (!opts.record_dir.empty())
      write_run_record(opts.record_dir, inst, mname, slots[i].outcome,
                       &slots[i].transcript);
  }
  return table;
}

AuditReport audit_labels(const std::vector<Instance>& instances,
                         const DomainRegistry& registry) {
  AuditReport report;
  for (const auto& inst : instances) {
    if (!inst.structured) continue;  // only structured instances are auditable
    AuditEntry e;
    e.question_id = inst.question_id;
    e.gold = inst.gold;
    e.oracle = oracle_answer(inst);
    e.flagged = e.gold != e.oracle;
    if (e.flagged) {
      Trace t = progress(inst.structured->init, inst.structured->plan);
      std::ostringstream os;
      if (t.failure_index) {
        os << "step " << *t.failure_index << " inapplicable: "
           << join_literals(t.checks[*t.failure_index].unsatisfied);
      } else {
        os << "final state: " << t.final_state().canonical_text();
      }
      e.evidence = os.str();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string audit_patch_text(const AuditReport& report) {
  std::ostringstream os;
  for (const auto& e : report.entries) {
    if (!e.flagged) continue;
    nlohmann::ordered_json j;
    j["question_id"] = e.question_id;
    j["old_answer"] = e.gold;
    j["new_answer"] = e.oracle;
    j["evidence"] = e.evidence;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::string error_label_name(ErrorLabel e) {
  switch (e) {
    case ErrorLabel::None: return "none";
    case ErrorLabel::FrameViolation: return "frame_violation";
    case ErrorLabel::EffectMiss: return "effect_miss";
    case ErrorLabel::QualificationError: return "qualification_error";
    case ErrorLabel::ExtractionError: return "extraction_error";
  }
  return "none";
}

ErrorLabel classify_error(const PipelineRun& run, const Instance& inst,
                          const DomainRegistry& registry) {
  if (run.mode != "structured")
    throw IncomparableRun("run was not executed in structured mode");
  if (!inst.structured)
    throw IncomparableRun("instance has no structured block");
  const Domain& d = registry.at(inst.domain_name).domain;

  State run_init;
  try {
    run_init = parse_state_text(run.extraction.init_state_text, d);
  } catch (const Error&) {
    throw IncomparableRun("run initial state does not parse");
  }
  if (run_init != inst.structured->init) return ErrorLabel::ExtractionError;

  const std::vector<GroundAction>& plan = inst.structured->plan;
  State cur = run_init;
  for (std::size_t i = 0; i < run.step_checks.size() && i < plan.size(); ++i) {
    bool oracle_ok = is_applicable(cur, plan[i]).applicable;
    if (run.step_checks[i].executable != oracle_ok)
      return ErrorLabel::QualificationError;
    if (!oracle_ok) break;
    if (i + 1 >= run.step_states.size()) break;
    State claimed;
    try {
      claimed = parse_state_text(run.step_states[i + 1], d);
    } catch (const Error&) {
      throw IncomparableRun("step state does not parse");
    }
    State expected = apply_action(cur, plan[i]);
    if (claimed != expected) {
      StateDiff drift = state_diff(expected, claimed);
      // anything outside the action's add/delete lists is a frame violation;
      // a missing add or lingering delete is a missed effect
      for (const auto& f : drift.added) {
        if (!plan[i].add.count(f) && !plan[i].del.count(f))
          return ErrorLabel::FrameViolation;
      }
      for (const auto& f : drift.removed) {
        if (!plan[i].add.count(f) && !plan[i].del.count(f))
          return ErrorLabel::FrameViolation;
      }
      return ErrorLabel::EffectMiss;
    }
    cur = expected;
  }
  return ErrorLabel::None;
}

std::string emit_table(const ResultsTable& table, TableFormat format) {
  // columns: (domain, task) pairs in sorted order; rows: methods
  std::vector<std::pair<std::string, std::string>> columns;
  std::vector<std::string> methods;
  for (const auto& [key, cell] : table.cells) {
    std::pair<std::string, std::string> col{key.domain, key.task};
    if (std::find(columns.begin(), columns.end(), col) == columns.end())
      columns.push_back(col);
    if (std::find(methods.begin(), methods.end(), key.method) == methods.end())
      methods.push_back(key.method);
  }
  std::sort(columns.begin(), columns.end());
  std::sort(methods.begin(), methods.end());

  std::ostringstream os;
  if (format == TableFormat::Markdown) {
    os << "| method |";
    for (const auto& [dom, task] : columns) os << ' ' << dom << ':' << task << " |";
    os << '\n' << "|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& m : methods) {
      os << "| " << m << " |";
      for (const auto& [dom, task] : columns) {
        auto it = table.cells.find(CellKey{dom, task, m});
        if (it == table.cells.end()) {
          os << " - |";
        } else {
          os << ' ' << accuracy_percent(it->second.correct, it->second.total)
             << " |";
        }
      }
      os << '\n';
    }
  } else {
    os << "method";
    for (const auto& [dom, task] : columns) os << ',' << dom << ':' << task;
    os << '\n';
    for (const auto& m : methods) {
      os << m;
      for (const auto& [dom, task] : columns) {
        auto it = table.cells.find(CellKey{dom, task, m});
        os << ',';
        if (it != table.cells.end())
          os << accuracy_percent(it->second.correct, it->second.total);
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace prorac
