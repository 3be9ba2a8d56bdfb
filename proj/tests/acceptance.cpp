// End-to-end acceptance checks. Every criterion prints one [PASS] line;
// REQUIRE failures abort the criterion and surface as test failures.

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "prorac/cache_reasoner.hpp"
#include "prorac/harness.hpp"
#include "prorac/mock_reasoner.hpp"

using namespace prorac;

namespace naive {

// Deliberately simple second implementation of the STRIPS semantics working
// on plain fluent strings, kept independent of State/set machinery.
using Facts = std::vector<std::string>;

Facts from_state(const State& s) {
  Facts out;
  for (const auto& f : s.fluents()) out.push_back(f.text());
  std::sort(out.begin(), out.end());
  return out;
}

bool holds_fact(const Facts& facts, const std::string& fluent_text) {
  for (const auto& f : facts)
    if (f == fluent_text) return true;
  return false;
}

bool holds(const Facts& facts, const Literal& l) {
  return holds_fact(facts, l.fluent.text()) == l.positive;
}

bool applicable(const Facts& facts, const GroundAction& a) {
  for (const auto& l : a.precondition)
    if (!holds(facts, l)) return false;
  return true;
}

Facts apply(const Facts& facts, const GroundAction& a) {
  Facts next;
  for (const auto& f : facts) {
    bool deleted = false;
    for (const auto& d : a.del)
      if (d.text() == f) deleted = true;
    if (!deleted) next.push_back(f);
  }
  for (const auto& f : a.add)
    if (!holds_fact(next, f.text())) next.push_back(f.text());
  std::sort(next.begin(), next.end());
  return next;
}

std::string text(const Facts& facts) {
  std::string out;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (i) out += ' ';
    out += facts[i];
  }
  return out;
}

struct Run {
  std::vector<Facts> states;
  long failure = -1;  // index of the first inapplicable action
};

Run simulate(const Facts& init, const std::vector<GroundAction>& plan) {
  Run r;
  r.states.push_back(init);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!applicable(r.states.back(), plan[i])) {
      r.failure = static_cast<long>(i);
      break;
    }
    r.states.push_back(naive::apply(r.states.back(), plan[i]));
  }
  return r;
}

}  // namespace naive

namespace {

struct World {
  std::string domain_name;
  Domain domain;
  State init;
  std::vector<GroundAction> universe;
};

World make_world(const std::string& name, const std::string& init_text) {
  World w;
  w.domain_name = name;
  w.domain = testutil::load_domain(name);
  w.init = parse_state_text(init_text, w.domain);
  w.universe =
      all_ground_actions(w.domain, infer_objects(w.domain, w.init.fluents()));
  return w;
}

std::vector<World> worlds() {
  std::vector<World> out;
  out.push_back(make_world(
      "blocksworld",
      "(clear a) (clear b) (clear c) (ontable a) (ontable b) (ontable c) "
      "(handempty)"));
  out.push_back(make_world(
      "depots",
      "(at pallet0 depot0) (at pallet1 depot1) (on crate0 pallet0) "
      "(at crate0 depot0) (clear crate0) (on crate1 pallet1) "
      "(at crate1 depot1) (clear crate1) (at hoist0 depot0) "
      "(available hoist0) (at hoist1 depot1) (available hoist1) "
      "(at truck0 depot0)"));
  out.push_back(make_world(
      "grippers",
      "(at-robby robot1 room1) (free robot1 lgripper1) (free robot1 rgripper1) "
      "(at ball1 room1) (at ball2 room2) (at ball3 room3)"));
  return out;
}

std::vector<GroundAction> random_applicable_plan(const World& w,
                                                 std::mt19937& rng,
                                                 std::size_t length) {
  std::vector<GroundAction> plan;
  State cur = w.init;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<const GroundAction*> options;
    for (const auto& a : w.universe)
      if (is_applicable(cur, a).applicable) options.push_back(&a);
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const GroundAction& a = *options[pick(rng)];
    plan.push_back(a);
    cur = apply_action(cur, a);
  }
  return plan;
}

std::vector<Instance> all_fixture_instances(const DomainRegistry& registry) {
  std::vector<Instance> out;
  for (const auto& file : {"bw_instances.jsonl", "multi_instances.jsonl"}) {
    for (auto& inst :
         load_instances(testutil::fixture_path(file), registry))
      out.push_back(std::move(inst));
  }
  return out;
}

void pass(const std::string& what) { std::cout << "[PASS] " << what << "\n"; }

}  // namespace

TEST_CASE("criterion 01: progression engine matches an independent oracle") {
  std::mt19937 rng(20250825);
  std::size_t sequences = 0, steps_checked = 0;
  for (const World& w : worlds()) {
    for (int rep = 0; rep < 48; ++rep) {
      std::uniform_int_distribution<std::size_t> len(0, 19);
      std::vector<GroundAction> plan = random_applicable_plan(w, rng, len(rng));
      // half of the runs get a random (frequently inapplicable) tail
      if (rep % 2 == 0 && !w.universe.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0,
                                                        w.universe.size() - 1);
        plan.push_back(w.universe[pick(rng)]);
        std::uniform_int_distribution<std::size_t> cut(0, plan.size() - 1);
        std::rotate(plan.begin() + cut(rng), plan.end() - 1, plan.end());
      }

      Trace t = progress(w.init, plan);
      naive::Run ref = naive::simulate(naive::from_state(w.init), plan);

      if (ref.failure >= 0) {
        REQUIRE(t.failure_index.has_value());
        REQUIRE(static_cast<long>(*t.failure_index) == ref.failure);
      } else {
        REQUIRE_FALSE(t.failure_index.has_value());
      }
      REQUIRE(t.states.size() == ref.states.size());
      for (std::size_t i = 0; i < t.states.size(); ++i)
        REQUIRE(t.states[i].canonical_text() == naive::text(ref.states[i]));

      // per-step invariants
      for (std::size_t i = 0; i + 1 < t.states.size(); ++i) {
        const GroundAction& a = plan[i];
        REQUIRE(is_applicable(t.states[i], a).applicable ==
                naive::applicable(naive::from_state(t.states[i]), a));
        // frame: fluents outside add and del are untouched
        StateDiff diff = state_diff(t.states[i], t.states[i + 1]);
        for (const auto& f : diff.added) REQUIRE(a.add.count(f) == 1);
        for (const auto& f : diff.removed) REQUIRE(a.del.count(f) == 1);
        for (const auto& f : a.add) REQUIRE(t.states[i + 1].contains(f));
        for (const auto& f : a.del)
          REQUIRE((a.add.count(f) == 1 || !t.states[i + 1].contains(f)));
        ++steps_checked;
      }
      ++sequences;
    }
  }
  REQUIRE(sequences >= 60);
  REQUIRE(steps_checked >= 1000);
  pass("progression matches the independent oracle over " +
       std::to_string(sequences) + " sequences / " +
       std::to_string(steps_checked) + " steps");
}

TEST_CASE("criterion 02: canonical state text round-trips") {
  std::mt19937 rng(7);
  int round_trips = 0;
  for (const World& w : worlds()) {
    // the pool of all fluents mentioned by the grounded universe
    std::vector<Fluent> pool(w.init.fluents().begin(), w.init.fluents().end());
    for (const auto& a : w.universe)
      for (const auto& f : a.add) pool.push_back(f);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::uniform_int_distribution<int> keep(0, 2);
    for (int rep = 0; rep < 170; ++rep) {
      std::set<Fluent> subset;
      for (const auto& f : pool)
        if (keep(rng) == 0) subset.insert(f);
      State s(subset);
      State back = parse_state_text(s.canonical_text(), w.domain);
      REQUIRE(back == s);
      REQUIRE(back.canonical_text() == s.canonical_text());
      ++round_trips;
    }
  }
  REQUIRE(round_trips >= 500);
  pass("canonical state text round-trips (" + std::to_string(round_trips) +
       " states)");
}

TEST_CASE("criterion 03: query evaluators agree with the naive reading") {
  std::mt19937 rng(99);
  int queries = 0;
  for (const World& w : worlds()) {
    std::vector<Fluent> pool;
    for (const auto& a : w.universe)
      for (const auto& f : a.add) pool.push_back(f);
    for (const auto& f : w.init.fluents()) pool.push_back(f);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    for (int rep = 0; rep < 40; ++rep) {
      std::uniform_int_distribution<std::size_t> len(0, 8);
      auto plan = random_applicable_plan(w, rng, len(rng));
      if (rep % 3 == 0 && !w.universe.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0,
                                                        w.universe.size() - 1);
        plan.push_back(w.universe[pick(rng)]);
      }
      Trace t = progress(w.init, plan);
      naive::Run ref = naive::simulate(naive::from_state(w.init), plan);

      std::vector<Literal> q;
      std::uniform_int_distribution<std::size_t> fpick(0, pool.size() - 1);
      std::uniform_int_distribution<int> sign(0, 1);
      for (int i = 0; i < 3; ++i)
        q.push_back({pool[fpick(rng)], sign(rng) == 1});

      bool exec = ref.failure < 0;
      bool qs_hold = exec;
      if (exec)
        for (const auto& l : q)
          qs_hold = qs_hold && naive::holds(ref.states.back(), l);

      REQUIRE(eval_projection(t, q).answer ==
              (qs_hold ? Answer::True : Answer::False));
      REQUIRE(eval_executability(t).answer ==
              (exec ? Answer::True : Answer::False));
      REQUIRE(eval_plan_verification(t, q).answer ==
              ((exec && qs_hold) ? Answer::True : Answer::False));
      Answer expected = !exec             ? Answer::Invalid
                        : qs_hold         ? Answer::Plan
                                          : Answer::Applicable;
      REQUIRE(classify_sequence(t, q).answer == expected);
      queries += 4;
    }
  }
  pass("query evaluators agree with the naive reading (" +
       std::to_string(queries) + " verdicts)");
}

TEST_CASE("criterion 04: mock-backed runs reach ceiling accuracy") {
  DomainRegistry registry = testutil::full_registry();
  auto instances = all_fixture_instances(registry);
  REQUIRE(instances.size() == 18);
  PipelineConfig cfg;
  SymbolicMockReasoner mock(registry);
  for (MethodKind m : {MethodKind::ProRAC, MethodKind::ZeroShot,
                       MethodKind::ZeroShotCoT, MethodKind::TwoShotCoT,
                       MethodKind::SelfConsistency}) {
    ResultsTable table = run_suite(instances, m, registry, cfg, mock);
    for (const auto& [key, cell] : table.cells) {
      REQUIRE(cell.method_errors == 0);
      REQUIRE(accuracy_percent(cell.correct, cell.total) == "100.00");
    }
  }
  pass("all five methods reach 100.00 on every fixture cell with the mock");
}

TEST_CASE("criterion 05: call-count law and short-circuiting") {
  DomainRegistry registry = testutil::full_registry();
  auto instances = all_fixture_instances(registry);
  PipelineConfig cfg;
  auto counting = std::make_shared<CountingReasoner>(
      std::make_shared<SymbolicMockReasoner>(registry));
  for (const auto& inst : instances) {
    counting->reset();
    PipelineRun run = run_prorac(inst.task(), registry, cfg, *counting);
    Trace t = progress(inst.structured->init, inst.structured->plan);
    std::size_t expected =
        t.failure_index ? 3 + 2 * *t.failure_index + 1
                        : 3 + 2 * inst.structured->plan.size() + 1;
    REQUIRE(counting->calls() == expected);
    if (t.failure_index) {
      REQUIRE((run.answer_norm == "false" || run.answer_norm == "invalid"));
      REQUIRE(run.verdict.failure_index == t.failure_index);
    }
  }
  pass("reasoner calls follow 3+2k+1 and stop at the first failed check");
}

TEST_CASE("criterion 06: the mislabeled 19-step depots instance is caught") {
  DomainRegistry registry = testutil::registry_with({"depots"});
  auto instances = load_instances(
      testutil::fixture_path("depots_19step.jsonl"), registry);
  REQUIRE(instances.size() == 1);
  const Instance& inst = instances[0];
  REQUIRE(inst.plan_length == 19);
  REQUIRE(inst.gold == "true");

  Trace t = progress(inst.structured->init, inst.structured->plan);
  REQUIRE(t.failure_index.has_value());
  REQUIRE(*t.failure_index == 1);
  REQUIRE(t.checks[1].unsatisfied.size() == 1);
  REQUIRE(t.checks[1].unsatisfied[0].text() == "(lifting hoist1 crate2)");
  REQUIRE(oracle_answer(inst) == "false");

  AuditReport report = audit_labels(instances, registry);
  REQUIRE(report.flagged_count() == 1);
  REQUIRE(report.entries[0].evidence.find("(lifting hoist1 crate2)") !=
          std::string::npos);

  PipelineConfig cfg;
  SymbolicMockReasoner mock(registry);
  PipelineRun run = run_prorac(inst.task(), registry, cfg, mock);
  REQUIRE(run.answer_norm == "false");
  pass("19-step depots sample fails at step 1 on (lifting hoist1 crate2); "
       "stored label true is flagged");
}

TEST_CASE("criterion 07: the auditor flags 4 of 21 and only proposes patches") {
  DomainRegistry registry = testutil::full_registry();
  std::string before = testutil::read_fixture("audit_instances.jsonl");
  auto instances = load_instances(
      testutil::fixture_path("audit_instances.jsonl"), registry);
  REQUIRE(instances.size() == 21);

  AuditReport report = audit_labels(instances, registry);
  REQUIRE(report.flagged_count() == 4);
  std::vector<std::string> flagged;
  for (const auto& e : report.entries)
    if (e.flagged) flagged.push_back(e.question_id);
  REQUIRE(flagged ==
          std::vector<std::string>{"ad-03", "ad-08", "ad-14", "ad-20"});

  std::string patch = audit_patch_text(report);
  REQUIRE(std::count(patch.begin(), patch.end(), '\n') == 4);
  for (const auto& id : flagged) REQUIRE(patch.find(id) != std::string::npos);

  // auditing never rewrites the dataset
  REQUIRE(testutil::read_fixture("audit_instances.jsonl") == before);
  pass("auditor flags ad-03 ad-08 ad-14 ad-20 and leaves the file untouched");
}

TEST_CASE("criterion 08: 40 fault-injected runs classify into the taxonomy") {
  DomainRegistry registry = testutil::full_registry();
  PipelineConfig cfg;
  auto instances = all_fixture_instances(registry);

  // executable multi-step instances give clean classification targets
  std::vector<Instance> targets;
  for (const auto& inst : instances) {
    if (!inst.structured) continue;
    Trace t = progress(inst.structured->init, inst.structured->plan);
    if (!t.failure_index && !inst.structured->plan.empty())
      targets.push_back(inst);
  }
  REQUIRE(targets.size() >= 10);
  targets.resize(10);

  const std::pair<FaultKind, ErrorLabel> table[] = {
      {FaultKind::FlipExecutability, ErrorLabel::QualificationError},
      {FaultKind::DropEffect, ErrorLabel::EffectMiss},
      {FaultKind::MutateUnrelatedFluent, ErrorLabel::FrameViolation},
      {FaultKind::CorruptExtraction, ErrorLabel::ExtractionError},
  };
  int classified = 0;
  for (const auto& [fault, label] : table) {
    SymbolicMockReasoner mock(registry, fault);
    for (const auto& inst : targets) {
      CAPTURE(inst.question_id);
      CAPTURE(error_label_name(label));
      PipelineRun run = run_prorac(inst.task(), registry, cfg, mock);
      REQUIRE(classify_error(run, inst, registry) == label);
      ++classified;
    }
  }
  REQUIRE(classified == 40);
  pass("40 fault-injected runs map onto the four error labels");
}

TEST_CASE("criterion 09: vote and rounding arithmetic match brute force") {
  // every 3^5 pattern over {true, false, unparseable}
  for (int code = 0; code < 243; ++code) {
    int c = code;
    std::vector<std::string> parsed;
    int trues = 0, falses = 0;
    for (int i = 0; i < 5; ++i) {
      switch (c % 3) {
        case 0: parsed.push_back("true"); ++trues; break;
        case 1: parsed.push_back("false"); ++falses; break;
        default: break;  // unparseable samples never reach the vote
      }
      c /= 3;
    }
    if (parsed.empty()) {
      REQUIRE_THROWS_AS(majority_vote(parsed), AnswerParseError);
      continue;
    }
    // "false" < "true", so false wins ties
    std::string expected = trues > falses ? "true" : "false";
    REQUIRE(majority_vote(parsed) == expected);
  }

  // exact half-up rounding for every cell size up to 60
  for (int total = 1; total <= 60; ++total) {
    for (int correct = 0; correct <= total; ++correct) {
      long long scaled = (20000LL * correct + total) / (2LL * total);
      char buf[16];
      std::snprintf(buf, sizeof buf, "%lld.%02lld", scaled / 100,
                    scaled % 100);
      REQUIRE(accuracy_percent(correct, total) == std::string(buf));
    }
  }
  REQUIRE(accuracy_percent(40, 45) == "88.89");
  pass("majority vote (243 patterns) and accuracy rounding (all c/t <= 60) "
       "match brute force");
}

TEST_CASE("criterion 10: replayed runs are byte-identical") {
  DomainRegistry registry = testutil::full_registry();
  auto instances = all_fixture_instances(registry);
  PipelineConfig cfg;

  auto base = std::filesystem::temp_directory_path() /
              ("prorac-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(base);
  auto cache_dir = base / "cache";

  auto read_all = [](const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      std::ifstream in(e.path());
      std::ostringstream os;
      os << in.rdbuf();
      files[e.path().filename().string()] = os.str();
    }
    return files;
  };

  RunSuiteOptions rec_opts;
  rec_opts.record_dir = (base / "run-a").string();
  {
    CacheReasoner recording(cache_dir, CacheMode::Record,
                            std::make_shared<SymbolicMockReasoner>(registry));
    run_suite(instances, MethodKind::ProRAC, registry, cfg, recording,
              rec_opts);
  }

  RunSuiteOptions rep1;
  rep1.record_dir = (base / "run-b").string();
  RunSuiteOptions rep2;
  rep2.record_dir = (base / "run-c").string();
  {
    CacheReasoner replay(cache_dir, CacheMode::Replay);
    run_suite(instances, MethodKind::ProRAC, registry, cfg, replay, rep1);
  }
  {
    CacheReasoner replay(cache_dir, CacheMode::Replay);
    run_suite(instances, MethodKind::ProRAC, registry, cfg, replay, rep2);
  }

  auto a = read_all(base / "run-a");
  auto b = read_all(base / "run-b");
  auto c = read_all(base / "run-c");
  REQUIRE(a.size() == instances.size());
  REQUIRE(a == b);
  REQUIRE(b == c);

  // replay outside the recorded set misses loudly
  {
    CacheReasoner replay(cache_dir, CacheMode::Replay);
    ReasonerRequest unknown;
    unknown.messages = {{"user", "a prompt nobody recorded"}};
    REQUIRE_THROWS_AS(replay.complete(unknown), ReplayMiss);
  }
  std::filesystem::remove_all(base);
  pass("record/replay reproduces all " + std::to_string(instances.size()) +
       " run records byte-for-byte");
}
