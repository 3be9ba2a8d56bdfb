// Microbenchmarks for the symbolic progression engine on a growing tower
// domain: n blocks stacked one by one, then unstacked again.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "prorac/parser.hpp"
#include "prorac/progression.hpp"

namespace {

using namespace prorac;

const char* kDomain = R"((define (domain blocksworld)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (holding ?x) (handempty))
  (:action pickup :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (holding ?x) (not (clear ?x)) (not (ontable ?x))
                 (not (handempty))))
  (:action putdown :parameters (?x)
    :precondition (and (holding ?x))
    :effect (and (ontable ?x) (clear ?x) (handempty) (not (holding ?x))))
  (:action stack :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (on ?x ?y) (clear ?x) (handempty)
                 (not (holding ?x)) (not (clear ?y))))
  (:action unstack :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y)
                 (not (on ?x ?y)) (not (clear ?x)) (not (handempty)))))
)";

struct TowerProblem {
  State init;
  std::vector<GroundAction> plan;
};

TowerProblem make_tower(const Domain& d, int blocks) {
  std::vector<std::string> names;
  for (int i = 0; i < blocks; ++i) names.push_back("b" + std::to_string(i));

  std::string init_text = "(handempty)";
  for (const auto& b : names) init_text += " (ontable " + b + ") (clear " + b + ")";

  std::map<Name, Name> objects;
  for (const auto& b : names) objects[Name(b)] = Name("object");

  TowerProblem p;
  p.init = parse_state_text(init_text, d);
  auto act = [&](const std::string& term) {
    p.plan.push_back(parse_action_term(term, d, objects));
  };
  for (int i = 1; i < blocks; ++i) {
    act("(pickup " + names[i] + ")");
    act("(stack " + names[i] + " " + names[i - 1] + ")");
  }
  for (int i = blocks - 1; i >= 1; --i) {
    act("(unstack " + names[i] + " " + names[i - 1] + ")");
    act("(putdown " + names[i] + ")");
  }
  return p;
}

void BM_Progress(benchmark::State& state) {
  Domain d = parse_domain(kDomain);
  TowerProblem p = make_tower(d, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Trace t = progress(p.init, p.plan);
    benchmark::DoNotOptimize(t.states.back());
    if (t.failure_index) state.SkipWithError("plan unexpectedly failed");
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(p.plan.size()));
}
BENCHMARK(BM_Progress)->Arg(4)->Arg(16)->Arg(64)->Arg(128);

void BM_ApplyAction(benchmark::State& state) {
  Domain d = parse_domain(kDomain);
  TowerProblem p = make_tower(d, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    State s = apply_action(p.init, p.plan[0]);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ApplyAction)->Arg(16)->Arg(128);

void BM_CanonicalText(benchmark::State& state) {
  Domain d = parse_domain(kDomain);
  TowerProblem p = make_tower(d, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::string text = p.init.canonical_text();
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_CanonicalText)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
