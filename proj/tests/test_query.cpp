#include "doctest.h"
#include "helpers.hpp"
#include "prorac/query.hpp"

using namespace prorac;
using testutil::load_domain;
using testutil::read_fixture;

namespace {

struct Fixture {
  Domain d = testutil::load_domain("blocksworld");
  Problem p = parse_problem(testutil::read_fixture("bw-p01.pddl"), d);

  Trace run(std::initializer_list<const char*> terms) {
    std::vector<GroundAction> plan;
    for (const char* t : terms) plan.push_back(parse_action_term(t, d, p.objects));
    return progress(p.init, plan);
  }

  std::vector<Literal> lits(std::initializer_list<const char*> texts) {
    std::vector<Literal> out;
    for (const char* t : texts) out.push_back(parse_literal_text(t, d));
    return out;
  }
};

}  // namespace

TEST_CASE("answer text round-trips") {
  CHECK(answer_text(Answer::True) == "true");
  CHECK(answer_text(Answer::False) == "false");
  CHECK(answer_text(Answer::Plan) == "plan");
  CHECK(answer_text(Answer::Applicable) == "applicable");
  CHECK(answer_text(Answer::Invalid) == "invalid");
  for (Answer a : {Answer::True, Answer::False, Answer::Plan,
                   Answer::Applicable, Answer::Invalid}) {
    auto back = answer_from_text(answer_text(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK_FALSE(answer_from_text("maybe").has_value());
  CHECK_FALSE(answer_from_text("").has_value());
}

TEST_CASE("projection checks the final state") {
  Fixture fx;
  Trace t = fx.run({"(pickup a)", "(stack a b)"});
  CHECK(eval_projection(t, fx.lits({"(on a b)"})).answer == Answer::True);
  CHECK(eval_projection(t, fx.lits({"(on a b)", "(not (clear b))"})).answer ==
        Answer::True);
  Verdict v = eval_projection(t, fx.lits({"(on a b)", "(clear b)"}));
  CHECK(v.answer == Answer::False);
  REQUIRE(v.failing_literals.size() == 1);
  CHECK(v.failing_literals[0].text() == "(clear b)");
  CHECK_FALSE(v.is_affirmative());
}

TEST_CASE("projection over a failed trace is False regardless of the query") {
  Fixture fx;
  Trace t = fx.run({"(pickup a)", "(pickup b)"});
  REQUIRE(t.failure_index.has_value());
  // (holding a) held when progression stopped, but no final state exists
  Verdict v = eval_projection(t, fx.lits({"(holding a)"}));
  CHECK(v.answer == Answer::False);
  CHECK(v.failure_index == t.failure_index);
}

TEST_CASE("executability is failure-freeness") {
  Fixture fx;
  CHECK(eval_executability(fx.run({"(pickup a)", "(stack a b)"})).answer ==
        Answer::True);
  CHECK(eval_executability(fx.run({})).answer == Answer::True);
  Verdict v = eval_executability(fx.run({"(pickup a)", "(pickup b)"}));
  CHECK(v.answer == Answer::False);
  REQUIRE(v.failure_index.has_value());
  CHECK(*v.failure_index == 1);
}

TEST_CASE("plan verification conjoins executability and the goal") {
  Fixture fx;
  Trace good = fx.run({"(pickup a)", "(stack a b)"});
  CHECK(eval_plan_verification(good, fx.lits({"(on a b)"})).answer ==
        Answer::True);
  CHECK(eval_plan_verification(good, fx.lits({"(on b a)"})).answer ==
        Answer::False);
  Trace bad = fx.run({"(pickup a)", "(pickup b)"});
  CHECK(eval_plan_verification(bad, fx.lits({"(holding a)"})).answer ==
        Answer::False);
}

TEST_CASE("classify_sequence is three-way") {
  Fixture fx;
  Trace good = fx.run({"(pickup a)", "(stack a b)"});
  CHECK(classify_sequence(good, fx.lits({"(on a b)"})).answer == Answer::Plan);
  CHECK(classify_sequence(good, fx.lits({"(on b a)"})).answer ==
        Answer::Applicable);
  Trace bad = fx.run({"(pickup a)", "(pickup b)"});
  CHECK(classify_sequence(bad, fx.lits({"(on a b)"})).answer ==
        Answer::Invalid);
  CHECK(classify_sequence(good, fx.lits({"(on a b)"})).is_affirmative());
}
