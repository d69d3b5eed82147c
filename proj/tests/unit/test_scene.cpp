#include <cmath>
#include <cstring>

#include "doctest.h"
#include "strelgen/scene.hpp"
#include "support/builders.hpp"

using namespace strelgen;
using testsupport::make_trace;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool has_edge(const GraphSnapshot& g, AgentId from, AgentId to, double* w = nullptr) {
  for (const auto& [n, weight] : g.neighbors(from))
    if (n == to) {
      if (w) *w = weight;
      return true;
    }
  return false;
}
}  // namespace

TEST_CASE("trace json round trip is exact") {
  Trace tr = make_trace(
      0.1, {"car", "ped"},
      {{0, "car", {{1.25, -2.5, 0.75, 0.0, 0.5}, {1.325, -2.5, 0.75, 0.0, 0.5}}},
       {3, "ped", {{0.1, 0.2, -0.3, 0.4, -1.5}, {0.07, 0.24, -0.3, 0.4, -1.5}}}});
  Trace back = trace_from_json_text(trace_to_json_text(tr));
  REQUIRE(back.agents.size() == 2);
  CHECK(back.dt == tr.dt);
  CHECK(back.horizon == tr.horizon);
  CHECK(back.colors == tr.colors);
  for (size_t a = 0; a < tr.agents.size(); ++a) {
    CHECK(back.agents[a].id == tr.agents[a].id);
    CHECK(back.agents[a].color == tr.agents[a].color);
    REQUIRE(back.agents[a].states.size() == tr.agents[a].states.size());
    for (size_t t = 0; t < tr.agents[a].states.size(); ++t) {
      const AgentState &p = tr.agents[a].states[t], &q = back.agents[a].states[t];
      CHECK(p.x == q.x);
      CHECK(p.y == q.y);
      CHECK(p.vx == q.vx);
      CHECK(p.vy == q.vy);
      CHECK(p.heading == q.heading);
    }
  }
}

TEST_CASE("trace loader rejects malformed scenes") {
  SUBCASE("state count mismatch") {
    std::string j = R"({"meta":{"dt":0.5,"horizon":3},"colors":["car"],
      "agents":[{"id":0,"color":"car","states":[{"x":0,"y":0,"vx":0,"vy":0,"heading":0}]}]})";
    CHECK_THROWS_WITH_AS(trace_from_json_text(j),
                         doctest::Contains("state count mismatch for agent 0"),
                         IoError);
  }
  SUBCASE("color outside the universe") {
    std::string j = R"({"meta":{"dt":0.5,"horizon":1},"colors":["car"],
      "agents":[{"id":0,"color":"bike","states":[{"x":0,"y":0,"vx":0,"vy":0,"heading":0}]}]})";
    CHECK_THROWS_WITH_AS(trace_from_json_text(j), doctest::Contains("'bike'"),
                         IoError);
  }
  SUBCASE("duplicate agent id") {
    std::string j = R"({"meta":{"dt":0.5,"horizon":1},"colors":["car"],
      "agents":[{"id":0,"color":"car","states":[{"x":0,"y":0,"vx":0,"vy":0,"heading":0}]},
                {"id":0,"color":"car","states":[{"x":1,"y":0,"vx":0,"vy":0,"heading":0}]}]})";
    CHECK_THROWS_WITH_AS(trace_from_json_text(j),
                         doctest::Contains("duplicate agent id"), IoError);
  }
  SUBCASE("invalid json mentions the origin") {
    CHECK_THROWS_WITH_AS(trace_from_json_text("{oops", "broken.json"),
                         doctest::Contains("broken.json"), IoError);
  }
}

TEST_CASE("graph config json round trip") {
  GraphConfig cfg;
  cfg.radius = 7.5;
  cfg.metric = Metric::Front;
  cfg.front_half_angle = 0.9;
  cfg.min_edge_weight = 1e-5;
  GraphConfig back = graph_config_from_json_text(graph_config_to_json_text(cfg));
  CHECK(back.radius == cfg.radius);
  CHECK(back.metric == cfg.metric);
  CHECK(back.front_half_angle == cfg.front_half_angle);
  CHECK(back.min_edge_weight == cfg.min_edge_weight);
}

TEST_CASE("euclid graph connects centers within the radius") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}},
                         {1, "car", {{3, 0, 0, 0, 0}}},
                         {2, "car", {{3, 4, 0, 0, 0}}}});
  GraphConfig cfg;
  cfg.radius = 4.5;
  GraphSnapshot g = build_graph(tr, cfg, 0);
  double w = 0;
  CHECK(has_edge(g, 0, 1, &w));
  CHECK(w == doctest::Approx(3.0));
  CHECK(has_edge(g, 1, 2, &w));
  CHECK(w == doctest::Approx(4.0));
  CHECK_FALSE(has_edge(g, 0, 2, nullptr));  // distance 5 > radius
  CHECK(has_edge(g, 1, 0, nullptr));        // symmetric for euclid
}

TEST_CASE("hops metric weights every edge at one") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}}, {1, "car", {{2.5, 0, 0, 0, 0}}}});
  GraphConfig cfg;
  cfg.radius = 3.0;
  cfg.metric = Metric::Hops;
  GraphSnapshot g = build_graph(tr, cfg, 0);
  double w = 0;
  REQUIRE(has_edge(g, 0, 1, &w));
  CHECK(w == 1.0);
}

TEST_CASE("front metric keeps only edges inside the forward cone") {
  // Agent 0 heads east; agent 1 is ahead, agent 2 behind.
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 1, 0, 0}}},
                         {1, "car", {{4, 0.5, 0, 0, 0}}},
                         {2, "car", {{-4, 0, 0, 0, 0}}}});
  GraphConfig cfg;
  cfg.radius = 6.0;
  cfg.metric = Metric::Front;
  cfg.front_half_angle = kPi / 3;
  GraphSnapshot g = build_graph(tr, cfg, 0);
  CHECK(has_edge(g, 0, 1, nullptr));
  CHECK_FALSE(has_edge(g, 0, 2, nullptr));
  // Agent 2 faces east toward agent 0, so the reverse edge exists even
  // though agent 0 cannot see agent 2: front is directional.
  CHECK(has_edge(g, 2, 0, nullptr));
}

TEST_CASE("edge weights are clamped away from zero") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{1, 1, 0, 0, 0}}}, {1, "car", {{1, 1, 0, 0, 0}}}});
  GraphConfig cfg;
  cfg.radius = 2.0;
  GraphSnapshot g = build_graph(tr, cfg, 0);
  double w = 0;
  REQUIRE(has_edge(g, 0, 1, &w));
  CHECK(w == cfg.min_edge_weight);
}

TEST_CASE("shortest distances on a chain") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}},
                         {1, "car", {{2, 0, 0, 0, 0}}},
                         {2, "car", {{4, 0, 0, 0, 0}}},
                         {3, "car", {{40, 0, 0, 0, 0}}}});
  GraphConfig cfg;
  cfg.radius = 2.5;
  GraphSnapshot g = build_graph(tr, cfg, 0);
  CHECK(shortest_distance(g, 0, 2) == doctest::Approx(4.0));
  CHECK(shortest_distance(g, 0, 0) == 0.0);
  CHECK(shortest_distance(g, 0, 3) == kInf);
  auto d = shortest_distances(g, 0);
  CHECK(d.at(1) == doctest::Approx(2.0));
  CHECK(d.at(2) == doctest::Approx(4.0));
  CHECK(d.at(3) == kInf);
}

TEST_CASE("derived signals") {
  Trace tr = make_trace(0.5, {"car"},
                        {{0, "car", {{1, 2, 3, 4, 0.5}, {1, 2, 3, 4, 1.1}}}});
  CHECK(derived_signal(tr, 0, SignalKind::X, 0) == 1.0);
  CHECK(derived_signal(tr, 0, SignalKind::Y, 0) == 2.0);
  CHECK(derived_signal(tr, 0, SignalKind::Vx, 0) == 3.0);
  CHECK(derived_signal(tr, 0, SignalKind::Vy, 0) == 4.0);
  CHECK(derived_signal(tr, 0, SignalKind::Speed, 0) == doctest::Approx(5.0));
  CHECK(derived_signal(tr, 0, SignalKind::Heading, 1) == 1.1);
  // heading_change: |wrap(dh)| / dt, and zero at the first step.
  CHECK(derived_signal(tr, 0, SignalKind::HeadingChange, 0) == 0.0);
  CHECK(derived_signal(tr, 0, SignalKind::HeadingChange, 1) ==
        doctest::Approx(0.6 / 0.5));
}

TEST_CASE("heading change wraps across the pi boundary") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 3.0}, {0, 0, 0, 0, -3.0}}}});
  // Raw difference is -6.0; wrapped it is 2*pi - 6.0.
  CHECK(derived_signal(tr, 0, SignalKind::HeadingChange, 1) ==
        doctest::Approx(2 * kPi - 6.0));
}

TEST_CASE("metric and signal names round trip") {
  for (Metric m : {Metric::Euclid, Metric::Hops, Metric::Front})
    CHECK(metric_from_string(to_string(m)) == m);
  for (SignalKind s :
       {SignalKind::X, SignalKind::Y, SignalKind::Vx, SignalKind::Vy,
        SignalKind::Heading, SignalKind::Speed, SignalKind::HeadingChange})
    CHECK(signal_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(metric_from_string("manhattan"), Error);
  CHECK_THROWS_AS(signal_from_string("altitude"), Error);
}
