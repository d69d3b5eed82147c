#include "doctest.h"
#include "strelgen/metrics.hpp"
#include "support/builders.hpp"

using namespace strelgen;
using testsupport::make_trace;

TEST_CASE("two parallel agents at half a meter") {
  Trace tr = make_trace(0.5, {"car"},
                        {{0, "car", {{0, 0, 1, 0, 0}, {0.5, 0, 1, 0, 0}}},
                         {1, "car", {{0, 0.5, 1, 0, 0}, {0.5, 0.5, 1, 0, 0}}}});
  MetricsReport r = compute_metrics(tr);
  CHECK(r.min_pairwise_distance == 0.5);
  CHECK(r.potential_collisions == 2);
  CHECK(r.threshold == 0.9);
}

TEST_CASE("threshold comparison is strict") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}}, {1, "car", {{0.9, 0, 0, 0, 0}}}});
  MetricsReport at = compute_metrics(tr, 0.9);
  CHECK(at.min_pairwise_distance == 0.9);
  CHECK(at.potential_collisions == 0);
  MetricsReport above = compute_metrics(tr, 0.91);
  CHECK(above.potential_collisions == 2);
}

TEST_CASE("distant third agent stays out of the count") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}},
                         {1, "car", {{0.5, 0, 0, 0, 0}}},
                         {2, "car", {{50, 0, 0, 0, 0}}}});
  MetricsReport r = compute_metrics(tr);
  CHECK(r.potential_collisions == 2);
  CHECK(r.min_pairwise_distance == 0.5);
}

TEST_CASE("closest approach is tracked over time") {
  // Two agents converge to 0.3 at the middle step and separate again.
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}},
                         {1, "car", {{2, 0, 0, 0, 0}, {0.3, 0, 0, 0, 0}, {2, 0, 0, 0, 0}}}});
  MetricsReport r = compute_metrics(tr);
  CHECK(r.min_pairwise_distance == doctest::Approx(0.3));
  CHECK(r.potential_collisions == 2);
}

TEST_CASE("fewer than two agents yields an infinite closest approach") {
  Trace tr = make_trace(1.0, {"car"}, {{0, "car", {{0, 0, 0, 0, 0}}}});
  MetricsReport r = compute_metrics(tr);
  CHECK(r.min_pairwise_distance == kInf);
  CHECK(r.potential_collisions == 0);
  std::string j = metrics_to_json_text(r);
  CHECK(j.find("\"inf\"") != std::string::npos);
}

TEST_CASE("json report carries the numbers") {
  Trace tr = make_trace(1.0, {"car"},
                        {{0, "car", {{0, 0, 0, 0, 0}}}, {1, "car", {{0.5, 0, 0, 0, 0}}}});
  std::string j = metrics_to_json_text(compute_metrics(tr));
  CHECK(j.find("\"min_pairwise_distance\"") != std::string::npos);
  CHECK(j.find("\"potential_collisions\"") != std::string::npos);
  CHECK(j.find("\"threshold\"") != std::string::npos);
  CHECK(j.find("0.5") != std::string::npos);
}
