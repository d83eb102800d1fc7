#include <doctest.h>

#include <sstream>

#include "circum/cloud_io.hpp"
#include "circum/norm_config.hpp"
#include "circum/report.hpp"
#include "test_support.hpp"

using namespace circum;
using namespace circum::testing;

TEST_CASE("norm config parses every kind") {
  const NormSpec pinf = parse_norm_config(
      json::parse(R"({"kind":"pnorm","dim":2,"p":"inf"})"));
  CHECK(pinf.kind() == NormKind::PNorm);
  CHECK(std::isinf(pinf.exponent()));
  CHECK(norm(pinf, vec2(0.25, -1.0)) == 1.0);

  const NormSpec wp = parse_norm_config(json::parse(
      R"({"kind":"weighted-pnorm","dim":3,"p":1.5,"weights":[1,2,3]})"));
  CHECK(wp.kind() == NormKind::WeightedPNorm);
  CHECK(wp.dim() == 3);

  const NormSpec quad = parse_norm_config(json::parse(
      R"({"kind":"quadratic","matrix":[[2,0.5],[0.5,1]]})"));
  CHECK(quad.kind() == NormKind::Quadratic);

  const NormSpec poly = parse_norm_config(json::parse(
      R"({"kind":"polyhedral","dim":2,"vertices":[[1,0],[0,1],[-1,0],[0,-1]]})"));
  CHECK(poly.kind() == NormKind::Polyhedral);
  CHECK(rel_close(norm(poly, vec2(0.5, 0.5)), 1.0, 1e-12));
}

TEST_CASE("norm config failures carry the offending field") {
  const auto field_of = [](const char* text) {
    try {
      parse_norm_config(json::parse(text));
      return std::string("<no error>");
    } catch (const ConfigError& e) {
      return e.field();
    }
  };
  CHECK(field_of(R"({"dim":2,"p":2})") == "kind");
  CHECK(field_of(R"({"kind":"pnorm","dim":2})") == "p");
  CHECK(field_of(R"({"kind":"pnorm","dim":2,"p":0.5})") == "p");
  CHECK(field_of(R"({"kind":"pnorm","dim":2,"p":"huge"})") == "p");
  CHECK(field_of(R"({"kind":"pnorm","p":2})") == "dim");
  CHECK(field_of(R"({"kind":"pnorm","dim":0,"p":2})") == "dim");
  CHECK(field_of(R"({"kind":"banach","dim":2,"p":2})") == "kind");
  CHECK(field_of(R"({"kind":"weighted-pnorm","p":2,"weights":[1,-1]})") ==
        "weighted-pnorm");
  CHECK(field_of(R"({"kind":"quadratic","matrix":[[1,2],[2,1]]})") ==
        "quadratic");
  CHECK(field_of(R"({"kind":"quadratic","matrix":[[1,0],[0]]})") ==
        "matrix[1]");
}

TEST_CASE("norm config round-trips through its JSON echo") {
  for (const char* text :
       {R"({"kind":"pnorm","dim":3,"p":2.5})",
        R"({"kind":"pnorm","dim":2,"p":"inf"})",
        R"({"kind":"weighted-pnorm","dim":2,"p":1,"weights":[2,3]})",
        R"({"kind":"quadratic","dim":2,"matrix":[[2,0.5],[0.5,1]]})",
        R"({"kind":"polyhedral","dim":2,"vertices":[[1,1],[-1,1],[-1,-1],[1,-1]]})"}) {
    const NormSpec spec = parse_norm_config(json::parse(text));
    const ordered_json echo = norm_config_to_json(spec);
    const NormSpec again = parse_norm_config(json::parse(echo.dump()));
    CHECK(again.kind() == spec.kind());
    CHECK(again.dim() == spec.dim());
    RandomStream rng(61);
    for (int i = 0; i < 50; ++i) {
      const Vector x = rng.uniform_vector(spec.dim(), -2.0, 2.0);
      CHECK(norm(again, x) == norm(spec, x));
    }
  }
}

TEST_CASE("radius encoding uses inf as the only sentinel") {
  CHECK(radius_to_json(ExtendedRadius::infinite()) == ordered_json("inf"));
  CHECK(radius_to_json(ExtendedRadius::finite(2.5)) == ordered_json(2.5));
  CHECK(radius_from_json(ordered_json("inf")).is_infinite());
  CHECK(radius_from_json(ordered_json(2.5)).value() == 2.5);
  CHECK_THROWS_AS(radius_from_json(ordered_json("infinity")), ConfigError);
}

TEST_CASE("classification report round-trips byte-identically") {
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  const ClassificationReport report = classify(linf, Vector::Zero(2), 1.0);
  const ordered_json doc = classification_to_json(linf, report);
  const std::string once = to_canonical_string(doc);
  const ordered_json parsed = ordered_json::parse(once);
  CHECK(to_canonical_string(parsed) == once);

  // Identical runs serialize identically.
  const ClassificationReport again = classify(linf, Vector::Zero(2), 1.0);
  CHECK(to_canonical_string(classification_to_json(linf, again)) == once);
}

TEST_CASE("cloud text format") {
  std::istringstream in(
      "# comment line\n"
      "0 0 1.0\n"
      "1 0 2.0  # trailing comment\n"
      "\n"
      "0 1 0.5\n");
  const CloudTable with_w = parse_cloud_text(in, 2);
  REQUIRE(with_w.points.size() == 3);
  CHECK(with_w.weights.size() == 3);
  CHECK(with_w.weights[1] == 2.0);
  CHECK(with_w.points[2][1] == 1.0);

  std::istringstream bare("1 2 3\n4 5 6\n");
  const CloudTable inferred = parse_cloud_text(bare);
  CHECK(inferred.dim == 3);
  CHECK(inferred.weights.size() == 0);

  std::istringstream mixed("1 2\n1 2 3\n");
  CHECK_THROWS_AS(parse_cloud_text(mixed), ConfigError);
  std::istringstream bad_tok("1 x\n");
  CHECK_THROWS_AS(parse_cloud_text(bad_tok, 2), ConfigError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_cloud_text(empty), ConfigError);
}

TEST_CASE("matrix text format") {
  std::istringstream in(
      "# 4x4\n"
      "0 1 1 1\n"
      "1 0 1 1\n"
      "1 1 0 2\n"
      "1 1 2 0\n");
  const Matrix m = parse_matrix_text(in);
  REQUIRE(m.rows() == 4);
  CHECK(m(2, 3) == 2.0);
  std::istringstream rect("1 2 3\n4 5 6\n");
  CHECK_THROWS_AS(parse_matrix_text(rect), ConfigError);
}

TEST_CASE("verdict names and exit codes") {
  CHECK(verdict_name(Verdict::InnerProduct) == "inner_product");
  CHECK(verdict_name(Verdict::NotInnerProduct) == "not_inner_product");
  CHECK(verdict_name(Verdict::Inconclusive) == "inconclusive");
  CHECK(verdict_exit_code(Verdict::InnerProduct) == 0);
  CHECK(verdict_exit_code(Verdict::NotInnerProduct) == 1);
  CHECK(verdict_exit_code(Verdict::Inconclusive) == 2);
}
