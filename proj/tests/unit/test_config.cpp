#include <functional>

#include "avk/config.hpp"
#include "avk/error.hpp"
#include "doctest.h"

using namespace avk;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("config round trip") {
  for (const auto& cfg : {SimpleLieAlgebra::sl2_config(), SimpleLieAlgebra::sl3_config()}) {
    const std::string text = algebra_config_to_json(cfg);
    const AlgebraConfig back = parse_algebra_config(text);
    CHECK(algebra_config_to_json(back) == text);
    const SimpleLieAlgebra g(back), h(cfg);
    REQUIRE(g.dim() == h.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        CHECK(g.bracket(g.unit(i), g.unit(j)) == h.bracket(h.unit(i), h.unit(j)));
        CHECK(g.form(i, j) == h.form(i, j));
      }
  }
}

TEST_CASE("config sources and errors") {
  CHECK(load_algebra_config("sl3").basis.size() == 8);
  CHECK(code_of([] { load_algebra_config("/nonexistent/sl2.json"); }) == ErrorCode::kIOFailure);
  CHECK(code_of([] { parse_algebra_config("{\"name\": "); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_algebra_config("{\"name\": \"x\"}"); }) == ErrorCode::kParse);
}
