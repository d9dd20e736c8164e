#include "hypdisk/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "hypdisk/selfmap.hpp"
#include "hypdisk/verifiers.hpp"
#include "support.hpp"

using namespace hypdisk;

TEST_CASE("min and max agree between serial and parallel paths") {
  const std::size_t n = 100003;
  auto fn = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)) * std::cos(0.37 * static_cast<double>(i)); };
  const Extremum a = min_over(n, fn, Execution::serial), b = min_over(n, fn, Execution::parallel);
  CHECK(a.value == b.value);
  CHECK(a.index == b.index);
  const Extremum c = max_over(n, fn, Execution::serial), d = max_over(n, fn, Execution::parallel);
  CHECK(c.value == d.value);
  CHECK(c.index == d.index);
}

TEST_CASE("ties resolve to the smallest index") {
  auto flat = [](std::size_t i) { return i % 7 == 3 ? -1.0 : 0.0; };
  CHECK(min_over(1000, flat, Execution::parallel).index == 3);
  CHECK(min_over(1000, flat, Execution::serial).index == 3);
}

TEST_CASE("NaN and exceptions surface as the worst sample") {
  auto fn = [](std::size_t i) {
    if (i == 500) throw std::runtime_error("boom");
    return 1.0;
  };
  const Extremum e = min_over(1000, fn, Execution::parallel);
  CHECK(std::isnan(e.value));
  CHECK(e.index == 500);
  CHECK(std::isnan(max_over(1000, fn, Execution::parallel).value));
}

TEST_CASE("empty sweep") {
  const Extremum e = min_over(0, [](std::size_t) { return 0.0; });
  CHECK(std::isinf(e.value));
  CHECK(e.index == 0);
}

TEST_CASE("tabulate rethrows the lowest-index failure") {
  auto fn = [](std::size_t i) {
    if (i == 77 || i == 900) throw std::out_of_range(std::to_string(i));
    return static_cast<double>(i);
  };
  try {
    tabulate<double>(1000, fn, Execution::parallel);
    FAIL("expected an exception");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()) == "77");
  }
  const auto v = tabulate<double>(1000, [](std::size_t i) { return 2.0 * i; }, Execution::parallel);
  CHECK(v[999] == 1998.0);
}

TEST_CASE("verifier results do not depend on the execution mode") {
  const SelfMap f = catalog::cubed_blaschke();
  const GridOptions s{4096, 42, Execution::serial}, p{4096, 42, Execution::parallel};
  const VerificationReport a = check_schwarz_pick(f, s), b = check_schwarz_pick(f, p);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.witness == b.witness);
  const ValidationReport va = validate_selfmap(catalog::cubic_tangent(), 8192, Execution::serial);
  const ValidationReport vb = validate_selfmap(catalog::cubic_tangent(), 8192, Execution::parallel);
  CHECK(va.max_modulus == vb.max_modulus);
  CHECK(va.witness == vb.witness);
}
