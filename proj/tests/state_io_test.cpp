/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cstdlib>

#include "cop/coherence.hpp"
#include "cop/parallel.hpp"
#include "cop/state_io.hpp"
#include "cop/verify.hpp"

using namespace cop;
using nlohmann::json;

TEST_CASE("density and pure state round trips") {
  // one structural invariant each; exhaustive matrices add nothing
  const DensityOperator rho = random_state(3, 2, 42);
  const DensityOperator rho2 =
      std::get<DensityOperator>(load_state(to_json(rho)));
  CHECK((rho.matrix() - rho2.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  Vector v(4);
  v << 0.5, cplx(0.0, 0.5), -0.5, cplx(0.5, 0.0);
  const PureState psi(v, {2, 2});
  const PureState psi2 = std::get<PureState>(load_state(to_json(psi)));
  CHECK((psi.vector() - psi2.vector()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(psi2.factor_dims() == std::vector<int>{2, 2});
}

TEST_CASE("readers symmetrize small hermiticity violations") {
  json j = to_json(random_state(2, 2, 7));
  // perturb one off-diagonal by 5e-11: inside the 1e-10 ingestion tolerance
  j["matrix"][0][1][0] = j["matrix"][0][1][0].get<double>() + 5e-11;
  const auto rho = std::get<DensityOperator>(load_state(j));
  CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() <
        1e-18);

  j["matrix"][0][1][0] = j["matrix"][0][1][0].get<double>() + 1e-8;
  CHECK_THROWS_AS(load_state(j), validation_error);
}

TEST_CASE("malformed fields report their path") {
  json j = {{"dim", 2},
            {"matrix", json::array({json::array({json::array({1.0, 0.0}),
                                                 json::array({0.0, 0.0})}),
                                    json::array({json::array({0.0, 0.0}),
                                                 "oops"})})}};
  try {
    load_state(j);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("matrix[1][1]") != std::string::npos);
  }

  CHECK_THROWS_AS(load_state(json{{"dim", 2}}), validation_error);
  CHECK_THROWS_AS(load_state(json{{"matrix", json::array()}}),
                  validation_error);
}

TEST_CASE("channel schema round trip") {
  const KrausChannel gio = make_gio_channel(3, 2, 11);
  const json j = to_json(gio);
  CHECK(j.at("class") == "genuinely_incoherent");
  const KrausChannel back = load_channel(j);
  CHECK(back.class_tag() == ChannelClass::genuinely_incoherent);
  REQUIRE(back.operators().size() == 2);
  for (std::size_t n = 0; n < 2; ++n)
    CHECK((back.operators()[n] - gio.operators()[n]).cwiseAbs().maxCoeff() <
          1e-15);

  // the "gio" shorthand is accepted on input
  json shorthand = j;
  shorthand["class"] = "gio";
  CHECK(load_channel(shorthand).class_tag() ==
        ChannelClass::genuinely_incoherent);

  json bad = j;
  bad["kraus"][0][0][0] = json::array({1.0, 0.0, 0.0});
  CHECK_THROWS_AS(load_channel(bad), validation_error);
}

TEST_CASE("results are independent of the worker thread count") {
  SuiteConfig cfg;
  cfg.props = {"P1", "P4"};
  cfg.dim_samples = {{2, 6}};
  cfg.seed = 19;
  cfg.opt.restarts = 8;

  ::setenv("COP_THREADS", "1", 1);
  const std::string serial = to_json(run_suite(cfg)).dump();
  ::setenv("COP_THREADS", "3", 1);
  const std::string threaded = to_json(run_suite(cfg)).dump();
  ::unsetenv("COP_THREADS");
  CHECK(serial == threaded);
  CHECK(worker_threads() >= 1);
}
