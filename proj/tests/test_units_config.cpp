#include <doctest.h>

#include <cmath>

#include "densewlan/config.hpp"
#include "densewlan/rng.hpp"
#include "densewlan/units.hpp"

using namespace dw;

TEST_CASE("decibel conversions") {
    CHECK(db_to_linear({0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(db_to_linear({-100.0}) == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(db_to_linear({20.0}) == doctest::Approx(100.0).epsilon(1e-12)); // 20 dBm = 100 mW
    CHECK(dbm_to_mw(-70.0) == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("db round trip is identity over [-200, 60]") {
    Rng rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double x = rng.uniform(-200.0, 60.0);
        const double back = linear_to_db(db_to_linear({x})).value;
        CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("validate accepts the baseline configuration") {
    NetworkConfig cfg; // defaults are the baseline operating point
    cfg.lambda_s = 0.5;
    cfg.lambda_a = 0.3;
    const NetworkConfig ok = validate(cfg);
    CHECK(ok.alpha == cfg.alpha);
    // idempotent
    const NetworkConfig again = validate(ok);
    CHECK(again.lambda_s == ok.lambda_s);
    CHECK(again.seed == ok.seed);
}

TEST_CASE("validate names the violated field") {
    NetworkConfig cfg;
    cfg.alpha = 1.5;
    CHECK_THROWS_WITH_AS(validate(cfg), "alpha: alpha must exceed 2", ConfigError);

    NetworkConfig cfg2;
    cfg2.lambda_s = 0.0;
    try {
        validate(cfg2);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "lambda_s");
        CHECK(std::string(e.what()).find("density must be positive") != std::string::npos);
    }

    NetworkConfig cfg3;
    cfg3.window = {10.0, 0.0};
    CHECK_THROWS_AS(validate(cfg3), ConfigError);

    NetworkConfig cfg4;
    cfg4.pcs = 0.0;
    CHECK_THROWS_AS(validate(cfg4), ConfigError);

    NetworkConfig cfg5;
    cfg5.m_tx = 0;
    CHECK_THROWS_AS(validate(cfg5), ConfigError);
}
