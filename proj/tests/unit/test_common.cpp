#include "doctest.h"

#include <set>

#include "orchestra/common.hpp"
#include "orchestra/executors.hpp"

using namespace orchestra;

TEST_CASE("stable_hash is FNV-1a")
{
    // published FNV-1a 64 test vectors
    CHECK(stable_hash("") == 0xcbf29ce484222325ULL);
    CHECK(stable_hash("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(stable_hash("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("mix_seed spreads neighbouring inputs")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i)
        seen.insert(mix_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(mix_seed(1, "x") == mix_seed(1, "x"));
    CHECK(mix_seed(1, "x") != mix_seed(2, "x"));
}

TEST_CASE("unit_uniform stays in [0,1)")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
        double u = unit_uniform(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < 1000; ++i)
        REQUIRE(uniform_index(rng, 7) < 7);
}

TEST_CASE("sha256 of abc")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("normalize_text folds case and whitespace")
{
    CHECK(normalize_text("  Hello\t  WORLD \n") == "hello world");
    CHECK(normalize_text("") == "");
}

TEST_CASE("calculator arithmetic")
{
    CHECK(evaluate_expression("2+3") == 5.0);
    CHECK(evaluate_expression("2 + 3 * 4") == 14.0);
    CHECK(evaluate_expression("(2 + 3) * 4") == 20.0);
    CHECK(evaluate_expression("-3 + 10 / 4") == doctest::Approx(-0.5));
    CHECK_THROWS_AS(evaluate_expression("1/0"), Error);
    CHECK_THROWS_AS(evaluate_expression("2+"), Error);
    CHECK(format_number(5.0) == "5");
    CHECK(format_number(0.25) == "0.25");
}
