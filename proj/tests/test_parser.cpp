#include <catch2/catch_amalgamated.hpp>

#include "pact/pact.hpp"

TEST_CASE("placeholder test_parser") { SUCCEED(); }
