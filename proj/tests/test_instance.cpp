#include "derange/error.hpp"
#include "derange/instance.hpp"

#include <doctest.h>

#include <sstream>

using namespace derange;

namespace {

CostMatrix parse(const std::string& text, InstanceFormat f, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    return load_instance(in, f, warnings);
}

} // namespace

TEST_CASE("cost matrix validation") {
    CHECK_NOTHROW(CostMatrix(3, {0, 1, 2, 1, 0, 3, 2, 3, 0}));
    CHECK_THROWS_AS(CostMatrix(2, {0, 1, 1, 0}), SizeError);
    CHECK_THROWS_AS(CostMatrix(3, {0, 1, 2, 1, 0, 3, 2, 3}), SizeError);
    CHECK_THROWS_AS(CostMatrix(3, {0, 1, 2, 1, 0, 3, 2, 4, 0}), AsymmetryError);
    const Cost big = CostMatrix::max_abs_cost(3) + 1;
    CHECK_THROWS_AS(CostMatrix(3, {0, big, 2, big, 0, 3, 2, 3, 0}), RangeError);
    // The diagonal is never read, so it may hold anything.
    CHECK_NOTHROW(CostMatrix(3, {9, 1, 2, 1, -4, 3, 2, 3, 7}));
}

TEST_CASE("JSON instances") {
    const auto m = parse(R"({"n": 3, "costs": [[0,1,2],[1,0,3],[2,3,0]]})", InstanceFormat::json);
    CHECK(m.size() == 3);
    CHECK(m(0, 2) == 2);
    CHECK(m(2, 1) == 3);
    CHECK_THROWS_AS(parse(R"({"n": 3, "costs": [[0,1,2],[1,0,3]]})", InstanceFormat::json), ParseError);
    CHECK_THROWS_AS(parse(R"({"n": 3, "costs": [[0,1,2],[1,0,3],[2,3,0.5]]})", InstanceFormat::json), ParseError);
    CHECK_THROWS_AS(parse("{not json", InstanceFormat::json), ParseError);
    CHECK_THROWS_AS(parse(R"({"n": 3, "costs": [[0,1,2],[1,0,3],[2,9,0]]})", InstanceFormat::json), AsymmetryError);
}

TEST_CASE("serialize_instance round-trips") {
    const auto m = random_instance(7, -20, 20, 5);
    const auto back = parse(serialize_instance(m), InstanceFormat::json);
    CHECK(back == m);
}

TEST_CASE("TSPLIB explicit matrices") {
    const std::string full = "NAME: t\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
                             "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 4 5\n4 0 6\n5 6 0\nEOF\n";
    const auto a = parse(full, InstanceFormat::tsplib);
    CHECK(a(0, 1) == 4);
    CHECK(a(1, 2) == 6);

    const std::string upper = "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
                              "EDGE_WEIGHT_SECTION\n1 2 7\n3 8\n4\nEOF\n";
    const auto b = parse(upper, InstanceFormat::tsplib);
    CHECK(b(0, 3) == 7);
    CHECK(b(3, 1) == 8);
    CHECK(b(2, 3) == 4);

    CHECK_THROWS_AS(parse("TYPE: ATSP\nDIMENSION: 3\n", InstanceFormat::tsplib), ParseError);
    CHECK_THROWS_AS(parse("TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
                          "EDGE_WEIGHT_SECTION\n1 2 7\n3\nEOF\n",
                          InstanceFormat::tsplib),
                    ParseError);
}

TEST_CASE("TSPLIB EUC_2D rounds to the nearest integer") {
    const std::string text = "TYPE: TSP\nCOMMENT: three points\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
                             "NODE_COORD_SECTION\n1 0 0\n2 3 4\n3 1 1\nEOF\n";
    std::vector<std::string> warnings;
    const auto m = parse(text, InstanceFormat::tsplib, &warnings);
    CHECK(m(0, 1) == 5);
    CHECK(m(0, 2) == 1);   // sqrt(2) = 1.41
    CHECK(m(1, 2) == 4);   // sqrt(13) = 3.61
    CHECK(euc2d_distance(0, 0, 1.5, 2) == 3);   // 2.5 rounds up
}

TEST_CASE("unknown TSPLIB keywords produce warnings") {
    const std::string text = "TYPE: TSP\nDIMENSION: 3\nFOO: bar\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
                             "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 1\n1 0 1\n1 1 0\nEOF\n";
    std::vector<std::string> warnings;
    CHECK_NOTHROW(parse(text, InstanceFormat::tsplib, &warnings));
    CHECK(warnings.size() == 1);
}

TEST_CASE("random_instance is seeded, symmetric and in range") {
    const auto a = random_instance(12, -50, 100, 42);
    const auto b = random_instance(12, -50, 100, 42);
    const auto c = random_instance(12, -50, 100, 43);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (Vertex i = 0; i < 12; ++i) {
        for (Vertex j = 0; j < 12; ++j) {
            if (i == j) continue;
            CHECK(a(i, j) == a(j, i));
            CHECK(a(i, j) >= -50);
            CHECK(a(i, j) <= 100);
        }
    }
    CHECK_THROWS_AS(random_instance(5, 3, 2, 1), RangeError);
    CHECK_THROWS_AS(random_instance(2, 0, 1, 1), SizeError);
}
