#include <doctest.h>

#include <clocale>
#include <sstream>

#include <json.hpp>

#include "grover/io.hpp"

using namespace grover;

TEST_CASE("real formatting uses 17 significant digits") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(-0.088388347648318433) == "-0.088388347648318433");
    CHECK(format_real(1e-20) == "9.9999999999999995e-21");
    CHECK(format_real(0.0) == "0");
}

TEST_CASE("marked entries: decimal or bit strings with qubit 0 leftmost") {
    CHECK(parse_basis_entry(3, "5") == 5);
    CHECK(parse_basis_entry(3, "100") == 4);
    CHECK(parse_basis_entry(3, " 011 ") == 3);
    CHECK(parse_basis_entry(4, "10") == 10);
    CHECK_THROWS_AS(parse_basis_entry(3, "9"), std::out_of_range);
    CHECK_THROWS_AS(parse_basis_entry(3, "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_basis_entry(3, "-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_basis_entry(3, ""), std::invalid_argument);
}

TEST_CASE("marked lists and oracle files") {
    CHECK(parse_marked_list(3, "0,3,5") == MarkedSet(3, {0, 3, 5}));
    CHECK(parse_marked_list(3, "") == MarkedSet(3, {}));
    CHECK_THROWS_AS(parse_marked_list(3, "1,1"), std::invalid_argument);
    std::istringstream file("# solutions\n\n001\n6\n  \n# done\n");
    CHECK(parse_oracle_file(3, file) == MarkedSet(3, {1, 6}));
    std::istringstream dup("1\n001\n");
    CHECK_THROWS_AS(parse_oracle_file(3, dup), std::invalid_argument);
}

TEST_CASE("state files") {
    const auto s = parse_state_json(R"({"n": 1, "amplitudes": [0.6, 0.8000001]})");
    CHECK(s.n() == 1);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
    CHECK_THROWS_AS(parse_state_json(R"({"n": 1, "amplitudes": [0.6, 0.9]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_json(R"({"n": 2, "amplitudes": [1, 0]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_json(R"({"n": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_json(R"({"n": 1, "amplitudes": ["a", 1]})"), std::invalid_argument);
    const auto round = parse_state_json(state_json(make_uniform(2)));
    CHECK(round == make_uniform(2));
}

TEST_CASE("report json schema") {
    const auto j = nlohmann::json::parse(report_json(analyze(make_uniform(2))));
    CHECK(j["delta"] == 2);
    CHECK(j["chi"] == 1);
    CHECK(j["e_chi"] == 0.0);
    CHECK(j["ambiguous"] == false);
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["qubits"] == nlohmann::json::array({0}));
    CHECK(j["factors"][1]["amplitudes"].size() == 2);
}

TEST_CASE("trace csv and json") {
    const auto t = run_dynamics(3, MarkedSet(3, {0}));
    const auto csv = trace_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "step_index,label,k,a,b,success_probability,delta,chi,e_chi,ambiguous,closed_form_deviation");
    std::getline(in, line);
    CHECK(line == "0,initial,0,,,1,3,1,0,0,0");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 6);

    const auto j = nlohmann::json::parse(trace_json(t));
    CHECK(j["header"]["n"] == 3);
    CHECK(j["header"]["M"] == 1);
    CHECK(j["header"]["R"] == 2);
    CHECK(j["header"]["final_cos_zero"] == false);
    CHECK(j["steps"].size() == 6);
    CHECK(j["steps"][0]["a"].is_null());
}

TEST_CASE("formatting ignores the global locale") {
    const char* previous = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        CHECK(format_real(0.5) == "0.5");
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("check results serialize with all fields") {
    CheckSpec spec;
    spec.id = CheckId::thm4;
    spec.n = 3;
    const auto j = nlohmann::json::parse(check_result_json(check(spec)));
    CHECK(j["check_id"] == "thm4");
    CHECK(j["instances_tested"] == 4);
    CHECK(j["violations"].empty());
    CHECK(j["ambiguous_count"] == 0);
    CHECK(j["verdict"] == "pass");
}
