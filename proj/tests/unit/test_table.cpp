#include "helpers.hpp"

#include "table.hpp"

#include <json.hpp>

#include <sstream>

using dofpp::cli::Table;

TEST_CASE("csv quoting")
{
    CHECK(dofpp::cli::csv_field("plain") == "plain");
    CHECK(dofpp::cli::csv_field("a,b") == "\"a,b\"");
    CHECK(dofpp::cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(dofpp::cli::csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("csv output")
{
    Table t({"t", "k", "ok", "note"});
    t.add({0.1, 3L, true, std::string("x, y")});
    std::ostringstream out;
    dofpp::cli::write_csv(out, t);
    CHECK(out.str() == "t,k,ok,note\r\n0.10000000000000001,3,true,\"x, y\"\r\n");
    CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("doubles round trip through csv")
{
    Table t({"v"});
    const double v = 1.0 / 3.0;
    t.add({v});
    std::ostringstream out;
    dofpp::cli::write_csv(out, t);
    const std::string s = out.str();
    CHECK(std::stod(s.substr(s.find('\n') + 1)) == v);
}

TEST_CASE("json output keeps column order")
{
    Table t({"zeta", "alpha", "k"});
    t.add({2.5, 0.5, 1L});
    t.add({1.0, 0.25, 2L});
    std::ostringstream out;
    dofpp::cli::write_json(out, t);
    const std::string s = out.str();
    CHECK(s.find("{\"zeta\":2.5,\"alpha\":0.5,\"k\":1}") != std::string::npos);
    auto parsed = nlohmann::json::parse(s);
    REQUIRE(parsed.is_array());
    CHECK(parsed.size() == 2);
    CHECK(parsed[1]["k"] == 2);
    std::ostringstream empty;
    dofpp::cli::write_json(empty, Table({"a"}));
    CHECK(nlohmann::json::parse(empty.str()).empty());
}
