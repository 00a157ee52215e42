#include <doctest.h>

#include <initializer_list>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "csmm/table.hpp"
#include "csmm/version.hpp"

namespace {

csmm::Table sample_table() {
    csmm::Table t;
    t.command = "demo";
    t.params = {{"alpha", "0.5"}, {"mode", "fast"}};
    t.columns = {"name", "value", "count", "flag", "maybe"};
    t.add_row({csmm::Cell::of(std::string("plain")), csmm::Cell::of(0.1), csmm::Cell::of(7),
               csmm::Cell::of(true), csmm::Cell()});
    t.add_row({csmm::Cell::of(std::string("qu\"ot,e")), csmm::Cell::of(std::nan("")),
               csmm::Cell::of(-3), csmm::Cell::of(false), csmm::Cell::of(2.5)});
    return t;
}

TEST_SUITE("table") {

TEST_CASE("reals are written with full round-trip precision") {
    for (double v : {1.0 / 3.0, 1e-300, 6.02214076e23, -0.1, 3.141592653589793}) {
        const std::string s = csmm::format_real(v);
        CHECK_EQ(std::strtod(s.c_str(), nullptr), v);
    }
    CHECK_EQ(csmm::format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
    CHECK_EQ(csmm::format_real(std::numeric_limits<double>::infinity()), "inf");
    CHECK_EQ(csmm::format_real(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST_CASE("csv output carries headers, quoting and empty cells") {
    std::ostringstream os;
    csmm::write_csv(sample_table(), os);
    const std::string out = os.str();
    CHECK_NE(out.find(std::string("# version=") + csmm::version), std::string::npos);
    CHECK_NE(out.find("# command=demo"), std::string::npos);
    CHECK_NE(out.find("# alpha=0.5"), std::string::npos);
    CHECK_NE(out.find("name,value,count,flag,maybe"), std::string::npos);
    CHECK_NE(out.find("plain,0.10000000000000001,7,true,"), std::string::npos);
    CHECK_NE(out.find("\"qu\"\"ot,e\",nan,-3,false,2.5"), std::string::npos);
}

TEST_CASE("json output is a versioned envelope with typed cells") {
    std::ostringstream os;
    csmm::write_json(sample_table(), os);
    const nlohmann::json j = nlohmann::json::parse(os.str());
    CHECK_EQ(j.at("schema_version").get<int>(), csmm::schema_version);
    CHECK_EQ(j.at("version").get<std::string>(), csmm::version);
    CHECK_EQ(j.at("command").get<std::string>(), "demo");
    CHECK_EQ(j.at("columns").size(), 5u);
    CHECK_EQ(j.at("rows").size(), 2u);
    const auto& r0 = j.at("rows").at(0);
    CHECK_EQ(r0.at(1).get<double>(), 0.1);
    CHECK_EQ(r0.at(2).get<long long>(), 7);
    CHECK_EQ(r0.at(3).get<bool>(), true);
    CHECK(r0.at(4).is_null());
    CHECK_EQ(j.at("rows").at(1).at(1).get<std::string>(), "nan");
}

TEST_CASE("cell factories tag the kinds") {
    CHECK_EQ(csmm::Cell::of(1.5).kind, csmm::Cell::Kind::Real);
    CHECK_EQ(csmm::Cell::of(2).kind, csmm::Cell::Kind::Integer);
    CHECK_EQ(csmm::Cell::of(true).kind, csmm::Cell::Kind::Boolean);
    CHECK_EQ(csmm::Cell::of(std::string("x")).kind, csmm::Cell::Kind::Text);
    CHECK_EQ(csmm::Cell().kind, csmm::Cell::Kind::Empty);
}

TEST_CASE("row width must match the declared columns") {
    csmm::Table t;
    t.columns = {"a", "b"};
    CHECK_THROWS(t.add_row({csmm::Cell::of(1.0)}));
}

}  // TEST_SUITE

}  // namespace
