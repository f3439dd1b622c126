#include "redcalc/csv.hpp"
#include "redcalc/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace redcalc;

TEST_SUITE("csv") {

TEST_CASE("quoting round trip") {
    const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "", "(. .)", "line\nbreak"};
    std::ostringstream out;
    write_csv_row(out, fields);
    write_csv_row(out, {"a", "b"});
    std::istringstream in(out.str());
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == fields);
    CHECK(rows[1] == std::vector<std::string>{"a", "b"});
    CHECK(csv_field("x,y") == "\"x,y\"");
    CHECK(csv_field("ok") == "ok");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_csv_line("\"open"), ParseError);
    CHECK(parse_csv_line("a,,c") == std::vector<std::string>{"a", "", "c"});
}

TEST_CASE("doubles round trip exactly") {
    for (double v : {0.0, 1.0 / 3.0, -2.5e-300, 1367.4802310268806, 6.02214076e23}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
}

} // TEST_SUITE
