#include <doctest.h>

#include "triuni/csv.hpp"
#include "triuni/gate_io.hpp"
#include "triuni/gates.hpp"

using namespace triuni;

TEST_CASE("gate json round trip") {
    Rng rng(8);
    Gate3 g = triunitary_gate(TriUnitaryParams::random(rng));
    const std::string text = gate_to_json(g, "draw-8");
    Gate3 back = gate_from_json(text);
    CHECK((g - back).norm() == 0.0);

    CHECK_THROWS_AS(gate_from_json("{\"format\":\"other\"}"), validation_error);
}

TEST_CASE("gate hash is stable and entry-sensitive") {
    Rng rng(9);
    Gate3 g = triunitary_gate(TriUnitaryParams::random(rng));
    CHECK(gate_hash(g) == gate_hash(g));
    Gate3 h = g;
    h(0, 0) += 1e-12;
    CHECK(gate_hash(g) != gate_hash(h));
    CHECK(gate_hash_hex(g).size() == 16);
}

TEST_CASE("csv round trip through the reader") {
    CsvTable t;
    t.metadata = {"alpha=1", "note with, comma-free text"};
    t.header = {"x", "t", "re", "im", "on_ray"};
    t.rows.push_back({csv_num(-3), csv_num(2), csv_num(0.125), csv_num(-1.0 / 3.0), "1"});
    t.rows.push_back({csv_num(4), csv_num(1), csv_num(1e-17), csv_num(0.0), "0"});

    const std::string text = t.to_string();
    CsvTable back = CsvTable::parse(text);
    CHECK(back.metadata == t.metadata);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.to_string() == text);

    CHECK_THROWS_AS(CsvTable::parse("# only metadata\n"), validation_error);
}
