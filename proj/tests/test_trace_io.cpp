#include "rotor/trace_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rotor;
using namespace rotor::lattice;

namespace {

WalkTrace sample_trace()
{
    WalkConfig c;
    c.seed = 12;
    c.steps = 100000;
    c.max_depth = 2;
    LatticeWalker w(c);
    w.advance_to(c.steps);
    return w.trace();
}

} // namespace

TEST_CASE("events round trip")
{
    const WalkTrace t = sample_trace();
    REQUIRE(!t.labels.empty());
    std::stringstream s;
    write_events(s, t.labels);
    const auto back = read_events(s);
    REQUIRE(back.size() == t.labels.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].k == t.labels[i].k);
        CHECK(back[i].v == t.labels[i].v);
        CHECK(back[i].t_in == t.labels[i].t_in);
        CHECK(back[i].t_out == t.labels[i].t_out);
        CHECK(back[i].length == t.labels[i].length);
        CHECK(back[i].area == t.labels[i].area);
        CHECK(back[i].depth == t.labels[i].depth);
    }
}

TEST_CASE("event lines use the fixed key order")
{
    LabelEvent e;
    e.k = 3;
    e.v = {-2, 5};
    e.t_in = 10;
    e.t_out = 40;
    e.length = 8;
    e.area = 3;
    std::stringstream s;
    write_events(s, {e});
    CHECK(s.str() == "{\"k\":3,\"x\":-2,\"y\":5,\"t_in\":10,\"t_out\":40,\"len\":8,\"area\":3,\"depth\":0}\n");
}

TEST_CASE("malformed events are rejected with the line number")
{
    std::stringstream s("{\"k\":1,\"x\":0,\"y\":1,\"t_in\":1,\"t_out\":2,\"len\":4,\"area\":1,\"depth\":0}\n{\"k\":2}\n");
    try {
        read_events(s);
        FAIL("no exception");
    } catch (const TraceFormatError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::stringstream garbage("not json\n");
    CHECK_THROWS_AS(read_events(garbage), TraceFormatError);
}

TEST_CASE("samples round trip and validate r2")
{
    const WalkTrace t = sample_trace();
    std::stringstream s;
    write_samples(s, t.samples);
    CHECK(read_samples(s) == t.samples);

    std::stringstream no_header("1,0,1,1\n");
    CHECK_THROWS_AS(read_samples(no_header), TraceFormatError);
    std::stringstream wrong_r2("t,x,y,r2\n5,3,4,24\n");
    CHECK_THROWS_AS(read_samples(wrong_r2), TraceFormatError);
    std::stringstream short_row("t,x,y,r2\n5,3\n");
    CHECK_THROWS_AS(read_samples(short_row), TraceFormatError);
}

TEST_CASE("summary round trip")
{
    const WalkTrace t = sample_trace();
    const WalkSummary s = parse_summary(summary_json(t));
    CHECK(s.seed == t.config.seed);
    CHECK(s.steps == t.config.steps);
    CHECK(s.mode == WalkMode::Rotor);
    CHECK(s.max_depth == 2);
    CHECK(s.counters == t.counters);
    CHECK(s.final_position == t.final_position);
    CHECK_THROWS_AS(parse_summary("{}"), TraceFormatError);
    CHECK_THROWS_AS(parse_summary("{"), TraceFormatError);
}

TEST_CASE("write_trace uses the stem naming")
{
    const auto dir = std::filesystem::temp_directory_path() / "rotorwalk_trace_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const WalkTrace t = sample_trace();
    const TraceFiles f = write_trace(dir, "walk_0003", t);
    CHECK(f.events.filename() == "walk_0003.events.jsonl");
    CHECK(f.samples.filename() == "walk_0003.samples.csv");
    CHECK(f.summary.filename() == "walk_0003.summary.json");
    std::ifstream ev(f.events);
    CHECK(read_events(ev).size() == t.labels.size());
    std::ifstream sa(f.samples);
    CHECK(read_samples(sa) == t.samples);
    std::filesystem::remove_all(dir);
}
