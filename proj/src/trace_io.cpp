#include "rotor/trace_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rotor::lattice {

using ordered_json = nlohmann::ordered_json;

void write_events(std::ostream& out, const std::vector<LabelEvent>& labels)
{
    for (const auto& l : labels) {
        ordered_json j;
        j["k"] = l.k;
        j["x"] = l.v.x;
        j["y"] = l.v.y;
        j["t_in"] = l.t_in;
        j["t_out"] = l.t_out;
        j["len"] = l.length;
        j["area"] = l.area;
        j["depth"] = l.depth;
        out << j.dump() << '\n';
    }
}

std::vector<LabelEvent> read_events(std::istream& in)
{
    std::vector<LabelEvent> labels;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            LabelEvent l;
            l.k = j.at("k").get<std::int64_t>();
            l.v.x = j.at("x").get<std::int64_t>();
            l.v.y = j.at("y").get<std::int64_t>();
            l.t_in = j.at("t_in").get<std::int64_t>();
            l.t_out = j.at("t_out").get<std::int64_t>();
            l.length = j.at("len").get<std::int64_t>();
            l.area = j.at("area").get<std::int64_t>();
            l.depth = j.at("depth").get<int>();
            labels.push_back(std::move(l));
        } catch (const nlohmann::json::exception& e) {
            throw TraceFormatError("event line " + std::to_string(number) + ": " + e.what());
        }
    }
    return labels;
}

void write_samples(std::ostream& out, const std::vector<Sample>& samples)
{
    out << "t,x,y,r2\n";
    for (const auto& s : samples)
        out << s.t << ',' << s.x << ',' << s.y << ',' << s.r2() << '\n';
}

std::vector<Sample> read_samples(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "t,x,y,r2")
        throw TraceFormatError("samples: missing header");
    std::vector<Sample> samples;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        std::istringstream row(line);
        Sample s;
        std::int64_t r2 = 0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> s.t >> c1 >> s.x >> c2 >> s.y >> c3 >> r2) || c1 != ',' || c2 != ',' || c3 != ',' ||
            r2 != s.r2())
            throw TraceFormatError("samples line " + std::to_string(number) + " malformed");
        samples.push_back(s);
    }
    return samples;
}

std::string summary_json(const WalkTrace& trace)
{
    ordered_json j;
    j["seed"] = trace.config.seed;
    j["steps"] = trace.config.steps;
    j["mode"] = to_string(trace.config.mode);
    j["max_depth"] = trace.config.max_depth;
    j["labels"] = trace.labels.size();
    j["final"] = {trace.final_position.x, trace.final_position.y};
    ordered_json counters;
    for (const auto& f : counter_fields())
        counters[f.name] = trace.counters.*f.member;
    j["counters"] = counters;
    return j.dump(2) + "\n";
}

WalkSummary parse_summary(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        WalkSummary s;
        s.seed = j.at("seed").get<std::uint64_t>();
        s.steps = j.at("steps").get<std::int64_t>();
        const auto mode = j.at("mode").get<std::string>();
        if (mode != "rotor" && mode != "random")
            throw TraceFormatError("summary: unknown mode " + mode);
        s.mode = mode == "rotor" ? WalkMode::Rotor : WalkMode::Random;
        s.max_depth = j.at("max_depth").get<int>();
        s.final_position = {j.at("final").at(0).get<std::int64_t>(), j.at("final").at(1).get<std::int64_t>()};
        for (const auto& f : counter_fields())
            s.counters.*f.member = j.at("counters").at(f.name).get<std::int64_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw TraceFormatError(std::string("summary: ") + e.what());
    }
}

TraceFiles trace_paths(const std::filesystem::path& dir, const std::string& stem)
{
    return {dir / (stem + ".events.jsonl"), dir / (stem + ".samples.csv"), dir / (stem + ".summary.json")};
}

TraceFiles write_trace(const std::filesystem::path& dir, const std::string& stem, const WalkTrace& trace)
{
    const TraceFiles files = trace_paths(dir, stem);
    auto open = [](const std::filesystem::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
        return out;
    };
    {
        auto out = open(files.events);
        write_events(out, trace.labels);
    }
    {
        auto out = open(files.samples);
        write_samples(out, trace.samples);
    }
    {
        auto out = open(files.summary);
        out << summary_json(trace);
    }
    return files;
}

} // namespace rotor::lattice
