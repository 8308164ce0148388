#pragma once

#include "rotor/walker.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rotor::lattice {

// One JSON object per line: {"k","x","y","t_in","t_out","len","area","depth"}.
void write_events(std::ostream& out, const std::vector<LabelEvent>& labels);
std::vector<LabelEvent> read_events(std::istream& in);

// CSV with header t,x,y,r2.
void write_samples(std::ostream& out, const std::vector<Sample>& samples);
std::vector<Sample> read_samples(std::istream& in);

struct WalkSummary {
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    WalkMode mode = WalkMode::Rotor;
    int max_depth = 0;
    WalkCounters counters;
    Point final_position;
};

std::string summary_json(const WalkTrace& trace);
WalkSummary parse_summary(const std::string& text);

struct TraceFiles {
    std::filesystem::path events;
    std::filesystem::path samples;
    std::filesystem::path summary;
};

/// <dir>/<stem>.events.jsonl, <stem>.samples.csv and <stem>.summary.json.
TraceFiles trace_paths(const std::filesystem::path& dir, const std::string& stem);
TraceFiles write_trace(const std::filesystem::path& dir, const std::string& stem, const WalkTrace& trace);

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rotor::lattice
