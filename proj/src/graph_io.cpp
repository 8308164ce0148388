#include "rotor/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace rotor {

namespace {

bool next_content_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        return true;
    }
    return false;
}

[[noreturn]] void parse_error(const std::string& what, const std::string& line)
{
    throw GraphError("graph text: " + what + " in line '" + line + "'");
}

template <typename T>
T parse_number(std::istringstream& is, const std::string& line)
{
    T value{};
    if (!(is >> value))
        parse_error("expected a number", line);
    return value;
}

Vertex parse_vertex_label(std::istringstream& is, const std::string& line, Vertex n)
{
    std::string label;
    if (!(is >> label) || label.size() < 2 || label.back() != ':')
        parse_error("expected 'v:'", line);
    label.pop_back();
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(label, &used);
    } catch (const std::exception&) {
        parse_error("bad vertex label", line);
    }
    if (used != label.size() || v < 0 || v >= n)
        parse_error("bad vertex label", line);
    return static_cast<Vertex>(v);
}

void expect_end(std::istringstream& is, const std::string& line)
{
    std::string rest;
    if (is >> rest)
        parse_error("trailing tokens", line);
}

// Reads the graph block. Leaves `pending` holding the first line after it, if
// any, so callers can continue with instance lines.
Digraph read_graph_block(std::istream& in, std::optional<std::string>& pending)
{
    std::string line;
    if (!next_content_line(in, line))
        throw GraphError("graph text: empty input");
    std::istringstream header(line);
    std::string keyword;
    header >> keyword;
    if (keyword != "vertices")
        parse_error("expected 'vertices N'", line);
    const auto n = parse_number<long long>(header, line);
    expect_end(header, line);
    if (n <= 0 || n > (1LL << 30))
        parse_error("vertex count out of range", line);

    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (long long i = 0; i < n; ++i) {
        if (!next_content_line(in, line))
            throw GraphError("graph text: missing adjacency lines");
        std::istringstream is(line);
        const Vertex v = parse_vertex_label(is, line, static_cast<Vertex>(n));
        if (seen[v])
            parse_error("vertex listed twice", line);
        seen[v] = 1;
        long long w = 0;
        while (is >> w) {
            if (w < 0 || w >= n)
                parse_error("edge target out of range", line);
            adj[v].push_back(static_cast<Vertex>(w));
        }
        if (!is.eof())
            parse_error("bad edge target", line);
    }

    std::optional<std::vector<Point>> coords;
    pending.reset();
    while (next_content_line(in, line)) {
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        if (kw != "coords") {
            pending = line;
            break;
        }
        if (!coords) {
            coords.emplace(static_cast<std::size_t>(n));
            seen.assign(static_cast<std::size_t>(n), 0);
        }
        const Vertex v = parse_vertex_label(is, line, static_cast<Vertex>(n));
        if (seen[v])
            parse_error("coords listed twice", line);
        seen[v] = 1;
        (*coords)[v].x = parse_number<std::int64_t>(is, line);
        (*coords)[v].y = parse_number<std::int64_t>(is, line);
        expect_end(is, line);
    }
    if (coords)
        for (char s : seen)
            if (!s)
                throw GraphError("graph text: coords missing for some vertex");
    return Digraph(adj, std::move(coords));
}

} // namespace

void write_graph(std::ostream& out, const Digraph& g)
{
    out << "vertices " << g.vertex_count() << '\n';
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << v << ':';
        for (Vertex w : g.out(v))
            out << ' ' << w;
        out << '\n';
    }
    if (g.has_embedding())
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out << "coords " << v << ": " << g.position(v).x << ' ' << g.position(v).y << '\n';
}

Digraph read_graph(std::istream& in)
{
    std::optional<std::string> pending;
    Digraph g = read_graph_block(in, pending);
    if (pending)
        throw GraphError("graph text: unexpected line '" + *pending + "'");
    return g;
}

std::string graph_to_text(const Digraph& g)
{
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

Digraph graph_from_text(const std::string& text)
{
    std::istringstream is(text);
    return read_graph(is);
}

void write_instance(std::ostream& out, const Instance& inst)
{
    write_graph(out, inst.graph);
    out << "rotors";
    for (auto a : inst.rotors.alpha)
        out << ' ' << a;
    out << "\nchips";
    for (Vertex c : inst.chips)
        out << ' ' << c;
    out << "\nseed " << inst.seed << '\n';
}

Instance read_instance(std::istream& in)
{
    Instance inst;
    std::optional<std::string> pending;
    inst.graph = read_graph_block(in, pending);
    bool have_rotors = false;
    std::string line;
    auto handle = [&](const std::string& l) {
        std::istringstream is(l);
        std::string kw;
        is >> kw;
        if (kw == "rotors") {
            inst.rotors.alpha.clear();
            long long a = 0;
            while (is >> a)
                inst.rotors.alpha.push_back(static_cast<std::int32_t>(a));
            have_rotors = true;
        } else if (kw == "chips") {
            inst.chips.clear();
            long long c = 0;
            while (is >> c)
                inst.chips.push_back(static_cast<Vertex>(c));
        } else if (kw == "seed") {
            inst.seed = parse_number<std::uint64_t>(is, l);
        } else {
            parse_error("unknown instance line", l);
        }
    };
    if (pending)
        handle(*pending);
    while (next_content_line(in, line))
        handle(line);
    if (!have_rotors)
        throw GraphError("instance text: missing rotors line");
    validate(inst.graph, inst.rotors);
    for (Vertex c : inst.chips)
        if (c < 0 || c >= inst.graph.vertex_count())
            throw GraphError("instance text: chip out of range");
    return inst;
}

} // namespace rotor
