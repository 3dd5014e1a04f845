#include "run_config.hpp"

#include "epsnbhd/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace epsnbhd::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text)
{
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("bad value for " + key + ": '" + text + "'");
    return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text)
{
    std::vector<T> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(parse_number<T>(key, trim(item)));
    if (out.empty())
        throw ConfigError(key + " must not be empty");
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void RunConfig::validate() const
{
    if (weights != "geometric")
        throw ConfigError("unknown weights rule '" + weights + "'");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("ratio must lie in (0, 1)");
    if (truncation < 1 || truncation > kMaxEnumeration)
        throw ConfigError("truncation out of range");
    CantorConfig{cantor_depth, cantor_recursion}.validate();
    if (samples < 16 || samples > 10'000'000)
        throw ConfigError("samples must lie in [16, 1e7]");
    if (top < 1)
        throw ConfigError("top must be at least 1");
    if (grid < 16 || grid > 16384)
        throw ConfigError("grid must lie in [16, 16384]");
    if (epsilon_ladder.empty())
        throw ConfigError("epsilon_ladder must not be empty");
    for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
        if (!(epsilon_ladder[i] > 0.0))
            throw ConfigError("epsilon_ladder entries must be positive");
        if (i > 0 && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))
            throw ConfigError("epsilon_ladder must be strictly descending");
    }
    for (int d : box_depths) {
        if (d < 1 || d > 30)
            throw ConfigError("box_depths entries must lie in [1, 30]");
    }
    if (output.empty())
        throw ConfigError("output must not be empty");
}

ProfileConfig RunConfig::profile() const
{
    return ProfileConfig(WeightSequence::geometric(ratio), truncation, enumeration);
}

CantorConfig RunConfig::cantor() const
{
    return CantorConfig{cantor_depth, cantor_recursion};
}

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    std::set<std::string> seen;
    std::stringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigError("duplicate key " + key);

        if (key == "weights")
            c.weights = value;
        else if (key == "ratio")
            c.ratio = parse_number<double>(key, value);
        else if (key == "truncation")
            c.truncation = parse_number<std::size_t>(key, value);
        else if (key == "enumeration")
            c.enumeration = parse_enumeration_scheme(value);
        else if (key == "cantor_depth")
            c.cantor_depth = parse_number<int>(key, value);
        else if (key == "cantor_recursion")
            c.cantor_recursion = parse_number<int>(key, value);
        else if (key == "samples")
            c.samples = parse_number<std::size_t>(key, value);
        else if (key == "top")
            c.top = parse_number<std::size_t>(key, value);
        else if (key == "grid")
            c.grid = parse_number<int>(key, value);
        else if (key == "epsilon_ladder")
            c.epsilon_ladder = parse_list<double>(key, value);
        else if (key == "box_depths")
            c.box_depths = parse_list<int>(key, value);
        else if (key == "output")
            c.output = value;
        else if (key == "seed")
            c.seed = parse_number<std::uint64_t>(key, value);
        else
            throw ConfigError("unknown key " + key);
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const RunConfig& c)
{
    std::string out;
    out += "weights = " + c.weights + "\n";
    out += "ratio = " + format_double(c.ratio) + "\n";
    out += "truncation = " + std::to_string(c.truncation) + "\n";
    out += "enumeration = " + to_string(c.enumeration) + "\n";
    out += "cantor_depth = " + std::to_string(c.cantor_depth) + "\n";
    out += "cantor_recursion = " + std::to_string(c.cantor_recursion) + "\n";
    out += "samples = " + std::to_string(c.samples) + "\n";
    out += "top = " + std::to_string(c.top) + "\n";
    out += "grid = " + std::to_string(c.grid) + "\n";
    out += "epsilon_ladder = ";
    for (std::size_t i = 0; i < c.epsilon_ladder.size(); ++i)
        out += (i ? ", " : "") + format_double(c.epsilon_ladder[i]);
    out += "\nbox_depths = ";
    for (std::size_t i = 0; i < c.box_depths.size(); ++i)
        out += (i ? ", " : "") + std::to_string(c.box_depths[i]);
    out += "\noutput = " + c.output + "\n";
    out += "seed = " + std::to_string(c.seed) + "\n";
    return out;
}

} // namespace epsnbhd::cli
