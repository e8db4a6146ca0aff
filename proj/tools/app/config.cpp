#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"

namespace biharm::app {

namespace pt = boost::property_tree;

namespace {

// Section names may contain dots ("source.1"), so lookups go through the
// literal child names instead of ptree paths.
const pt::ptree* section(const pt::ptree& root, const std::string& name)
{
    const auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
}

std::string field_name(const std::string& sec, const std::string& key)
{
    return sec.empty() ? key : sec + "." + key;
}

std::optional<std::string> raw(const pt::ptree& sec, const std::string& key)
{
    const auto it = sec.find(key);
    if (it == sec.not_found()) {
        return std::nullopt;
    }
    return it->second.data();
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double to_double(const std::string& field, const std::string& text)
{
    std::istringstream is(text);
    double v = 0.0;
    if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: expected a finite number, got '{}'", field, text));
    }
    return v;
}

long long to_integer(const std::string& field, const std::string& text)
{
    std::istringstream is(text);
    long long v = 0;
    if (!(is >> v) || !(is >> std::ws).eof()) {
        throw ConfigError(fmt::format("{}: expected an integer, got '{}'", field, text));
    }
    return v;
}

std::vector<double> to_numbers(const std::string& field, const std::string& text)
{
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        out.push_back(to_double(field, tok));
    }
    return out;
}

Point to_point(const std::string& field, const std::string& text, Dimension dim)
{
    const auto v = to_numbers(field, text);
    if (v.size() != static_cast<std::size_t>(to_int(dim))) {
        throw ConfigError(fmt::format("{}: expected {} coordinates, got {}", field, to_int(dim), v.size()));
    }
    return dim == Dimension::Two ? point2(v[0], v[1]) : point3(v[0], v[1], v[2]);
}

bool source_section(const std::string& name) { return name.rfind("source.", 0) == 0; }

class Reader {
public:
    Reader(const pt::ptree& sec, std::string name) : sec_(sec), name_(std::move(name)) {}

    bool has(const std::string& key) const { return raw(sec_, key).has_value(); }

    std::string text(const std::string& key) const
    {
        const auto v = raw(sec_, key);
        if (!v) {
            throw ConfigError(fmt::format("{}: missing", field_name(name_, key)));
        }
        return trim(*v);
    }
    std::string text(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? text(key) : fallback;
    }
    double number(const std::string& key) const { return to_double(field_name(name_, key), text(key)); }
    double number(const std::string& key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }
    double positive(const std::string& key) const
    {
        const double v = number(key);
        if (!(v > 0.0)) {
            throw ConfigError(fmt::format("{}: must be positive, got {}", field_name(name_, key), v));
        }
        return v;
    }
    long long integer(const std::string& key) const
    {
        return to_integer(field_name(name_, key), text(key));
    }
    Point point(const std::string& key, Dimension dim) const
    {
        return to_point(field_name(name_, key), text(key), dim);
    }
    bool boolean(const std::string& key, bool fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const auto t = text(key);
        if (t == "true" || t == "1" || t == "yes") return true;
        if (t == "false" || t == "0" || t == "no") return false;
        throw ConfigError(fmt::format("{}: expected true or false, got '{}'", field_name(name_, key), t));
    }

    void only(std::initializer_list<const char*> keys) const
    {
        for (const auto& [k, v] : sec_) {
            const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; });
            if (!known && v.empty() && !source_section(k)) {
                throw ConfigError(fmt::format("{}: unknown key", field_name(name_, k)));
            }
        }
    }

private:
    const pt::ptree& sec_;
    std::string name_;
};

Algorithm parse_algorithm(const std::string& t)
{
    if (t == "single3d") return Algorithm::Single3d;
    if (t == "multi2d_real") return Algorithm::Multi2dReal;
    if (t == "multi2d_complex") return Algorithm::Multi2dComplex;
    if (t == "multi3d") return Algorithm::Multi3d;
    if (t == "prony3d") return Algorithm::Prony3d;
    throw ConfigError(fmt::format(
        "algorithm: unknown value '{}' (single3d, multi2d_real, multi2d_complex, multi3d, prony3d)", t));
}

void apply_override(pt::ptree& root, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(fmt::format("override '{}': expected key=value", assignment));
    }
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) {
        root.put_child(pt::ptree::path_type(path, '\0'), pt::ptree(value));
        return;
    }
    const std::string sec = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    auto found = root.find(sec);
    pt::ptree& target = found == root.not_found() ? root.push_back({sec, pt::ptree()})->second : found->second;
    target.put_child(pt::ptree::path_type(key, '\0'), pt::ptree(value));
}

}  // namespace

std::string to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::Single3d: return "single3d";
    case Algorithm::Multi2dReal: return "multi2d_real";
    case Algorithm::Multi2dComplex: return "multi2d_complex";
    case Algorithm::Multi3d: return "multi3d";
    case Algorithm::Prony3d: return "prony3d";
    }
    return "?";
}

ExperimentConfig parse_config(std::istream& in, const std::vector<std::string>& overrides)
{
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config syntax (line {}): {}", e.line(), e.message()));
    }
    for (const auto& o : overrides) {
        apply_override(root, o);
    }

    ExperimentConfig c;
    const Reader top(root, "");
    top.only({"name", "dimension", "algorithm", "noise_level", "seed", "measurements", "sensors", "frequency",
              "grid", "peaks", "prony"});
    c.name = top.text("name", c.name);
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError(fmt::format("name: must be a plain file stem, got '{}'", c.name));
    }
    const auto dim = top.integer("dimension");
    if (dim != 2 && dim != 3) {
        throw ConfigError(fmt::format("dimension: must be 2 or 3, got {}", dim));
    }
    c.dimension = dimension_from_int(static_cast<int>(dim));
    c.algorithm = parse_algorithm(top.text("algorithm"));
    c.noise_level = top.number("noise_level", 0.0);
    if (c.noise_level < 0.0) {
        throw ConfigError(fmt::format("noise_level: must be nonnegative, got {}", c.noise_level));
    }
    if (top.has("seed")) {
        const auto s = top.integer("seed");
        if (s < 0) {
            throw ConfigError("seed: must be nonnegative");
        }
        c.seed = static_cast<std::uint64_t>(s);
    }
    c.measurements = top.text("measurements", "");

    const bool wants3 = c.algorithm == Algorithm::Single3d || c.algorithm == Algorithm::Multi3d ||
                        c.algorithm == Algorithm::Prony3d;
    if (wants3 != (c.dimension == Dimension::Three)) {
        throw ConfigError(fmt::format("algorithm: {} needs dimension {}", to_string(c.algorithm), wants3 ? 3 : 2));
    }

    // sources, in section order
    for (const auto& [name, sec] : root) {
        if (!source_section(name)) {
            continue;
        }
        const Reader r(sec, name);
        r.only({"position", "strength_re", "strength_im"});
        PointSource s;
        s.position = r.point("position", c.dimension);
        s.strength = Complex(r.number("strength_re"), r.number("strength_im", 0.0));
        c.sources.push_back(s);
    }
    if (c.sources.empty() && c.measurements.empty()) {
        throw ConfigError("source.*: at least one source section is needed unless measurements is set");
    }
    try {
        (void)SourceConfig(c.dimension, c.sources);
    } catch (const Error& e) {
        throw ConfigError(fmt::format("source.*: {}", e.what()));
    }

    const auto* sensors = section(root, "sensors");
    if (sensors == nullptr) {
        throw ConfigError("sensors: missing section");
    }
    {
        const Reader r(*sensors, "sensors");
        r.only({"layout", "count", "center", "radius", "points"});
        const auto layout = r.text("layout");
        if (layout == "circle" || layout == "sphere") {
            c.sensors.kind = layout == "circle" ? SensorLayout::Kind::Circle : SensorLayout::Kind::Sphere;
            if ((layout == "circle") != (c.dimension == Dimension::Two)) {
                throw ConfigError(fmt::format("sensors.layout: {} does not match dimension {}", layout, dim));
            }
            const auto n = r.integer("count");
            if (n < 1) {
                throw ConfigError("sensors.count: must be at least 1");
            }
            c.sensors.count = static_cast<int>(n);
            c.sensors.center = r.point("center", c.dimension);
            c.sensors.radius = r.positive("radius");
        } else if (layout == "explicit") {
            c.sensors.kind = SensorLayout::Kind::Explicit;
            std::istringstream is(r.text("points"));
            std::string item;
            while (std::getline(is, item, ';')) {
                if (!trim(item).empty()) {
                    c.sensors.points.push_back(to_point("sensors.points", item, c.dimension));
                }
            }
            if (c.sensors.points.empty()) {
                throw ConfigError("sensors.points: empty");
            }
            c.sensors.count = static_cast<int>(c.sensors.points.size());
        } else {
            throw ConfigError(fmt::format("sensors.layout: unknown value '{}' (circle, sphere, explicit)", layout));
        }
    }

    const auto* freq = section(root, "frequency");
    if (freq == nullptr) {
        throw ConfigError("frequency: missing section");
    }
    {
        const Reader r(*freq, "frequency");
        r.only({"kind", "k_minus", "k_plus", "step", "k0", "count"});
        const auto kind = r.text("kind");
        if (kind == "band") {
            c.frequency.kind = FrequencySpec::Kind::Band;
            c.frequency.k_minus = r.positive("k_minus");
            c.frequency.k_plus = r.positive("k_plus");
            c.frequency.step = r.positive("step");
            if (!(c.frequency.k_plus > c.frequency.k_minus)) {
                throw ConfigError("frequency.k_plus: must exceed k_minus");
            }
        } else if (kind == "harmonic") {
            c.frequency.kind = FrequencySpec::Kind::Harmonic;
            c.frequency.k0 = r.positive("k0");
            const auto n = r.integer("count");
            if (n < 1) {
                throw ConfigError("frequency.count: must be at least 1");
            }
            c.frequency.count = static_cast<int>(n);
        } else if (kind == "triple") {
            c.frequency.kind = FrequencySpec::Kind::Triple;
            c.frequency.k0 = r.positive("k0");
        } else {
            throw ConfigError(fmt::format("frequency.kind: unknown value '{}' (band, harmonic, triple)", kind));
        }
        if ((c.frequency.kind == FrequencySpec::Kind::Triple) != (c.algorithm == Algorithm::Single3d)) {
            throw ConfigError("frequency.kind: triple goes with algorithm single3d and only with it");
        }
        if ((c.frequency.kind == FrequencySpec::Kind::Harmonic) != (c.algorithm == Algorithm::Prony3d)) {
            throw ConfigError("frequency.kind: harmonic goes with algorithm prony3d and only with it");
        }
    }

    if (const auto* grid = section(root, "grid")) {
        const Reader r(*grid, "grid");
        r.only({"lower", "upper", "spacing"});
        GridSpec g;
        g.lower = r.point("lower", c.dimension);
        g.upper = r.point("upper", c.dimension);
        g.spacing = r.positive("spacing");
        for (int i = 0; i < to_int(c.dimension); ++i) {
            if (!(g.upper[i] > g.lower[i])) {
                throw ConfigError("grid.upper: must exceed grid.lower in every coordinate");
            }
        }
        c.grid = g;
    } else if (c.algorithm != Algorithm::Prony3d) {
        throw ConfigError(fmt::format("grid: missing section (needed by {})", to_string(c.algorithm)));
    }

    if (const auto* peaks = section(root, "peaks")) {
        const Reader r(*peaks, "peaks");
        r.only({"rel_threshold", "min_separation"});
        c.peaks.rel_threshold = r.number("rel_threshold", c.peaks.rel_threshold);
        c.peaks.min_separation = r.number("min_separation", c.peaks.min_separation);
        if (!(c.peaks.rel_threshold > 0.0 && c.peaks.rel_threshold <= 1.0)) {
            throw ConfigError("peaks.rel_threshold: must lie in (0, 1]");
        }
    }

    if (const auto* prony = section(root, "prony")) {
        const Reader r(*prony, "prony");
        r.only({"m_bound", "rank_tol", "polish"});
        if (r.has("m_bound")) {
            const auto m = r.integer("m_bound");
            if (m < 1) {
                throw ConfigError("prony.m_bound: must be at least 1");
            }
            c.prony.m_bound = static_cast<int>(m);
        }
        if (r.has("rank_tol")) {
            c.prony.rank_tol = r.positive("rank_tol");
        }
        c.prony.polish = r.boolean("polish", true);
    }
    if (c.algorithm == Algorithm::Prony3d && c.frequency.count <= 4 * c.prony.m_bound) {
        throw ConfigError(fmt::format("frequency.count: prony3d needs more than 4 * m_bound = {} frequencies",
                                      4 * c.prony.m_bound));
    }

    for (const auto& [name, sec] : root) {
        const bool known = name == "sensors" || name == "frequency" || name == "grid" || name == "peaks" ||
                           name == "prony" || source_section(name);
        if (!sec.empty() && !known) {
            throw ConfigError(fmt::format("{}: unknown section", name));
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file '{}'", path));
    }
    return parse_config(in, overrides);
}

namespace {

std::string fmt_point(const Point& p, Dimension dim)
{
    return dim == Dimension::Two ? fmt::format("{} {}", p.x(), p.y())
                                 : fmt::format("{} {} {}", p.x(), p.y(), p.z());
}

}  // namespace

std::string write_config(const ExperimentConfig& c)
{
    std::string s;
    auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    line("name", c.name);
    line("dimension", std::to_string(to_int(c.dimension)));
    line("algorithm", to_string(c.algorithm));
    line("noise_level", fmt::format("{}", c.noise_level));
    line("seed", std::to_string(c.seed));
    if (!c.measurements.empty()) {
        line("measurements", c.measurements);
    }

    s += "\n[sensors]\n";
    switch (c.sensors.kind) {
    case SensorLayout::Kind::Circle:
    case SensorLayout::Kind::Sphere:
        line("layout", c.sensors.kind == SensorLayout::Kind::Circle ? "circle" : "sphere");
        line("count", std::to_string(c.sensors.count));
        line("center", fmt_point(c.sensors.center, c.dimension));
        line("radius", fmt::format("{}", c.sensors.radius));
        break;
    case SensorLayout::Kind::Explicit: {
        line("layout", "explicit");
        std::string pts;
        for (std::size_t i = 0; i < c.sensors.points.size(); ++i) {
            pts += (i ? "; " : "") + fmt_point(c.sensors.points[i], c.dimension);
        }
        line("points", pts);
        break;
    }
    }

    s += "\n[frequency]\n";
    switch (c.frequency.kind) {
    case FrequencySpec::Kind::Band:
        line("kind", "band");
        line("k_minus", fmt::format("{}", c.frequency.k_minus));
        line("k_plus", fmt::format("{}", c.frequency.k_plus));
        line("step", fmt::format("{}", c.frequency.step));
        break;
    case FrequencySpec::Kind::Harmonic:
        line("kind", "harmonic");
        line("k0", fmt::format("{}", c.frequency.k0));
        line("count", std::to_string(c.frequency.count));
        break;
    case FrequencySpec::Kind::Triple:
        line("kind", "triple");
        line("k0", fmt::format("{}", c.frequency.k0));
        break;
    }

    if (c.grid) {
        s += "\n[grid]\n";
        line("lower", fmt_point(c.grid->lower, c.dimension));
        line("upper", fmt_point(c.grid->upper, c.dimension));
        line("spacing", fmt::format("{}", c.grid->spacing));
    }
    s += "\n[peaks]\n";
    line("rel_threshold", fmt::format("{}", c.peaks.rel_threshold));
    line("min_separation", fmt::format("{}", c.peaks.min_separation));
    if (c.algorithm == Algorithm::Prony3d) {
        s += "\n[prony]\n";
        line("m_bound", std::to_string(c.prony.m_bound));
        if (c.prony.rank_tol) {
            line("rank_tol", fmt::format("{}", *c.prony.rank_tol));
        }
        line("polish", c.prony.polish ? "true" : "false");
    }
    for (std::size_t i = 0; i < c.sources.size(); ++i) {
        s += fmt::format("\n[source.{}]\n", i + 1);
        line("position", fmt_point(c.sources[i].position, c.dimension));
        line("strength_re", fmt::format("{}", c.sources[i].strength.real()));
        line("strength_im", fmt::format("{}", c.sources[i].strength.imag()));
    }
    return s;
}

SourceConfig make_sources(const ExperimentConfig& c) { return SourceConfig(c.dimension, c.sources); }

SensorArray make_sensors(const ExperimentConfig& c)
{
    switch (c.sensors.kind) {
    case SensorLayout::Kind::Circle:
        return geometry::circle_array_2d(c.sensors.count, c.sensors.center, c.sensors.radius);
    case SensorLayout::Kind::Sphere:
        return geometry::sphere_array_3d(c.sensors.count, c.sensors.center, c.sensors.radius);
    case SensorLayout::Kind::Explicit:
        break;
    }
    return SensorArray(c.dimension, c.sensors.points);
}

FrequencyGrid make_frequencies(const ExperimentConfig& c)
{
    switch (c.frequency.kind) {
    case FrequencySpec::Kind::Band:
        return FrequencyGrid::band(c.frequency.k_minus, c.frequency.k_plus, c.frequency.step);
    case FrequencySpec::Kind::Harmonic:
        return FrequencyGrid::harmonic(c.frequency.k0, c.frequency.count);
    case FrequencySpec::Kind::Triple:
        break;
    }
    return FrequencyGrid::triple(c.frequency.k0);
}

std::optional<sampling::SamplingGrid> make_grid(const ExperimentConfig& c)
{
    if (!c.grid) {
        return std::nullopt;
    }
    return sampling::SamplingGrid(c.dimension, c.grid->lower, c.grid->upper, c.grid->spacing);
}

}  // namespace biharm::app
