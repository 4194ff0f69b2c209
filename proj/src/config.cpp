#include "ckg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ckg/errors.hpp"

namespace ckg {
namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

const char* const SECTIONS[] = {"grid", "time", "system", "ic", "noise", "output", "error"};

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

// Parsed key-value document with line tracking. Keys are section-qualified
// ("grid.M"); values are raw strings until a typed accessor pulls them.
class Doc {
public:
    static Doc parse(const std::string& text) {
        Doc doc;
        std::istringstream in(text);
        std::string raw, section;
        int ln = 0;
        while (std::getline(in, raw)) {
            ++ln;
            std::string line = raw;
            if (const auto pos = line.find_first_of("#;"); pos != std::string::npos)
                line.erase(pos);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("unterminated section header", {}, ln);
                section = trim(line.substr(1, line.size() - 2));
                if (std::find(std::begin(SECTIONS), std::end(SECTIONS), section) ==
                    std::end(SECTIONS))
                    throw ConfigError("unknown section [" + section + "]", section, ln);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected key = value", {}, ln);
            const std::string key = trim(line.substr(0, eq));
            if (key.empty())
                throw ConfigError("empty key", {}, ln);
            const std::string full = section.empty() ? key : section + "." + key;
            if (doc.entries_.count(full))
                throw ConfigError("duplicate key " + full, full, ln);
            doc.entries_[full] = Entry{trim(line.substr(eq + 1)), ln, false};
        }
        return doc;
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const Entry& at(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key " + key, key);
        it->second.used = true;
        return it->second;
    }

    std::string get_string(const std::string& key) const { return at(key).value; }

    double get_double(const std::string& key) const {
        const Entry& e = at(key);
        try {
            std::size_t n = 0;
            const double v = std::stod(e.value, &n);
            if (n != e.value.size())
                throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(key + " must be a number, got '" + e.value + "'", key, e.line);
        }
    }

    double get_double_or(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : dflt;
    }

    long get_long(const std::string& key) const {
        const Entry& e = at(key);
        long v = 0;
        const auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc() || p != e.value.data() + e.value.size())
            throw ConfigError(key + " must be an integer, got '" + e.value + "'", key, e.line);
        return v;
    }

    long get_long_or(const std::string& key, long dflt) const {
        return has(key) ? get_long(key) : dflt;
    }

    std::uint64_t get_seed(const std::string& key) const {
        const Entry& e = at(key);
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc() || p != e.value.data() + e.value.size())
            throw ConfigError(key + " must be a nonnegative integer, got '" + e.value + "'",
                              key, e.line);
        return v;
    }

    bool get_bool_or(const std::string& key, bool dflt) const {
        if (!has(key))
            return dflt;
        const Entry& e = at(key);
        if (e.value == "true")
            return true;
        if (e.value == "false")
            return false;
        throw ConfigError(key + " must be true or false, got '" + e.value + "'", key, e.line);
    }

    std::vector<std::string> get_list(const std::string& key) const {
        const Entry& e = at(key);
        if (e.value.empty() || e.value.back() == ',')
            throw ConfigError(key + " must be a comma-separated list", key, e.line);
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(e.value);
        while (std::getline(in, item, ','))
            out.push_back(trim(item));
        if (out.empty() || out.back().empty())
            throw ConfigError(key + " must be a comma-separated list", key, e.line);
        return out;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        const Entry& e = at(key);
        std::vector<double> out;
        for (const std::string& item : get_list(key)) {
            try {
                std::size_t n = 0;
                const double v = std::stod(item, &n);
                if (n != item.size())
                    throw std::invalid_argument("");
                out.push_back(v);
            } catch (const std::exception&) {
                throw ConfigError(key + " has a non-numeric entry '" + item + "'", key,
                                  e.line);
            }
        }
        return out;
    }

    int line_of(const std::string& key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    /// Every key must have been consumed by the schema walk above.
    void reject_unused() const {
        const Entry* first = nullptr;
        const std::string* name = nullptr;
        for (const auto& [key, e] : entries_)
            if (!e.used && (!first || e.line < first->line)) {
                first = &e;
                name = &key;
            }
        if (first)
            throw ConfigError("unrecognized key " + *name + " for this configuration", *name,
                              first->line);
    }

private:
    std::map<std::string, Entry> entries_;
};

SolitonSpec read_soliton(const Doc& doc, const std::string& prefix, int n_components,
                         const char* what) {
    SolitonSpec spec;
    spec.c = doc.get_double(prefix + "c");
    if (!(std::fabs(spec.c) < 1.0))
        throw ConfigError(std::string(what) + " speed must satisfy |c| < 1, got " +
                              std::to_string(spec.c),
                          prefix + "c", doc.line_of(prefix + "c"));
    if (doc.has(prefix + "alpha"))
        spec.alpha = doc.get_double_list(prefix + "alpha");
    else if (n_components == 1)
        spec.alpha = {1.0};
    else
        throw ConfigError(std::string(what) + " needs " + std::to_string(n_components) +
                              " amplitudes in " + prefix + "alpha",
                          prefix + "alpha");
    if (static_cast<int>(spec.alpha.size()) != n_components)
        throw ConfigError("expected " + std::to_string(n_components) + " amplitudes, got " +
                              std::to_string(spec.alpha.size()),
                          prefix + "alpha", doc.line_of(prefix + "alpha"));
    double asq = 0.0;
    for (double a : spec.alpha)
        asq += a * a;
    if (std::fabs(asq - 1.0) > 1e-12)
        throw ConfigError("amplitudes must satisfy sum alpha^2 = 1, got " + std::to_string(asq),
                          prefix + "alpha", doc.line_of(prefix + "alpha"));
    spec.x0 = doc.get_double_or(prefix + "x0", 0.0);
    return spec;
}

} // namespace

bool exact_step_count(double t, double tau, long* steps) {
    if (!(tau > 0.0))
        return false;
    const double ratio = t / tau;
    const double r = std::round(ratio);
    if (r < 0.0)
        return false;
    const double ulp = std::nextafter(std::fabs(ratio), std::numeric_limits<double>::infinity()) -
                       std::fabs(ratio);
    if (std::fabs(ratio - r) > 0.5 * ulp)
        return false;
    if (steps)
        *steps = std::lround(r);
    return true;
}

long RunConfig::steps() const { return std::lround(t_final / tau); }

long RunConfig::step_of(double t) const { return std::lround(t / tau); }

RunConfig parse_config(const std::string& text) {
    const Doc doc = Doc::parse(text);
    RunConfig cfg;

    const long schema = doc.get_long("schema_version");
    if (schema != 1)
        throw ConfigError("unsupported schema_version " + std::to_string(schema) +
                              " (this build reads version 1)",
                          "schema_version", doc.line_of("schema_version"));

    cfg.a = doc.get_double("grid.a");
    cfg.b = doc.get_double("grid.b");
    if (!(cfg.b > cfg.a))
        throw ConfigError("grid.b must exceed grid.a", "grid.b", doc.line_of("grid.b"));
    const long M = doc.get_long("grid.M");
    if (M < 4 || M % 2 != 0)
        throw ConfigError("grid.M must be an even integer >= 4, got " + std::to_string(M),
                          "grid.M", doc.line_of("grid.M"));
    cfg.M = static_cast<int>(M);

    cfg.tau = doc.get_double("time.tau");
    if (!(cfg.tau > 0.0))
        throw ConfigError("time.tau must be positive", "time.tau", doc.line_of("time.tau"));
    cfg.t_final = doc.get_double("time.t_final");
    if (!(cfg.t_final > 0.0))
        throw ConfigError("time.t_final must be positive", "time.t_final",
                          doc.line_of("time.t_final"));
    long nsteps = 0;
    if (!exact_step_count(cfg.t_final, cfg.tau, &nsteps) || nsteps < 1)
        throw ConfigError("t_final/tau must be a whole number of steps (within half an ulp)",
                          "time.t_final", doc.line_of("time.t_final"));

    const long nc = doc.get_long_or("system.n_components", 1);
    if (nc < 1)
        throw ConfigError("system.n_components must be >= 1", "system.n_components",
                          doc.line_of("system.n_components"));
    cfg.n_components = static_cast<int>(nc);
    cfg.dealias = doc.get_bool_or("system.dealias", false);

    const std::string ic_type = doc.get_string("ic.type");
    if (ic_type == "single_soliton") {
        cfg.ic_type = ICType::single_soliton;
        cfg.soliton = read_soliton(doc, "ic.", cfg.n_components, "soliton");
    } else if (ic_type == "collision_1c" || ic_type == "collision_3c") {
        cfg.ic_type = ic_type == "collision_1c" ? ICType::collision_1c : ICType::collision_3c;
        const int need = cfg.ic_type == ICType::collision_1c ? 1 : 3;
        if (cfg.n_components != need)
            throw ConfigError(ic_type + " requires n_components = " + std::to_string(need) +
                                  ", got " + std::to_string(cfg.n_components),
                              "ic.type", doc.line_of("ic.type"));
        cfg.x0 = doc.get_double("ic.x0");
        if (!(cfg.x0 > 0.0))
            throw ConfigError("collision dislocation ic.x0 must be positive, got " +
                                  std::to_string(cfg.x0),
                              "ic.x0", doc.line_of("ic.x0"));
    } else if (ic_type == "from_file") {
        cfg.ic_type = ICType::from_file;
        cfg.ic_file = doc.get_string("ic.file");
        if (cfg.ic_file.empty())
            throw ConfigError("ic.file must name a sample file", "ic.file",
                              doc.line_of("ic.file"));
    } else {
        throw ConfigError("ic.type must be single_soliton, collision_1c, collision_3c or "
                          "from_file, got '" +
                              ic_type + "'",
                          "ic.type", doc.line_of("ic.type"));
    }

    if (doc.has("noise.snr_db") || doc.has("noise.seed") || doc.has("noise.fields")) {
        NoiseConfig noise;
        noise.snr_db = doc.get_double("noise.snr_db");
        noise.seed = doc.get_seed("noise.seed");
        if (doc.has("noise.fields")) {
            noise.on_psi0 = noise.on_psi1 = noise.on_q0 = false;
            for (const std::string& f : doc.get_list("noise.fields")) {
                if (f == "psi0")
                    noise.on_psi0 = true;
                else if (f == "psi1")
                    noise.on_psi1 = true;
                else if (f == "q0")
                    noise.on_q0 = true;
                else
                    throw ConfigError("noise.fields entries must be among psi0, psi1, q0; got '" +
                                          f + "'",
                                      "noise.fields", doc.line_of("noise.fields"));
            }
        }
        cfg.noise = noise;
    }

    if (doc.has("output.snapshot_times")) {
        cfg.snapshot_times = doc.get_double_list("output.snapshot_times");
        for (double t : cfg.snapshot_times) {
            long s = 0;
            if (t < 0.0 || t > cfg.t_final || !exact_step_count(t, cfg.tau, &s))
                throw ConfigError("snapshot time " + std::to_string(t) +
                                      " is not a step multiple inside [0, t_final]",
                                  "output.snapshot_times",
                                  doc.line_of("output.snapshot_times"));
        }
        std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
        cfg.snapshot_times.erase(
            std::unique(cfg.snapshot_times.begin(), cfg.snapshot_times.end()),
            cfg.snapshot_times.end());
    }
    cfg.energy_every = doc.get_long_or("output.energy_every", 0);
    if (cfg.energy_every < 0)
        throw ConfigError("output.energy_every must be >= 0", "output.energy_every",
                          doc.line_of("output.energy_every"));
    if (doc.has("output.dir"))
        cfg.output_dir = doc.get_string("output.dir");

    if (doc.has("error.exact_c"))
        cfg.error_vs_exact = read_soliton(doc, "error.exact_", cfg.n_components, "reference");

    doc.reject_unused();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace ckg
