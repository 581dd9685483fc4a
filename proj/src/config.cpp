#include "kslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "kslab/errors.hpp"

namespace kslab {

RadialGrid RunConfig::make_radial_grid() const {
    if (grading == "uniform") return RadialGrid::uniform(model.n, model.R, cells);
    return RadialGrid::geometric(model.n, model.R, cells, grading_ratio);
}

SGrid RunConfig::make_s_grid() const {
    if (s_grading == "uniform") return SGrid::uniform(model.n, model.Rn(), s_cells);
    const double p = s_power > 0.0 ? s_power : static_cast<double>(model.n);
    return SGrid::power(model.n, model.Rn(), s_cells, p);
}

namespace {

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

class Parser {
public:
    Parser(const std::string& text, const std::string& origin) : origin_(origin) {
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#' || t[0] == ';') continue;
            if (t.front() == '[') {
                if (t.back() != ']') fail(lineno, "malformed section header");
                section = trim(t.substr(1, t.size() - 2));
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos) fail(lineno, "expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty()) fail(lineno, "empty key");
            const std::string full = section.empty() ? key : section + "." + key;
            if (entries_.count(full)) fail(lineno, "duplicate key '" + full + "'");
            entries_[full] = Entry{value, lineno, false};
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        std::ostringstream out;
        out << origin_ << ":" << line << ": " << msg;
        throw config_error(out.str());
    }

    [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
        const auto it = entries_.find(key);
        const int line = it == entries_.end() ? 0 : it->second.line;
        std::ostringstream out;
        out << origin_ << ":" << line << ": field '" << key << "': " << msg;
        throw config_error(out.str());
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        it->second.used = true;
        return it->second.value;
    }

    double get_number(const std::string& key, double fallback) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        it->second.used = true;
        char* end = nullptr;
        const double v = std::strtod(it->second.value.c_str(), &end);
        if (end == it->second.value.c_str() || *end != '\0')
            fail_key(key, "not a number: '" + it->second.value + "'");
        return v;
    }

    long get_integer(const std::string& key, long fallback) {
        const double v = get_number(key, static_cast<double>(fallback));
        const long n = static_cast<long>(v);
        if (static_cast<double>(n) != v) fail_key(key, "expected an integer");
        return n;
    }

    bool get_bool(const std::string& key, bool fallback) {
        const std::string v = get_string(key, fallback ? "true" : "false");
        if (v == "true" || v == "on" || v == "1") return true;
        if (v == "false" || v == "off" || v == "0") return false;
        fail_key(key, "expected true/false");
    }

    std::vector<double> get_list(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return {};
        it->second.used = true;
        std::vector<double> out;
        std::istringstream in(it->second.value);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            char* end = nullptr;
            out.push_back(std::strtod(tok.c_str(), &end));
            if (end == tok.c_str() || *end != '\0') fail_key(key, "bad list element '" + tok + "'");
        }
        return out;
    }

    void reject_unused() const {
        for (const auto& [key, e] : entries_)
            if (!e.used) fail_key(key, "unknown key");
    }

private:
    std::string origin_;
    std::map<std::string, Entry> entries_;
};

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    Parser p(text, origin);
    RunConfig cfg;
    cfg.raw_text = text;

    cfg.model.n = static_cast<int>(p.get_integer("model.n", cfg.model.n));
    cfg.model.R = p.get_number("model.R", cfg.model.R);
    cfg.model.kappa = p.get_number("model.kappa", cfg.model.kappa);
    cfg.model.lambda = p.get_number("model.lambda", cfg.model.lambda);
    cfg.model.mu = p.get_number("model.mu", cfg.model.mu);
    cfg.model.m0 = p.get_number("model.m0", cfg.model.m0);
    cfg.model.m1 = p.get_number("model.m1", cfg.model.m1);
    try {
        validate_parameters(cfg.model);
    } catch (const invalid_field_error& e) {
        throw config_error(origin + ": [model] " + e.what());
    }

    const std::string r1 = p.get_string("datum.r1", "auto");
    if (r1 == "auto") cfg.datum_r1_auto = true;
    else {
        char* end = nullptr;
        cfg.datum.r1 = std::strtod(r1.c_str(), &end);
        if (end == r1.c_str() || *end != '\0') p.fail_key("datum.r1", "expected a number or 'auto'");
    }
    cfg.datum.smoothness = static_cast<int>(p.get_integer("datum.smoothness", cfg.datum.smoothness));
    cfg.datum.delta = p.get_number("datum.delta", cfg.datum.delta);

    cfg.cells = static_cast<std::size_t>(p.get_integer("grid.cells", static_cast<long>(cfg.cells)));
    cfg.grading = p.get_string("grid.grading", cfg.grading);
    if (cfg.grading != "uniform" && cfg.grading != "geometric")
        p.fail_key("grid.grading", "expected uniform or geometric");
    cfg.grading_ratio = p.get_number("grid.grading_ratio", cfg.grading_ratio);
    cfg.s_cells = static_cast<std::size_t>(
        p.get_integer("grid.s_cells", static_cast<long>(cfg.cells)));
    cfg.s_grading = p.get_string("grid.s_grading", cfg.s_grading);
    if (cfg.s_grading != "uniform" && cfg.s_grading != "power")
        p.fail_key("grid.s_grading", "expected uniform or power");
    cfg.s_power = p.get_number("grid.s_power", cfg.s_power);

    cfg.control.cfl_diffusion = p.get_number("control.cfl_diffusion", cfg.control.cfl_diffusion);
    cfg.control.cfl_advection = p.get_number("control.cfl_advection", cfg.control.cfl_advection);
    cfg.control.dt_min = p.get_number("control.dt_min", cfg.control.dt_min);
    cfg.control.blowup_threshold =
        p.get_number("control.blowup_threshold", cfg.control.blowup_threshold);
    cfg.control.t_end = p.get_number("control.t_end", cfg.control.t_end);
    try {
        cfg.control.validate();
    } catch (const invalid_field_error& e) {
        throw config_error(origin + ": [control] " + e.what());
    }

    const std::string solver = p.get_string("run.solver", "u");
    if (solver == "u") cfg.solver = SolverChoice::U;
    else if (solver == "w") cfg.solver = SolverChoice::W;
    else if (solver == "both") cfg.solver = SolverChoice::Both;
    else p.fail_key("run.solver", "expected u, w or both");
    cfg.record_interval = p.get_number("run.record_interval", cfg.record_interval);
    if (!(cfg.record_interval > 0.0)) p.fail_key("run.record_interval", "must be positive");

    cfg.diagnostics = p.get_bool("diagnostics.checks", cfg.diagnostics);
    cfg.gamma = p.get_number("diagnostics.gamma", cfg.gamma);
    cfg.s0_list = p.get_list("diagnostics.s0");
    cfg.certificate = p.get_bool("certificate.request", cfg.certificate);

    p.reject_unused();
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

} // namespace kslab
