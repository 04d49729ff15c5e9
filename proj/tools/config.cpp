#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace refrabill::tools {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + v);
    }
}

} // namespace

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("list", item));
    }
    return out;
}

std::vector<int> parse_symbol_list(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_double_list(csv)) {
        const int s = int(v);
        if (s < 1 || double(s) != v)
            throw std::runtime_error("word symbols are 1-based integers, got " + csv);
        out.push_back(s - 1);
    }
    return out;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);

    std::string section;
    std::string line;
    std::map<int, double> cosk, sink;
    std::string family = "ellipse";
    double a = cfg.curve.a, b = cfg.curve.b, c0 = 1.0;
    bool curve_seen = false;

    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section at line " +
                                         std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "curve" && section != "params" && section != "run")
                throw std::runtime_error("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (section == "curve") {
            curve_seen = true;
            if (key == "family") family = val;
            else if (key == "a") a = to_double(key, val);
            else if (key == "b") b = to_double(key, val);
            else if (key == "c0") c0 = to_double(key, val);
            else if (key.rfind("cos", 0) == 0) cosk[std::stoi(key.substr(3))] = to_double(key, val);
            else if (key.rfind("sin", 0) == 0) sink[std::stoi(key.substr(3))] = to_double(key, val);
            else throw std::runtime_error("config: unknown key '" + key + "' in [curve]");
        } else if (section == "params") {
            if (key == "omega2") cfg.omega2 = to_double(key, val);
            else if (key == "mu") cfg.mu = to_double(key, val);
            else if (key == "calE") cfg.calE = to_double(key, val);
            else if (key == "h") cfg.h = to_double(key, val);
            else if (key == "h_grid") cfg.h_grid = parse_double_list(val);
            else throw std::runtime_error("config: unknown key '" + key + "' in [params]");
        } else if (section == "run") {
            if (key == "half_width") cfg.half_width_rel = to_double(key, val);
            else if (key == "seed") cfg.seed = static_cast<unsigned long>(to_double(key, val));
            else if (key == "outdir") cfg.outdir = val;
            else if (key == "threads") cfg.threads = int(to_double(key, val));
            else throw std::runtime_error("config: unknown key '" + key + "' in [run]");
        } else {
            throw std::runtime_error("config: key outside any section at line " +
                                     std::to_string(lineno));
        }
    }

    if (curve_seen) {
        if (family == "ellipse") {
            cfg.curve = CurveSpec::ellipse(a, b);
        } else if (family == "polar_fourier") {
            int kmax = 0;
            for (const auto& [k, v] : cosk) kmax = std::max(kmax, k);
            for (const auto& [k, v] : sink) kmax = std::max(kmax, k);
            std::vector<double> cc(kmax, 0.0), ss(kmax, 0.0);
            for (const auto& [k, v] : cosk) {
                if (k < 1) throw std::runtime_error("config: cos harmonics start at cos1");
                cc[k - 1] = v;
            }
            for (const auto& [k, v] : sink) {
                if (k < 1) throw std::runtime_error("config: sin harmonics start at sin1");
                ss[k - 1] = v;
            }
            cfg.curve = CurveSpec::polar_fourier(c0, cc, ss);
        } else {
            throw std::runtime_error("config: unknown curve family '" + family + "'");
        }
    }
    return cfg;
}

std::string describe_config(const RunConfig& cfg) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string s = "{";
    if (cfg.curve.family == CurveSpec::Family::Ellipse) {
        s += "\"curve\":{\"family\":\"ellipse\",\"a\":" + num(cfg.curve.a) +
             ",\"b\":" + num(cfg.curve.b) + "}";
    } else {
        s += "\"curve\":{\"family\":\"polar_fourier\",\"c0\":" + num(cfg.curve.c0);
        s += ",\"cos\":[";
        for (std::size_t k = 0; k < cfg.curve.cos_coef.size(); ++k)
            s += (k ? "," : "") + num(cfg.curve.cos_coef[k]);
        s += "],\"sin\":[";
        for (std::size_t k = 0; k < cfg.curve.sin_coef.size(); ++k)
            s += (k ? "," : "") + num(cfg.curve.sin_coef[k]);
        s += "]}";
    }
    s += ",\"params\":{\"omega2\":" + num(cfg.omega2) + ",\"mu\":" + num(cfg.mu) +
         ",\"calE\":" + num(cfg.calE) + ",\"h\":" + num(cfg.h) + "}";
    s += ",\"run\":{\"half_width\":" + num(cfg.half_width_rel) +
         ",\"seed\":" + std::to_string(cfg.seed) + "}";
    s += "}";
    return s;
}

} // namespace refrabill::tools
