#include "pvilab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pvi {

void RunConfig::validate() const {
    if (std::abs(c) < 1e-9 || std::abs(c - 1.0) < 1e-9)
        throw ConfigError("config: c must stay away from {0, 1}");
    if (!(tol_quad > 0.0) || !(tol_ode > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (tol_report < 0.0) throw ConfigError("config: tol_report must be >= 0");
    if (!(radius_factor > 0.0) || radius_factor >= 0.5)
        throw ConfigError("config: radius_factor must lie in (0, 0.5)");
    if (word_len < 0 || samples < 0) throw ConfigError("config: counts must be >= 0");
    if (format != "json" && format != "csv")
        throw ConfigError("config: format must be json or csv");
    if (basepoint != "auto") parse_complex(basepoint);  // throws when malformed
}

cplx parse_complex(const std::string& text) {
    std::string s = text;
    auto comma = s.find(',');
    try {
        size_t used = 0;
        if (comma == std::string::npos) {
            double re = std::stod(s, &used);
            if (used != s.size()) throw ConfigError("trailing characters");
            return cplx(re, 0.0);
        }
        std::string re_s = s.substr(0, comma), im_s = s.substr(comma + 1);
        double re = std::stod(re_s, &used);
        if (used != re_s.size()) throw ConfigError("trailing characters");
        double im = std::stod(im_s, &used);
        if (used != im_s.size()) throw ConfigError("trailing characters");
        return cplx(re, im);
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse complex value '" + text +
                          "' (expected re or re,im)");
    }
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw ConfigError("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + v + "'");
    }
}

long long parse_int(const std::string& v) {
    try {
        size_t used = 0;
        long long n = std::stoll(v, &used);
        if (used != v.size()) throw ConfigError("trailing characters");
        return n;
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse integer '" + v + "'");
    }
}

}  // namespace

void apply_config_line(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "c") config.c = parse_complex(value);
    else if (key == "kappa0") config.kappa0 = parse_complex(value);
    else if (key == "kappa1") config.kappa1 = parse_complex(value);
    else if (key == "kappat") config.kappat = parse_complex(value);
    else if (key == "kappa_inf") config.kappa_inf = parse_complex(value);
    else if (key == "tol_quad") config.tol_quad = parse_double(value);
    else if (key == "tol_ode") config.tol_ode = parse_double(value);
    else if (key == "tol_report") config.tol_report = parse_double(value);
    else if (key == "radius_factor") config.radius_factor = parse_double(value);
    else if (key == "word_len") config.word_len = static_cast<int>(parse_int(value));
    else if (key == "samples") config.samples = static_cast<int>(parse_int(value));
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(value));
    else if (key == "basepoint") config.basepoint = value;
    else if (key == "out") config.out = value;
    else if (key == "format") config.format = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        apply_config_line(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return base;
}

}  // namespace pvi
