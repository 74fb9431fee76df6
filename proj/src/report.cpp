#include "pvilab/report.hpp"

#include <fstream>
#include <iostream>

namespace pvi {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Mat& m) {
    json entries = json::array();
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) entries.push_back(complex_to_json(m.at(i, j)));
    return json{{"order", m.n}, {"entries", entries}};
}

json config_to_json(const RunConfig& config) {
    return json{{"c", complex_to_json(config.c)},
                {"kappa0", complex_to_json(config.kappa0)},
                {"kappa1", complex_to_json(config.kappa1)},
                {"kappat", complex_to_json(config.kappat)},
                {"kappa_inf", complex_to_json(config.kappa_inf)},
                {"tol_quad", config.tol_quad},
                {"tol_ode", config.tol_ode},
                {"tol_report", config.tol_report},
                {"radius_factor", config.radius_factor},
                {"basepoint", config.basepoint},
                {"word_len", config.word_len},
                {"samples", config.samples},
                {"seed", config.seed}};
}

json check_entry(const std::string& name, double value, double tolerance, bool pass) {
    return json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

namespace {

void flatten(const json& node, const std::string& prefix, std::string& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (node.is_array()) {
        size_t i = 0;
        for (const auto& item : node) {
            flatten(item, prefix + "[" + std::to_string(i) + "]", out);
            ++i;
        }
    } else {
        out += prefix;
        out += ",";
        out += node.dump();
        out += "\n";
    }
}

}  // namespace

std::string report_to_csv(const json& report) {
    std::string out = "key,value\n";
    flatten(report, "", out);
    return out;
}

std::string render_report(const json& report, const std::string& format) {
    if (format == "csv") return report_to_csv(report);
    return report.dump(2) + "\n";
}

void emit_report(const json& report, const RunConfig& config) {
    std::string text = render_report(report, config.format);
    if (config.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out);
    if (!out) throw ConfigError("report: cannot open output path '" + config.out + "'");
    out << text;
    if (!out.good()) throw ConfigError("report: write failed for '" + config.out + "'");
}

}  // namespace pvi
