#pragma once

#include <cstdint>
#include <string>

#include "pvilab/linalg.hpp"

namespace pvi {

// One configuration drives every suite; fields map 1:1 onto CLI flags and
// config-file keys (flat key = value lines, flags win).
struct RunConfig {
    cplx c{0.5, 0.0};
    cplx kappa0{1.0 / 3.0, 0.0};
    cplx kappa1{1.0 / 5.0, 0.0};
    cplx kappat{1.0 / 7.0, 0.0};
    cplx kappa_inf{1.0 / 2.0, 0.0};

    double tol_quad = 1e-12;   // quadrature error target per segment
    double tol_ode = 1e-12;    // ODE local error target
    double tol_report = 0.0;   // 0 = per-check defaults; else overrides all
    double radius_factor = 0.25;

    int word_len = 0;          // 0 = per-suite default
    int samples = 0;           // 0 = per-suite default
    std::uint64_t seed = 20240901;

    // Monodromy/holonomy basepoint rule: "auto" places lambda* on the circle
    // |l| = min(1,|c|)/4 off the puncture hull; "re,im" pins it explicitly.
    std::string basepoint = "auto";

    std::string out = "-";     // "-" = stdout
    std::string format = "json";  // json | csv

    void validate() const;     // throws ConfigError
};

// Parse "re,im" or "re" into a complex number; throws ConfigError.
cplx parse_complex(const std::string& text);

// Flat key = value file ('#' comments); unknown keys are errors.
RunConfig load_config_file(const std::string& path, RunConfig base);
void apply_config_line(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace pvi
