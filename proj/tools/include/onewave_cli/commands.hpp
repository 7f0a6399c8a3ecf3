#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "onewave/imaging.hpp"

namespace onewave::cli {

enum class Method { Scheme1, Scheme2, Classical, Esm };

struct RunConfig {
    std::string command;
    std::string scene_path;
    std::string data_path;
    std::string out_path;
    std::string multistatic_path;
    Method method = Method::Scheme2;
    ImagingConfig imaging;
    std::size_t n_theta = 512;
    double incident_angle = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 1;
    double disk_radius = 1.0;  ///< spectrum: test-disk radius h
    std::vector<double> alphas;
    ClassicalMethod classical = ClassicalMethod::QuarterPower;
};

int cmd_synthesize(const RunConfig& cfg, std::ostream& out);
int cmd_invert(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

/// Full command line front end. Exit codes: 0 success, 1 invalid input, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onewave::cli
