#pragma once

#include <filesystem>
#include <string>

#include "rmbmi/blur.hpp"
#include "rmbmi/experiment.hpp"

namespace rmbmi {

/// Decimal number or a multiple of pi: "0.157", "pi", "-pi/6", "3pi/20",
/// "3*pi/20", "2.5pi". Also "inf", "-inf" and plain fractions like "1/255".
/// Throws std::invalid_argument.
double parse_angle(const std::string& text);

/// Experiment config from YAML text. Relative corpus directories resolve
/// against `base_dir`. Every problem found is reported in one ConfigError,
/// one "line N: ..." entry per line of the message.
ExperimentConfig parse_experiment_config(const std::string& yaml_text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Motion profile from YAML, either explicit segments
///   segments: [{t_start: 0, t_end: 1, a0: 0, a1: pi/20, a2: 0}, ...]
/// or one shortcut
///   ucm: {omega: pi/20, exposure: 1}
///   uacm: {omega: pi/20, alpha: pi/200, exposure: 1}
///   rcm: {omega: pi/20, alpha: pi/200, exposure: 2}
MotionProfile parse_profile_yaml(const std::string& yaml_text);
/// Segment form, readable by parse_profile_yaml.
std::string profile_to_yaml(const MotionProfile& profile);

}  // namespace rmbmi
