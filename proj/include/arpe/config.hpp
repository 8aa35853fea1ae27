#ifndef ARPE_CONFIG_HPP
#define ARPE_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "arpe/mc.hpp"

namespace arpe {

/// Flat key = value file. Blank lines and text after '#' are ignored; a
/// repeated key is an error.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& is);
KeyValues read_key_values_file(const std::string& path);

/// Process from shorthand text:
///   whitenoise | ar1:PHI | ma1:THETA | arma11:PHI,THETA
///   arma:PHI1 PHI2 ...;THETA1 THETA2 ...
///   expdecay:C,RHO | algdecay:C,GAMMA | coeffs:A1,A2,...
/// An optional trailing "@SIGMA2" sets the innovation variance.
ProcessSpec parse_spec(const std::string& text);

/// Process from the spec block of a config:
///   spec = <shorthand>            or
///   kind = arma|ar|whitenoise     with phi, theta (space or comma lists)
///   kind = expdecay               with c, rho
///   kind = algdecay               with c, gamma
///   kind = coeffs                 with coeffs
///   sigma2 = <value>              (optional, default 1)
ProcessSpec spec_from_config(const KeyValues& kv);

/// Experiment from a config. Keys besides the spec block:
///   cells = 60/7 120/10 ...       (K_n may be omitted: "60 120" uses floor(sqrt(n)))
///   reps, master_seed (or seed), criteria, mode, baseline = 60/7, jobs
/// Unknown keys raise ConfigError.
ExperimentConfig experiment_from_config(const KeyValues& kv);

/// "60/7,120/10" or "60 120"; a missing K_n defaults to floor(sqrt(n)).
std::vector<Cell> parse_cells(const std::string& text);

/// Comma- or space-separated real numbers.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace arpe

#endif  // ARPE_CONFIG_HPP
