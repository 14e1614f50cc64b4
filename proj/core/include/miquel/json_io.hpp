#pragma once

#include <string>

#include "miquel/coords.hpp"
#include "miquel/invariants.hpp"
#include "miquel/pattern.hpp"
#include "miquel/twobytwo.hpp"

namespace miquel {

// Pattern document:
//   {"m":int,"n":int,"s":int,"u":[ux,uy],"v":[vx,vy],"vertices":[[x,y],...]}
// vertices row-major, y outer, x inner. Parse errors throw InvalidParameters.
std::string pattern_to_json(const TorusPattern& p);
TorusPattern pattern_from_json(const std::string& text);

// Phi document:
//   {"m":..,"n":..,"s":..,"phi":{"i,j":{"N":..,"W":..,"S":..,"E":..}}}
// with half-integer face keys and angles in radians.
std::string phi_to_json(const PhiField& f);
PhiField phi_from_json(const std::string& text);

std::string validation_report_to_json(const ValidationReport& r);
std::string condition_report_to_json(const ConditionReport& r);
std::string invariant_report_to_json(const InvariantReport& r);
std::string quartic_report_to_json(const QuarticModel& q,
                                   const std::vector<double>& step_residuals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace miquel
