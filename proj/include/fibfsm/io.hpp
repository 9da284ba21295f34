#pragma once

// JSON / CSV serialization.  Exact rationals are emitted as fraction
// strings so nothing is rounded on the way out.

#include <sstream>
#include <string>

#include <json.hpp>

#include "fsm.hpp"
#include "subshift.hpp"
#include "transfer.hpp"

namespace fibfsm {

inline constexpr int kSchemaVersion = 1;

inline std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline nlohmann::json to_json(const SubwordSet& s) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : s.words)
    words.push_back(w.str());
  return {{"schema_version", kSchemaVersion},
          {"length", s.length},
          {"count", s.words.size()},
          {"words", words}};
}

inline nlohmann::json to_json(const BlockParse& p) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : p.blocks)
    blocks.push_back(b.str());
  return {{"schema_version", kSchemaVersion},
          {"direction", p.direction == ParseDirection::rightward
                            ? "rightward"
                            : "leftward"},
          {"prefix", p.prefix.str()},
          {"blocks", blocks},
          {"partial", p.partial.str()}};
}

inline std::string seed_case_name(SeedCase c) {
  switch (c) {
  case SeedCase::Zero: return "zero";
  case SeedCase::AlphaZero: return "alpha_zero";
  case SeedCase::BetaZero: return "beta_zero";
  case SeedCase::SameSign: return "same_sign";
  case SeedCase::OppositeSign: return "opposite_sign";
  }
  return "?";
}

inline nlohmann::json to_json(const GrowthCertificate& c) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"achieved_property", std::string(1, c.achieved_property)},
                      {"achieved_at_step", c.achieved_at_step},
                      {"steps_to_bound", c.steps_to_bound},
                      {"gap", rational_str(c.gap)},
                      {"final_modulus", rational_str(c.final_modulus)},
                      {"direction", c.direction}};
  if (c.seed_case)
    j["case"] = seed_case_name(*c.seed_case);
  if (!c.trajectory.empty()) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& v : c.trajectory)
      t.push_back({rational_str(v.y1), rational_str(v.y2)});
    j["trajectory"] = t;
  }
  return j;
}

inline std::string to_csv(const StabilityReport& r) {
  std::ostringstream os;
  os << "n,l_n,r_n,dim,sigma_min,norm_p1,norm_p2,norm_pinf,invertible\n";
  os.precision(17);
  for (const auto& row : r.rows)
    os << row.n << ',' << row.l << ',' << row.r << ',' << row.dim << ','
       << row.sigma_min << ',' << row.norm_p1 << ',' << row.norm_p2 << ','
       << row.norm_pinf << ',' << (row.invertible ? 1 : 0) << '\n';
  return os.str();
}

inline nlohmann::json to_json(const StabilityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"l_n", row.l},
                    {"r_n", row.r},
                    {"dim", row.dim},
                    {"sigma_min", row.sigma_min},
                    {"norm_p1", row.norm_p1},
                    {"norm_p2", row.norm_p2},
                    {"norm_pinf", row.norm_pinf},
                    {"invertible", row.invertible}});
  return {{"schema_version", kSchemaVersion},
          {"schedule", r.schedule},
          {"seed", r.seed},
          {"p", r.p},
          {"running_max", r.running_max},
          {"last_new_max_index", r.last_new_max_index},
          {"n0", r.n0},
          {"plateau_reached", r.plateau_reached()},
          {"rows", rows}};
}

inline std::string to_csv(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "n,l_n,r_n,dim,deviation\n";
  os.precision(17);
  for (const auto& row : t.rows)
    os << row.n << ',' << row.l << ',' << row.r << ',' << row.dim << ','
       << row.deviation << '\n';
  return os.str();
}

inline nlohmann::json to_json(const ConvergenceTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows)
    rows.push_back({{"n", row.n},
                    {"l_n", row.l},
                    {"r_n", row.r},
                    {"dim", row.dim},
                    {"deviation", row.deviation}});
  return {{"schema_version", kSchemaVersion},
          {"schedule", t.schedule},
          {"rhs_index", t.rhs_index},
          {"window_lo", t.window_lo},
          {"window_hi", t.window_hi},
          {"reference", t.reference},
          {"rows", rows}};
}

} // namespace fibfsm
