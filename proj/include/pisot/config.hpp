#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pisot/error.hpp"

namespace pisot {

/// Run configuration shared by the command-line front end and reports.
struct Config {
  unsigned long precision = 128;
  std::size_t orbit_cap = 1000000;
  std::size_t wf_depth = 30;
  long height = 100;
  std::size_t period_cap = 40;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string format = "text";

  /// Throws ParseError on an unknown key or a malformed value.
  void set(const std::string& key, const std::string& value) {
    auto num = [&](auto& field) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size() || value.front() == '-') throw std::invalid_argument("");
        field = static_cast<std::remove_reference_t<decltype(field)>>(v);
      } catch (const std::exception&) {
        throw ParseError("malformed value for " + key + ": '" + value + "'");
      }
    };
    if (key == "precision") num(precision);
    else if (key == "orbit_cap") num(orbit_cap);
    else if (key == "wf_depth") num(wf_depth);
    else if (key == "height") num(height);
    else if (key == "period_cap") num(period_cap);
    else if (key == "seed") num(seed);
    else if (key == "threads") num(threads);
    else if (key == "format") {
      if (value != "text" && value != "json") throw ParseError("format must be text or json");
      format = value;
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }

  void validate() const {
    if (precision == 0 || orbit_cap == 0 || wf_depth == 0 || height <= 0 || period_cap == 0 || threads == 0)
      throw ParseError("configuration caps must be positive");
  }

  /// Reads "key = value" lines; '#' starts a comment.
  void load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value: '" + line + "'");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    load(in);
  }

  /// PISOT_SEED overrides the seed and nothing else.
  void apply_environment() {
    if (const char* s = std::getenv("PISOT_SEED")) set("seed", s);
  }
};

}  // namespace pisot
