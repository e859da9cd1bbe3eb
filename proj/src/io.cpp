#include "sphericity/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <set>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sphericity/errors.hpp"

namespace sphericity {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

}  // namespace

RowMatrix read_matrix_csv(std::istream& in, bool has_header) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::size_t fields = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = content.find(',', pos);
      const std::string_view field =
          trim(content.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (field.empty()) throw InvalidInput(at_line(line_no, "empty field " + std::to_string(fields + 1)));
      // from_chars rejects a leading '+', which some writers emit.
      const std::string_view digits = field.front() == '+' ? field.substr(1) : field;
      double x = 0.0;
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), x);
      if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
        throw InvalidInput(at_line(line_no, "cannot parse '" + std::string(field) + "' as a number"));
      if (!std::isfinite(x)) throw InvalidInput(at_line(line_no, "non-finite value '" + std::string(field) + "'"));
      values.push_back(x);
      ++fields;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw InvalidInput(at_line(line_no, "expected " + std::to_string(cols) + " fields, found " +
                                              std::to_string(fields)));
    }
    ++rows;
  }
  if (in.bad()) throw std::runtime_error("read error on input");
  if (rows == 0) throw InvalidInput("input contains no data rows");
  RowMatrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {});
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", {});

  static const std::set<std::string> known{"scenarios", "n_list", "p_list", "v_list", "reps",
                                           "alpha",     "methods", "master_seed", "threads"};
  ExperimentConfig cfg;
  std::vector<std::string> bad;
  std::vector<std::string> reasons;
  auto fail = [&](const std::string& key, const std::string& why) {
    bad.push_back(key);
    reasons.push_back(key + " (" + why + ")");
  };

  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) fail(key, "unknown key");

  // Each reader records its own failure and leaves the default in place.
  auto read = [&](const char* key, bool required, auto&& convert) {
    if (!doc.contains(key)) {
      if (required) fail(key, "missing");
      return;
    }
    try {
      convert(doc.at(key));
    } catch (const std::exception& e) {
      fail(key, e.what());
    }
  };

  auto int_list = [](const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty array of integers");
    std::vector<int> out;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw InvalidInput("expected integers");
      out.push_back(e.get<int>());
    }
    return out;
  };

  read("scenarios", true, [&](const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty array");
    for (const auto& e : j) {
      ScenarioTemplate t;
      if (e.is_string()) {
        t.scenario = parse_scenario(e.get<std::string>());
      } else if (e.is_object()) {
        for (const auto& [k, _] : e.items())
          if (k != "scenario" && k != "kappa" && k != "location") throw InvalidInput("unknown field '" + k + "'");
        if (!e.contains("scenario") || !e.at("scenario").is_string()) throw InvalidInput("entry lacks 'scenario'");
        t.scenario = parse_scenario(e.at("scenario").get<std::string>());
        if (e.contains("kappa")) {
          if (!e.at("kappa").is_number()) throw InvalidInput("kappa must be a number");
          t.kappa = e.at("kappa").get<double>();
        }
        if (e.contains("location")) {
          if (!e.at("location").is_number()) throw InvalidInput("location must be a number");
          t.location = e.at("location").get<double>();
        }
      } else {
        throw InvalidInput("entries must be strings or objects");
      }
      cfg.scenarios.push_back(t);
    }
  });
  read("n_list", true, [&](const json& j) { cfg.n_list = int_list(j); });
  read("p_list", true, [&](const json& j) { cfg.p_list = int_list(j); });
  read("v_list", true, [&](const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty array of numbers");
    for (const auto& e : j) {
      if (!e.is_number()) throw InvalidInput("expected numbers");
      cfg.v_list.push_back(e.get<double>());
    }
  });
  read("reps", false, [&](const json& j) {
    if (!j.is_number_integer()) throw InvalidInput("expected an integer");
    cfg.reps = j.get<int>();
  });
  read("alpha", false, [&](const json& j) {
    if (!j.is_number()) throw InvalidInput("expected a number");
    cfg.alpha = j.get<double>();
  });
  read("methods", false, [&](const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty array");
    cfg.methods.clear();
    for (const auto& e : j) {
      if (!e.is_string()) throw InvalidInput("expected method names");
      cfg.methods.push_back(parse_method(e.get<std::string>()));
    }
  });
  read("master_seed", false, [&](const json& j) {
    if (!j.is_number_unsigned()) throw InvalidInput("expected a nonnegative integer");
    cfg.master_seed = j.get<std::uint64_t>();
  });
  read("threads", false, [&](const json& j) {
    if (j.is_string() && j.get<std::string>() == "auto") {
      cfg.threads = 0;
    } else if (j.is_number_integer() && j.get<long long>() >= 0) {
      cfg.threads = j.get<int>();
    } else {
      throw InvalidInput("expected a nonnegative integer or \"auto\"");
    }
  });

  if (!bad.empty()) {
    std::string msg = "invalid config keys:";
    for (const auto& r : reasons) msg += " " + r + ";";
    msg.pop_back();
    throw ConfigError(msg, std::move(bad));
  }
  return cfg;
}

}  // namespace sphericity
