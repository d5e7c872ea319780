#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alignbandit/agents.hpp"

namespace alignbandit {

enum class CheckpointMode { Linear, Log };

struct ExperimentConfig {
  std::size_t arms = 16;
  std::uint64_t horizon = 100'000;
  std::size_t seeds = 10;
  std::uint64_t base_seed = 0;
  std::vector<AgentSpec> agents;
  std::size_t mc_samples = kDefaultMcSamples;
  std::uint64_t record_stride = 1;
  CheckpointMode checkpoints = CheckpointMode::Log;
  std::filesystem::path output_dir = "results";

  void validate() const {
    if (arms < 1) throw std::invalid_argument("config: arms must be >= 1");
    if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
    if (seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
    if (record_stride < 1) throw std::invalid_argument("config: record_stride must be >= 1");
    if (mc_samples < 1) throw std::invalid_argument("config: mc_samples must be >= 1");
    if (agents.empty()) throw std::invalid_argument("config: at least one agent is required");
    for (const auto& a : agents) a.validate();
  }
};

// IDS, ETE(3200), ETE(16000) and TS on 16 arms, 10 instances, T = 1e5.
inline ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.agents = {AgentSpec::ids(cfg.mc_samples), AgentSpec::explore_then_exploit(3200),
                AgentSpec::explore_then_exploit(16000), AgentSpec::thompson()};
  return cfg;
}

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(line, "invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

}  // namespace detail

// Parses an agent entry such as "ids mc_samples=512", "ete tau=3200",
// "egreedy epsilon=0.1" or "ts". IDS without mc_samples takes the default.
inline AgentSpec parse_agent(std::string_view text, std::size_t default_mc_samples = kDefaultMcSamples,
                             std::size_t line = 0) {
  std::istringstream in{std::string(text)};
  std::string name;
  if (!(in >> name)) throw ConfigError(line, "empty agent entry");
  const auto kind = parse_kind(name);
  if (!kind) throw ConfigError(line, "unknown agent '" + name + "'");
  AgentSpec spec;
  spec.kind = *kind;
  std::string param;
  while (in >> param) {
    const auto eq = param.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "agent parameter '" + param + "' is not key=value");
    const std::string key = param.substr(0, eq);
    const std::string value = param.substr(eq + 1);
    if (key == "tau") {
      spec.tau = detail::parse_number<std::uint64_t>(value, line, key);
    } else if (key == "epsilon") {
      spec.epsilon = detail::parse_number<double>(value, line, key);
    } else if (key == "mc_samples") {
      spec.mc_samples = detail::parse_number<std::size_t>(value, line, key);
    } else {
      throw ConfigError(line, "unknown agent parameter '" + key + "'");
    }
  }
  if (spec.needs_mc_samples() && !spec.mc_samples) spec.mc_samples = default_mc_samples;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, e.what());
  }
  return spec;
}

// Flat `key = value` text. `#` starts a comment. `agent` may repeat; when no
// agent line is present the default agent set is used.
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<std::pair<std::string, std::size_t>> agent_lines;
  bool mc_samples_set = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, "missing value for " + std::string(key));

    if (key == "arms") {
      cfg.arms = detail::parse_number<std::size_t>(value, line_no, key);
    } else if (key == "horizon") {
      cfg.horizon = detail::parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "seeds") {
      cfg.seeds = detail::parse_number<std::size_t>(value, line_no, key);
    } else if (key == "base_seed") {
      cfg.base_seed = detail::parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "mc_samples") {
      cfg.mc_samples = detail::parse_number<std::size_t>(value, line_no, key);
      mc_samples_set = true;
    } else if (key == "record_stride") {
      cfg.record_stride = detail::parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "checkpoints") {
      if (value == "linear") {
        cfg.checkpoints = CheckpointMode::Linear;
      } else if (value == "log") {
        cfg.checkpoints = CheckpointMode::Log;
      } else {
        throw ConfigError(line_no, "checkpoints must be 'linear' or 'log'");
      }
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(value);
    } else if (key == "agent" || key == "agents") {
      agent_lines.emplace_back(std::string(value), line_no);
    } else {
      throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }

  if (agent_lines.empty()) {
    cfg.agents = default_config().agents;
    if (mc_samples_set) {
      for (auto& a : cfg.agents) {
        if (a.needs_mc_samples()) a.mc_samples = cfg.mc_samples;
      }
    }
  }
  for (const auto& [entry, line] : agent_lines) cfg.agents.push_back(parse_agent(entry, cfg.mc_samples, line));
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace alignbandit
