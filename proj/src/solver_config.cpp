#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "solvers.hpp"

namespace hubo {

namespace {

using nlohmann::json;

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

void get_if(const json& j, const char* key, int& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<int>();
}
void get_if(const json& j, const char* key, double& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<double>();
}
void get_if(const json& j, const char* key, std::optional<double>& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<double>();
}
void get_if(const json& j, const char* key, std::optional<int>& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<int>();
}
void get_if(const json& j, const char* key, std::optional<int64_t>& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<int64_t>();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_optional(std::ostringstream& out, const char* key,
                   const std::optional<double>& v) {
  if (v) out << ", \"" << key << "\": " << format_number(*v);
}

}  // namespace

SolverConfig SolverConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("solver config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") ||
      !doc["kind"].is_string()) {
    throw std::invalid_argument(
        "solver config must be an object with a string \"kind\"");
  }
  SolverConfig cfg;
  cfg.kind = doc["kind"].get<std::string>();
  if (cfg.kind == "sa") {
    get_if(doc, "n_restarts", cfg.sa.n_restarts);
    get_if(doc, "sweeps", cfg.sa.sweeps);
    get_if(doc, "t_hot", cfg.sa.schedule.t_hot);
    get_if(doc, "t_cold", cfg.sa.schedule.t_cold);
    get_if(doc, "wall_clock_limit_seconds",
           cfg.sa.wall_clock_limit_seconds);
  } else if (cfg.kind == "pt") {
    get_if(doc, "n_replicas", cfg.pt.n_replicas);
    get_if(doc, "sweeps_per_exchange", cfg.pt.sweeps_per_exchange);
    get_if(doc, "time_limit_seconds", cfg.pt.time_limit_seconds);
    get_if(doc, "max_exchanges", cfg.pt.max_exchanges);
    get_if(doc, "t_hot", cfg.pt.t_hot);
    get_if(doc, "t_cold", cfg.pt.t_cold);
  } else if (cfg.kind == "mts") {
    get_if(doc, "population", cfg.mts.population);
    get_if(doc, "generations", cfg.mts.generations);
    get_if(doc, "tabu_tenure", cfg.mts.tabu_tenure);
    get_if(doc, "tabu_sweeps", cfg.mts.tabu_sweeps);
    get_if(doc, "elite_fraction", cfg.mts.elite_fraction);
    get_if(doc, "mutation_rate", cfg.mts.mutation_rate);
    get_if(doc, "wall_clock_limit_seconds",
           cfg.mts.wall_clock_limit_seconds);
  } else if (cfg.kind == "greedy") {
    // no parameters
  } else {
    throw std::invalid_argument("unknown solver kind \"" + cfg.kind + "\"");
  }
  return cfg;
}

std::string SolverConfig::to_json_text() const {
  std::ostringstream out;
  out << "{\"kind\": \"" << kind << "\"";
  if (kind == "sa") {
    out << ", \"n_restarts\": " << sa.n_restarts
        << ", \"sweeps\": " << sa.sweeps;
    emit_optional(out, "t_hot", sa.schedule.t_hot);
    emit_optional(out, "t_cold", sa.schedule.t_cold);
    emit_optional(out, "wall_clock_limit_seconds",
                  sa.wall_clock_limit_seconds);
  } else if (kind == "pt") {
    out << ", \"n_replicas\": " << pt.n_replicas
        << ", \"sweeps_per_exchange\": " << pt.sweeps_per_exchange
        << ", \"time_limit_seconds\": "
        << format_number(pt.time_limit_seconds);
    if (pt.max_exchanges) {
      out << ", \"max_exchanges\": " << *pt.max_exchanges;
    }
    emit_optional(out, "t_hot", pt.t_hot);
    emit_optional(out, "t_cold", pt.t_cold);
  } else if (kind == "mts") {
    out << ", \"population\": " << mts.population
        << ", \"generations\": " << mts.generations;
    if (mts.tabu_tenure) out << ", \"tabu_tenure\": " << *mts.tabu_tenure;
    out << ", \"tabu_sweeps\": " << mts.tabu_sweeps
        << ", \"elite_fraction\": " << format_number(mts.elite_fraction);
    emit_optional(out, "mutation_rate", mts.mutation_rate);
    emit_optional(out, "wall_clock_limit_seconds",
                  mts.wall_clock_limit_seconds);
  }
  out << "}";
  return out.str();
}

uint64_t SolverConfig::hash() const { return fnv1a(to_json_text()); }

}  // namespace hubo
