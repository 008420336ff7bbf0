#include "instance_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "version.hpp"

namespace hubo {

namespace {

using nlohmann::json;

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

int line_of_offset(const std::string& text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') line++;
  }
  return line;
}

}  // namespace

std::string format_coeff(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string instance_to_string(const HuboInstance& instance) {
  const auto counts = instance.term_counts_by_arity();
  const InstanceMetadata& meta = instance.metadata();
  std::ostringstream out;
  out << "{\n";
  out << "  \"format_version\": " << kInstanceFormatVersion << ",\n";
  out << "  \"n_vars\": " << instance.n_vars() << ",\n";
  out << "  \"family\": \"" << escape_json(meta.family) << "\",\n";
  out << "  \"n_swap_layers\": " << meta.n_swap_layers << ",\n";
  out << "  \"seed\": " << meta.seed << ",\n";
  out << "  \"term_counts\": {\"1\": " << counts[1] << ", \"2\": " << counts[2]
      << ", \"3\": " << counts[3] << "},\n";
  out << "  \"provenance\": \"" << escape_json(meta.provenance) << "\",\n";
  out << "  \"terms\": [";
  bool first = true;
  for (const Term& t : instance.terms()) {
    out << (first ? "\n" : ",\n");
    first = false;
    out << "    [" << t.arity << ", [";
    for (int i = 0; i < t.arity; ++i) {
      if (i) out << ", ";
      out << t.vars[i];
    }
    out << "], " << format_coeff(t.coeff) << "]";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

void save_instance(const HuboInstance& instance, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  f << instance_to_string(instance);
  if (!f.good()) {
    throw std::runtime_error("write failed for " + path);
  }
}

HuboInstance instance_from_string(const std::string& text,
                                  const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, "JSON parse error near line " +
                     std::to_string(line_of_offset(text, e.byte)) + ": " +
                     e.what());
  }
  if (!doc.is_object()) fail(origin, "top level is not an object");

  auto require = [&](const char* field) -> const json& {
    auto it = doc.find(field);
    if (it == doc.end()) {
      fail(origin, std::string("missing field \"") + field + "\"");
    }
    return *it;
  };

  const json& jver = require("format_version");
  if (!jver.is_number_integer() || jver.get<int>() != kInstanceFormatVersion) {
    fail(origin, "unsupported format_version (expected " +
                     std::to_string(kInstanceFormatVersion) + ")");
  }
  const json& jn = require("n_vars");
  if (!jn.is_number_integer() || jn.get<int64_t>() <= 0) {
    fail(origin, "field \"n_vars\" must be a positive integer");
  }
  const int32_t n_vars = jn.get<int32_t>();

  InstanceMetadata meta;
  if (auto it = doc.find("family"); it != doc.end() && it->is_string()) {
    meta.family = it->get<std::string>();
  }
  if (auto it = doc.find("n_swap_layers");
      it != doc.end() && it->is_number_integer()) {
    meta.n_swap_layers = it->get<int>();
  }
  if (auto it = doc.find("seed"); it != doc.end() && it->is_number()) {
    meta.seed = it->get<uint64_t>();
  }
  if (auto it = doc.find("provenance"); it != doc.end() && it->is_string()) {
    meta.provenance = it->get<std::string>();
  }

  const json& jterms = require("terms");
  if (!jterms.is_array()) fail(origin, "field \"terms\" must be an array");
  std::vector<Term> terms;
  terms.reserve(jterms.size());
  for (size_t i = 0; i < jterms.size(); ++i) {
    const json& rec = jterms[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!rec.is_array() || rec.size() != 3) {
      fail(origin, where + " must be [arity, [indices], coefficient]");
    }
    if (!rec[0].is_number_integer()) {
      fail(origin, where + " field \"arity\" must be an integer");
    }
    const int arity = rec[0].get<int>();
    if (arity < 1 || arity > 3) {
      fail(origin, where + " arity " + std::to_string(arity) +
                       " outside supported range 1..3");
    }
    if (!rec[1].is_array() || static_cast<int>(rec[1].size()) != arity) {
      fail(origin,
           where + " field \"indices\" must be an array of length arity");
    }
    Term t;
    t.arity = arity;
    for (int k = 0; k < arity; ++k) {
      if (!rec[1][k].is_number_integer()) {
        fail(origin, where + " index " + std::to_string(k) +
                         " must be an integer");
      }
      const int64_t v = rec[1][k].get<int64_t>();
      if (v < 0 || v >= n_vars) {
        fail(origin, where + " index " + std::to_string(v) +
                         " out of range [0, " + std::to_string(n_vars) + ")");
      }
      t.vars[k] = static_cast<int32_t>(v);
    }
    if (!rec[2].is_number()) {
      fail(origin, where + " field \"coefficient\" must be a number");
    }
    t.coeff = rec[2].get<double>();
    terms.push_back(t);
  }

  // Cross-check declared counts when present.
  if (auto it = doc.find("term_counts"); it != doc.end() && it->is_object()) {
    std::array<int64_t, 4> declared{0, 0, 0, 0};
    for (int a = 1; a <= 3; ++a) {
      if (auto f = it->find(std::to_string(a)); f != it->end()) {
        declared[a] = f->get<int64_t>();
      }
    }
    std::array<int64_t, 4> actual{0, 0, 0, 0};
    for (const Term& t : terms) actual[t.arity]++;
    for (int a = 1; a <= 3; ++a) {
      if (declared[a] != actual[a]) {
        fail(origin, "field \"term_counts\"[" + std::to_string(a) +
                         "] = " + std::to_string(declared[a]) +
                         " does not match " + std::to_string(actual[a]) +
                         " terms in the file");
      }
    }
  }

  try {
    return HuboInstance(n_vars, std::move(terms), std::move(meta));
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
}

HuboInstance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open instance file " + path);
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return instance_from_string(buf.str(), path);
}

std::string manifest_to_string(const std::string& family, int count,
                               uint64_t base_seed,
                               const std::vector<ManifestEntry>& entries) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format_version\": " << kInstanceFormatVersion << ",\n";
  out << "  \"family\": \"" << escape_json(family) << "\",\n";
  out << "  \"count\": " << count << ",\n";
  out << "  \"base_seed\": " << base_seed << ",\n";
  out << "  \"instances\": [";
  bool first = true;
  for (const ManifestEntry& e : entries) {
    out << (first ? "\n" : ",\n");
    first = false;
    out << "    {\"file\": \"" << escape_json(e.file)
        << "\", \"n_vars\": " << e.n_vars << ", \"seed\": " << e.seed
        << ", \"n_terms\": " << e.n_terms << ", \"term_counts\": {\"1\": "
        << e.term_counts[1] << ", \"2\": " << e.term_counts[2]
        << ", \"3\": " << e.term_counts[3] << "}}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

}  // namespace hubo
