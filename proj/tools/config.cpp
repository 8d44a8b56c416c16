#include "config.hpp"

#include <cmath>

#include "isotherm/numerics.hpp"

namespace cli {

Section::Section(const json& node, std::string path, std::set<std::string> allowed, json* resolved)
    : node_(node), path_(std::move(path)), allowed_(std::move(allowed)), resolved_(resolved) {
  if (!node_.is_null() && !node_.is_object()) throw ConfigError(path_ + " must be an object");
  if (node_.is_object())
    for (const auto& [k, v] : node_.items())
      if (!allowed_.count(k)) throw ConfigError("unknown key '" + k + "' in " + path_);
  if (resolved_ && !resolved_->is_object()) *resolved_ = json::object();
}

const json* Section::raw(const std::string& key) const {
  if (!allowed_.count(key)) throw std::logic_error("schema does not declare " + path_ + "." + key);
  if (!node_.is_object()) return nullptr;
  const auto it = node_.find(key);
  return it == node_.end() ? nullptr : &*it;
}

json& Section::slot(const std::string& key) {
  static json sink;
  return resolved_ ? (*resolved_)[key] : sink;
}

bool Section::has(const std::string& key) const { return raw(key) != nullptr; }

double Section::number(const std::string& key, double fallback) {
  const json* v = raw(key);
  double out = fallback;
  if (v) {
    if (!v->is_number()) throw ConfigError(path_ + "." + key + " must be a number");
    out = v->get<double>();
  }
  slot(key) = out;
  return out;
}

double Section::number(const std::string& key) {
  if (!raw(key)) throw ConfigError(path_ + "." + key + " is required");
  return number(key, 0.0);
}

int Section::integer(const std::string& key, int fallback) {
  const json* v = raw(key);
  int out = fallback;
  if (v) {
    if (!v->is_number_integer()) throw ConfigError(path_ + "." + key + " must be an integer");
    out = v->get<int>();
  }
  slot(key) = out;
  return out;
}

std::uint64_t Section::u64(const std::string& key, std::uint64_t fallback) {
  const json* v = raw(key);
  std::uint64_t out = fallback;
  if (v) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0))
      throw ConfigError(path_ + "." + key + " must be a non-negative integer");
    out = v->get<std::uint64_t>();
  }
  slot(key) = out;
  return out;
}

bool Section::boolean(const std::string& key, bool fallback) {
  const json* v = raw(key);
  bool out = fallback;
  if (v) {
    if (!v->is_boolean()) throw ConfigError(path_ + "." + key + " must be true or false");
    out = v->get<bool>();
  }
  slot(key) = out;
  return out;
}

std::string Section::text(const std::string& key, const std::string& fallback) {
  const json* v = raw(key);
  std::string out = fallback;
  if (v) {
    if (!v->is_string()) throw ConfigError(path_ + "." + key + " must be a string");
    out = v->get<std::string>();
  }
  slot(key) = out;
  return out;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  const json* v = raw(key);
  std::vector<double> out = fallback;
  if (v) {
    if (!v->is_array()) throw ConfigError(path_ + "." + key + " must be an array of numbers");
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) throw ConfigError(path_ + "." + key + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
  }
  slot(key) = out;
  return out;
}

std::vector<std::vector<double>> Section::points(const std::string& key,
                                                 const std::vector<std::vector<double>>& fallback) {
  const json* v = raw(key);
  std::vector<std::vector<double>> out = fallback;
  if (v) {
    if (!v->is_array()) throw ConfigError(path_ + "." + key + " must be an array of coordinate arrays");
    out.clear();
    for (const auto& p : *v) {
      if (!p.is_array()) throw ConfigError(path_ + "." + key + " must be an array of coordinate arrays");
      std::vector<double> c;
      for (const auto& e : p) {
        if (!e.is_number()) throw ConfigError(path_ + "." + key + " coordinates must be numbers");
        c.push_back(e.get<double>());
      }
      out.push_back(std::move(c));
    }
  }
  slot(key) = out;
  return out;
}

Section Section::child(const std::string& key, std::set<std::string> allowed) {
  const json* v = raw(key);
  return Section(v ? *v : json(), path_ + "." + key, std::move(allowed), resolved_ ? &(*resolved_)[key] : nullptr);
}

std::vector<double> log_grid(Section& parent, const std::string& key, double lo, double hi, int count) {
  if (parent.has(key)) {
    // either a list or a range object
    Section probe = parent.child(key, {"min", "max", "count", "values"});
    if (probe.has("values")) return probe.numbers("values", {});
    lo = probe.number("min", lo);
    hi = probe.number("max", hi);
    count = probe.integer("count", count);
  } else {
    Section s = parent.child(key, {"min", "max", "count", "values"});
    s.number("min", lo);
    s.number("max", hi);
    s.integer("count", count);
  }
  if (!(lo > 0.0 && hi >= lo && count >= 1)) throw ConfigError(parent.path() + "." + key + " is not a valid range");
  return count == 1 ? std::vector<double>{lo} : isotherm::numerics::logspace(lo, hi, count);
}

isotherm::TwoPhaseMedium read_medium(Section& root) {
  Section m = root.child("medium", {"sigma_s", "sigma_m"});
  const double s = m.number("sigma_s", 1.0), mm = m.number("sigma_m", 4.0);
  if (!(s > 0.0 && mm > 0.0)) throw ConfigError("medium conductivities must be positive");
  return {s, mm};
}

SurfaceSpec read_surface(Section& root, const std::string& fallback_type, const std::set<std::string>& permitted) {
  Section s = root.child("surface", {"variant", "R", "N", "c"});
  SurfaceSpec spec;
  spec.type = s.text("variant", fallback_type);
  if (!permitted.count(spec.type)) throw ConfigError("surface type '" + spec.type + "' is not supported here");
  spec.R = s.number("R", 1.0);
  spec.N = s.integer("N", 3);
  spec.c = s.number("c", 1.0);
  if (!(spec.R > 0.0 && spec.c > 0.0 && spec.N >= 2)) throw ConfigError("surface parameters out of range");
  return spec;
}

isotherm::geometry::SurfacePtr make_surface(const SurfaceSpec& spec) {
  using namespace isotherm::geometry;
  if (spec.type == "plane") return std::make_shared<Hyperplane>(spec.N);
  if (spec.type == "sphere") return std::make_shared<Sphere>(spec.R, spec.N);
  if (spec.type == "cylinder") return std::make_shared<Cylinder>(spec.R, spec.N);
  if (spec.type == "helicoid") return std::make_shared<Helicoid>();
  if (spec.type == "catenoid") return std::make_shared<Catenoid>(spec.c);
  throw ConfigError("unknown surface type '" + spec.type + "'");
}

}  // namespace cli
