#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "tracemap.hpp"

namespace cmvlab {

inline constexpr const char* tool_version = "cmvlab 1.0.0";
inline constexpr int scan_schema_version = 1;

// Canonical float formatting: 17 significant digits round-trips any double.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Hand-rolled writer so serialization is byte-deterministic: fixed key order,
// fixed float format, no whitespace variation.
class JsonBuilder {
 public:
  JsonBuilder& obj_begin() { return container('{'); }
  JsonBuilder& obj_end() { return close('}'); }
  JsonBuilder& arr_begin() { return container('['); }
  JsonBuilder& arr_end() { return close(']'); }

  JsonBuilder& key(const char* k) {
    comma();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonBuilder& value(double v) { return primitive(fmt_double(v)); }
  JsonBuilder& value(long long v) { return primitive(std::to_string(v)); }
  JsonBuilder& value(int v) { return primitive(std::to_string(v)); }
  JsonBuilder& value(bool v) { return primitive(v ? "true" : "false"); }
  JsonBuilder& value(const std::string& v) {
    comma_if_element();
    append_string(v);
    return *this;
  }
  JsonBuilder& value(const char* v) { return value(std::string(v)); }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (!stack_.empty() && counted_.back() > 0) out_ += ',';
    if (!stack_.empty()) ++counted_.back();
  }
  void comma_if_element() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    comma();
  }
  JsonBuilder& container(char open) {
    comma_if_element();
    out_ += open;
    stack_.push_back(open);
    counted_.push_back(0);
    return *this;
  }
  JsonBuilder& close(char c) {
    out_ += c;
    stack_.pop_back();
    counted_.pop_back();
    return *this;
  }
  JsonBuilder& primitive(const std::string& text) {
    comma_if_element();
    out_ += text;
    return *this;
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<char> stack_;
  std::vector<int> counted_;
  bool pending_value_ = false;
};

namespace detail {

inline void write_point(JsonBuilder& j, const ScanPoint& p) {
  j.obj_begin();
  j.key("angle").value(p.angle);
  j.key("zeta").arr_begin().value(p.zeta.real()).value(p.zeta.imag()).arr_end();
  j.key("status").value(p.escaped ? "escaped" : "bounded");
  j.key("escape_step").value(p.escape_step);
  j.key("lyapunov").value(p.lyapunov);
  j.key("invariant_drift").value(p.invariant_drift);
  j.obj_end();
}

}  // namespace detail

inline std::string scan_to_json(const SpectrumScan& scan, long long seed) {
  JsonBuilder j;
  j.obj_begin();
  j.key("schema_version").value(scan_schema_version);
  j.key("tool").value(tool_version);
  j.key("config").obj_begin();
  j.key("beta").arr_begin().value(scan.beta.real()).value(scan.beta.imag()).arr_end();
  j.key("gamma").arr_begin().value(scan.gamma.real()).value(scan.gamma.imag()).arr_end();
  j.key("theta_label").value(scan.theta_label);
  j.key("cf").arr_begin();
  for (long long a : scan.a) j.value(a);
  j.arr_end();
  j.key("grid").value(scan.grid);
  j.key("budget").value(scan.budget);
  j.key("refine_depth").value(scan.refine_depth);
  j.key("seed").value(seed);
  j.obj_end();
  j.key("measure_by_budget").arr_begin();
  for (int b = 1; b <= scan.budget; ++b) j.value(scan.measure_at(b));
  j.arr_end();
  j.key("points").arr_begin();
  for (const ScanPoint& p : scan.points) detail::write_point(j, p);
  j.arr_end();
  j.key("refined").arr_begin();
  for (const ScanPoint& p : scan.refined) detail::write_point(j, p);
  j.arr_end();
  j.obj_end();
  std::string out = j.str();
  out += '\n';
  return out;
}

struct LoadedScan {
  SpectrumScan scan;
  long long seed = 0;
  std::string tool;
};

namespace detail {

inline ScanPoint read_point(const nlohmann::json& r) {
  ScanPoint p;
  p.angle = r.at("angle").get<double>();
  p.zeta = cd(r.at("zeta").at(0).get<double>(), r.at("zeta").at(1).get<double>());
  std::string status = r.at("status").get<std::string>();
  if (status != "bounded" && status != "escaped")
    throw SchemaMismatch("unknown point status: " + status);
  p.escaped = status == "escaped";
  p.escape_step = r.at("escape_step").get<long long>();
  p.lyapunov = r.at("lyapunov").get<double>();
  p.invariant_drift = r.at("invariant_drift").get<double>();
  return p;
}

}  // namespace detail

inline LoadedScan scan_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("scan file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != scan_schema_version)
      throw SchemaMismatch("unsupported scan schema version");
    LoadedScan out;
    out.tool = doc.at("tool").get<std::string>();
    out.seed = doc.at("config").at("seed").get<long long>();
    SpectrumScan& s = out.scan;
    const auto& cfg = doc.at("config");
    s.beta = cd(cfg.at("beta").at(0).get<double>(), cfg.at("beta").at(1).get<double>());
    s.gamma = cd(cfg.at("gamma").at(0).get<double>(), cfg.at("gamma").at(1).get<double>());
    s.theta_label = cfg.at("theta_label").get<std::string>();
    s.a = cfg.at("cf").get<std::vector<long long>>();
    s.grid = cfg.at("grid").get<int>();
    s.budget = cfg.at("budget").get<int>();
    s.refine_depth = cfg.at("refine_depth").get<int>();
    for (const auto& r : doc.at("points")) s.points.push_back(detail::read_point(r));
    for (const auto& r : doc.at("refined")) s.refined.push_back(detail::read_point(r));
    if (static_cast<int>(s.points.size()) != s.grid)
      throw SchemaMismatch("scan row count does not match the grid size");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("scan file missing required fields: ") + e.what());
  }
}

// Flat export of the grid points; config and refined points are not included.
inline std::string scan_to_csv(const SpectrumScan& scan) {
  std::string out = "angle,zeta_re,zeta_im,status,escape_step,lyapunov,invariant_drift\n";
  for (const ScanPoint& p : scan.points) {
    out += fmt_double(p.angle);
    out += ',';
    out += fmt_double(p.zeta.real());
    out += ',';
    out += fmt_double(p.zeta.imag());
    out += ',';
    out += p.escaped ? "escaped" : "bounded";
    out += ',';
    out += std::to_string(p.escape_step);
    out += ',';
    out += fmt_double(p.lyapunov);
    out += ',';
    out += fmt_double(p.invariant_drift);
    out += '\n';
  }
  return out;
}

}  // namespace cmvlab
