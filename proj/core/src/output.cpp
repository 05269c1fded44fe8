#include "specgap/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace specgap {

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void JsonValue::push_back(JsonValue v) {
  if (!std::holds_alternative<Array>(v_)) throw std::logic_error("push_back on non-array json value");
  std::get<Array>(v_).push_back(std::move(v));
}

JsonValue& JsonValue::operator[](const std::string& key) {
  if (std::holds_alternative<std::nullptr_t>(v_)) v_ = Object{};
  if (!std::holds_alternative<Object>(v_)) throw std::logic_error("operator[] on non-object json value");
  auto& obj = std::get<Object>(v_);
  for (auto& kv : obj)
    if (kv.first == key) return kv.second;
  obj.emplace_back(key, JsonValue());
  return obj.back().second;
}

namespace {

void write_escaped(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default: os << c;
    }
  }
  os << '"';
}

}  // namespace

void JsonValue::dump(std::ostream& os, int indent) const {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  std::string pad1(static_cast<size_t>(indent + 1) * 2, ' ');
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    os << "null";
  } else if (std::holds_alternative<bool>(v_)) {
    os << (std::get<bool>(v_) ? "true" : "false");
  } else if (std::holds_alternative<long long>(v_)) {
    os << std::get<long long>(v_);
  } else if (std::holds_alternative<double>(v_)) {
    double d = std::get<double>(v_);
    if (std::isfinite(d))
      os << fmt12(d);
    else
      os << "null";  // JSON has no inf/nan
  } else if (std::holds_alternative<std::string>(v_)) {
    write_escaped(os, std::get<std::string>(v_));
  } else if (std::holds_alternative<Array>(v_)) {
    const auto& arr = std::get<Array>(v_);
    if (arr.empty()) {
      os << "[]";
      return;
    }
    // Flat arrays of scalars stay on one line; nested ones get one element per line.
    bool flat = true;
    for (const auto& e : arr)
      if (std::holds_alternative<Array>(e.v_) || std::holds_alternative<Object>(e.v_)) flat = false;
    os << '[';
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!flat) os << '\n' << pad1;
      arr[i].dump(os, indent + 1);
      if (i + 1 < arr.size()) os << (flat ? ", " : ",");
    }
    if (!flat) os << '\n' << pad;
    os << ']';
  } else {
    const auto& obj = std::get<Object>(v_);
    if (obj.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    for (size_t i = 0; i < obj.size(); ++i) {
      os << pad1;
      write_escaped(os, obj[i].first);
      os << ": ";
      obj[i].second.dump(os, indent + 1);
      if (i + 1 < obj.size()) os << ',';
      os << '\n';
    }
    os << pad << '}';
  }
}

JsonValue json_interval(double lo, double hi) {
  JsonValue j = JsonValue::array();
  j.push_back(lo);
  j.push_back(hi);
  return j;
}

JsonValue json_interval_list(const std::vector<std::pair<double, double>>& ivs) {
  JsonValue j = JsonValue::array();
  for (const auto& [lo, hi] : ivs) j.push_back(json_interval(lo, hi));
  return j;
}

}  // namespace specgap
