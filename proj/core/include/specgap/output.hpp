#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace specgap {

// All floating-point output goes through fmt12: 12 significant digits,
// locale-independent, so identical inputs give byte-identical files.
std::string fmt12(double v);

// Minimal JSON value with insertion-ordered objects and fmt12 number
// formatting. Used for every emitted .json file; parsing of input configs
// is done elsewhere (nlohmann).
class JsonValue {
public:
  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(int i) : v_(static_cast<long long>(i)) {}
  JsonValue(long long i) : v_(i) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}

  static JsonValue array() {
    JsonValue j;
    j.v_ = Array{};
    return j;
  }
  static JsonValue object() {
    JsonValue j;
    j.v_ = Object{};
    return j;
  }

  void push_back(JsonValue v);
  JsonValue& operator[](const std::string& key);  // object insert/lookup

  void dump(std::ostream& os, int indent = 0) const;
  std::string dump() const {
    std::ostringstream os;
    dump(os);
    return os.str();
  }

private:
  using Array = std::vector<JsonValue>;
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

JsonValue json_interval(double lo, double hi);
JsonValue json_interval_list(const std::vector<std::pair<double, double>>& ivs);

}  // namespace specgap
