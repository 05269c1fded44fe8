#include "specgap/operator_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw config_error(path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

int get_int(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> get_real_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of reals");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a real number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Lattice get_lattice(const json& obj, const std::string& path) {
  if (!obj.contains("lattice")) return Lattice::half_line;
  const json& v = obj.at("lattice");
  if (!v.is_string()) fail(path + ".lattice", "expected \"half\" or \"full\"");
  std::string s = v.get<std::string>();
  if (s == "half") return Lattice::half_line;
  if (s == "full") return Lattice::full_line;
  fail(path + ".lattice", "expected \"half\" or \"full\", got \"" + s + "\"");
}

std::map<int, double> get_corner(const json& obj, const std::string& path) {
  std::map<int, double> corner;
  if (!obj.contains("corner")) return corner;
  const json& v = obj.at("corner");
  if (!v.is_object()) fail(path + ".corner", "expected an object mapping integer offsets to reals");
  for (auto it = v.begin(); it != v.end(); ++it) {
    int k = 0;
    try {
      size_t pos = 0;
      k = std::stoi(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail(path + ".corner." + it.key(), "key must be an integer offset");
    }
    if (!it.value().is_number()) fail(path + ".corner." + it.key(), "expected a real number");
    corner[k] = it.value().get<double>();
  }
  return corner;
}

FamilySpec get_family(const json& obj, const SchrodingerSpec& base, const std::string& path) {
  const json& f = obj.at("family");
  if (!f.is_object()) fail(path + ".family", "expected an object");
  reject_unknown_keys(f, {"coeffs", "domain"}, path + ".family");
  if (!f.contains("coeffs")) fail(path + ".family.coeffs", "missing required key");
  if (!f.contains("domain")) fail(path + ".family.domain", "missing required key");
  const json& cj = f.at("coeffs");
  if (!cj.is_array()) fail(path + ".family.coeffs", "expected an array of coefficient lists");
  FamilySpec fam;
  fam.base = base;
  for (size_t i = 0; i < cj.size(); ++i)
    fam.coeffs.push_back(get_real_list(cj[i], path + ".family.coeffs[" + std::to_string(i) + "]"));
  std::vector<double> dom = get_real_list(f.at("domain"), path + ".family.domain");
  if (dom.size() != 2 || !(dom[0] <= dom[1])) fail(path + ".family.domain", "expected [x_lo, x_hi]");
  fam.x_lo = dom[0];
  fam.x_hi = dom[1];
  // The base potential is derived from the polynomials when absent.
  if (fam.base.potential.empty()) {
    for (const auto& c : fam.coeffs) fam.base.potential.push_back(c.empty() ? 0.0 : c[0]);
  }
  try {
    fam.validate();
  } catch (const std::exception& e) {
    fail(path + ".family", e.what());
  }
  return fam;
}

}  // namespace

ParsedConfig parse_operator_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  reject_unknown_keys(root, {"operator"}, "$");
  if (!root.contains("operator")) throw config_error("$.operator: missing required key");
  const json& op = root.at("operator");
  if (!op.is_object()) throw config_error("$.operator: expected an object");
  const std::string path = "$.operator";
  reject_unknown_keys(op, {"kind", "period", "potential", "corner", "lattice", "offdiag", "diag", "family"},
                      path);

  if (!op.contains("kind")) fail(path + ".kind", "missing required key");
  if (!op.at("kind").is_string()) fail(path + ".kind", "expected a string");
  std::string kind = op.at("kind").get<std::string>();

  ParsedConfig out;
  out.kind = kind;

  auto forbid = [&](const char* key) {
    if (op.contains(key)) fail(path + "." + key, "key not allowed for kind \"" + kind + "\"");
  };

  if (kind == "schrodinger" || kind == "symbol") {
    forbid("offdiag");
    forbid("diag");
    SchrodingerSpec s;
    s.period = get_int(op, "period", path);
    if (op.contains("potential"))
      s.potential = get_real_list(op.at("potential"), path + ".potential");
    else if (!op.contains("family"))
      fail(path + ".potential", "missing required key");
    s.corner = get_corner(op, path);
    s.lattice = get_lattice(op, path);
    std::optional<FamilySpec> family;
    if (op.contains("family")) {
      family = get_family(op, s, path);
      if (s.potential.empty()) s.potential = family->base.potential;
      family->base.potential = s.potential;
    }
    s.ordered = std::is_sorted(s.potential.begin(), s.potential.end());
    try {
      s.validate();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    if (family) {
      family->base.ordered = s.ordered;
      try {
        family->validate();
      } catch (const std::exception& e) {
        fail(path + ".family", e.what());
      }
      out.family = family;
    }
    if (kind == "symbol")
      out.op = SymbolOperator{schrodinger_symbol(s), s.lattice};
    else
      out.op = s;
    return out;
  }

  if (kind == "jacobi") {
    forbid("potential");
    forbid("corner");
    forbid("family");
    JacobiSpec s;
    s.period = get_int(op, "period", path);
    if (!op.contains("offdiag")) fail(path + ".offdiag", "missing required key");
    if (!op.contains("diag")) fail(path + ".diag", "missing required key");
    s.offdiag = get_real_list(op.at("offdiag"), path + ".offdiag");
    s.diag = get_real_list(op.at("diag"), path + ".diag");
    s.lattice = op.contains("lattice") ? get_lattice(op, path) : Lattice::full_line;
    try {
      s.validate();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    out.op = s;
    return out;
  }

  if (kind == "band") {
    forbid("potential");
    forbid("corner");
    forbid("family");
    int period = get_int(op, "period", path);
    if (period < 1) fail(path + ".period", "period must be >= 1");
    if (!op.contains("diag")) fail(path + ".diag", "missing required key");
    std::vector<double> diag = get_real_list(op.at("diag"), path + ".diag");
    std::vector<double> offdiag;
    if (op.contains("offdiag")) offdiag = get_real_list(op.at("offdiag"), path + ".offdiag");
    if (diag.size() != static_cast<size_t>(period))
      fail(path + ".diag", "length must equal the period");
    if (!offdiag.empty() && offdiag.size() != static_cast<size_t>(period))
      fail(path + ".offdiag", "length must equal the period when present");
    Lattice lattice = get_lattice(op, path);

    // Periodic scalar band operator: diag[s mod p] on the diagonal and
    // offdiag[s mod p] coupling site s to s+1 (no positivity requirement).
    ExplicitBand band;
    int p = period;
    auto site_entry = [p, diag, offdiag](std::int64_t i, std::int64_t j) -> cplx {
      auto pmod = [p](std::int64_t v) { return static_cast<size_t>(((v % p) + p) % p); };
      if (i == j) return cplx{diag[pmod(i - 1)], 0.0};
      if (std::llabs(i - j) == 1 && !offdiag.empty())
        return cplx{offdiag[pmod(std::min(i, j) - 1)], 0.0};
      return cplx{0.0, 0.0};
    };
    if (lattice == Lattice::half_line) {
      band.bandwidth = offdiag.empty() ? 0 : 1;
      band.entry = site_entry;
    } else {
      band.bandwidth = offdiag.empty() ? 0 : 3;
      band.entry = [site_entry](std::int64_t i, std::int64_t j) {
        auto centered = [](std::int64_t idx) -> std::int64_t {
          if (idx == 1) return 0;
          std::int64_t k = idx / 2;
          return (idx % 2 == 0) ? k : -k;
        };
        return site_entry(centered(i), centered(j));
      };
    }
    double radius = 0.0;
    for (double a : offdiag) radius = std::max(radius, std::abs(a));
    double lo = 0.0, hi = 0.0;
    for (double d : diag) {
      lo = std::min(lo, d - 2.0 * radius);
      hi = std::max(hi, d + 2.0 * radius);
    }
    band.lower_bound = lo;
    band.upper_bound = hi;
    band.label = "band";
    out.op = band;
    return out;
  }

  fail(path + ".kind", "unknown kind \"" + kind + "\" (expected schrodinger, jacobi, symbol, or band)");
}

ParsedConfig load_operator_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_operator_config(ss.str());
}

}  // namespace specgap
