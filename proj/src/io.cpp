#include "varlex/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace varlex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorCode::InvalidInput, msg);
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
  return base_dir + "/" + path;
}

double get_number(const json& j, const std::string& field) {
  if (!j.contains(field)) fail("config: missing field '" + field + "'");
  const auto& v = j.at(field);
  if (!v.is_number()) fail("config: field '" + field + "' must be a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& field, double dflt) {
  if (!j.contains(field)) return dflt;
  return get_number(j, field);
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.contains(field)) fail("config: missing field '" + field + "'");
  const auto& v = j.at(field);
  if (!v.is_string()) fail("config: field '" + field + "' must be a string");
  return v.get<std::string>();
}

ordered_json json_number(double v) {
  if (std::isfinite(v)) return ordered_json(v);
  return ordered_json(v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = line.find(sep, begin);
    if (pos == std::string::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, pos - begin));
    begin = pos + 1;
  }
  for (auto& s : out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.pop_back();
  }
  return out;
}

double parse_double(const std::string& s, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    std::ostringstream os;
    os << "csv: line " << line_no << ": '" << s << "' is not a number";
    fail(os.str());
  }
  return v;
}

struct CsvRow {
  Point x{0.0, 0.0};
  double value = 0.0;
  int line = 0;
};

struct CsvData {
  int dim = 0;
  std::vector<CsvRow> rows;
};

CsvData parse_csv(std::istream& is) {
  CsvData data;
  std::string line;
  int line_no = 0;
  if (!std::getline(is, line)) fail("csv: empty file");
  ++line_no;
  const auto header = split(line, ',');
  if (header.size() == 2 && header[0] == "x1" && header[1] == "value") {
    data.dim = 1;
  } else if (header.size() == 3 && header[0] == "x1" && header[1] == "x2" &&
             header[2] == "value") {
    data.dim = 2;
  } else {
    fail("csv: header must be 'x1,value' or 'x1,x2,value'");
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line, ',');
    if (static_cast<int>(f.size()) != data.dim + 1) {
      std::ostringstream os;
      os << "csv: line " << line_no << ": expected " << data.dim + 1 << " fields, got "
         << f.size();
      fail(os.str());
    }
    CsvRow row;
    row.line = line_no;
    row.x[0] = parse_double(f[0], line_no);
    if (data.dim == 2) row.x[1] = parse_double(f[1], line_no);
    row.value = parse_double(f.back(), line_no);
    data.rows.push_back(row);
  }
  return data;
}

// Locate the cell whose center matches x; -1 when off-grid.
std::int64_t locate_cell(const Domain& dom, const Point& x) {
  std::array<int, 2> idx{0, 0};
  for (int a = 0; a < dom.dim(); ++a) {
    const double t = (x[a] - dom.lo(a)) / dom.spacing() - 0.5;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-6) return -1;
    idx[a] = static_cast<int>(r);
    if (idx[a] < 0 || idx[a] >= dom.res(a)) return -1;
  }
  return dom.flat(idx[0], idx[1]);
}

std::shared_ptr<const Domain> infer_domain(const CsvData& data) {
  std::array<std::vector<double>, 2> coords;
  for (const auto& row : data.rows)
    for (int a = 0; a < data.dim; ++a) coords[a].push_back(row.x[a]);
  double h = 0.0;
  for (int a = 0; a < data.dim; ++a) {
    auto& c = coords[a];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) {
      const double gap = c[i] - c[i - 1];
      if (h == 0.0 || gap < h) h = gap;
    }
  }
  if (h <= 0.0)
    fail("csv: cannot infer grid spacing from a single center; pass a domain");

  std::array<double, 2> lo{0.0, 0.0}, hi{0.0, 0.0};
  std::array<int, 2> res{1, 1};
  for (int a = 0; a < data.dim; ++a) {
    const double cmin = coords[a].front();
    const double cmax = coords[a].back();
    lo[a] = cmin - 0.5 * h;
    hi[a] = cmax + 0.5 * h;
    res[a] = static_cast<int>(std::llround((hi[a] - lo[a]) / h));
    if (res[a] < 1) res[a] = 1;
    hi[a] = lo[a] + res[a] * h;  // exact box/spacing consistency
  }

  const std::int64_t cells =
      static_cast<std::int64_t>(res[0]) * (data.dim == 2 ? res[1] : 1);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cells), 0);
  auto dom = Domain::build_masked(data.dim, lo, hi, res,
                                  std::vector<std::uint8_t>(mask.size(), 1));
  for (const auto& row : data.rows) {
    const std::int64_t c = locate_cell(*dom, row.x);
    if (c < 0) {
      std::ostringstream os;
      os << "csv: line " << row.line
         << ": center does not sit on a uniform grid; pass a domain";
      fail(os.str());
    }
    if (mask[static_cast<std::size_t>(c)]) {
      std::ostringstream os;
      os << "csv: line " << row.line << ": duplicate cell";
      fail(os.str());
    }
    mask[static_cast<std::size_t>(c)] = 1;
  }
  return Domain::build_masked(data.dim, lo, hi, res, std::move(mask));
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_grid_csv(std::ostream& os, const GridFunction& f) {
  const auto& dom = *f.domain();
  os << (dom.dim() == 1 ? "x1,value\n" : "x1,x2,value\n");
  for (const std::int64_t c : dom.active_cells()) {
    const Point x = dom.center(c);
    os << format_double(x[0]);
    if (dom.dim() == 2) os << ',' << format_double(x[1]);
    os << ',' << format_double(f[c]) << '\n';
  }
}

void write_grid_csv_file(const std::string& path, const GridFunction& f) {
  std::ofstream os(path);
  if (!os) fail("cannot open '" + path + "' for writing");
  write_grid_csv(os, f);
}

GridFunction read_grid_csv(std::istream& is, std::shared_ptr<const Domain> dom) {
  const CsvData data = parse_csv(is);
  if (!dom) dom = infer_domain(data);
  if (data.dim != dom->dim()) {
    std::ostringstream os;
    os << "csv: file is " << data.dim << "-dimensional but the domain has n = "
       << dom->dim();
    fail(os.str());
  }
  std::vector<double> values(static_cast<std::size_t>(dom->cell_count()), 0.0);
  std::vector<std::uint8_t> seen(values.size(), 0);
  for (const auto& row : data.rows) {
    const std::int64_t c = locate_cell(*dom, row.x);
    if (c < 0) {
      std::ostringstream os;
      os << "csv: line " << row.line << ": center is not a cell of the domain";
      fail(os.str());
    }
    if (!dom->active(c)) {
      std::ostringstream os;
      os << "csv: line " << row.line << ": cell " << c << " is inactive";
      fail(os.str());
    }
    if (seen[static_cast<std::size_t>(c)]) {
      std::ostringstream os;
      os << "csv: line " << row.line << ": duplicate cell " << c;
      fail(os.str());
    }
    seen[static_cast<std::size_t>(c)] = 1;
    values[static_cast<std::size_t>(c)] = row.value;
  }
  std::int64_t missing = 0;
  for (const std::int64_t c : dom->active_cells())
    if (!seen[static_cast<std::size_t>(c)]) ++missing;
  if (missing > 0) {
    std::ostringstream os;
    os << "csv: " << missing << " active cell(s) have no row";
    fail(os.str());
  }
  return GridFunction(std::move(dom), std::move(values));
}

GridFunction read_grid_csv_file(const std::string& path,
                                std::shared_ptr<const Domain> dom) {
  std::ifstream is(path);
  if (!is) fail("cannot open '" + path + "'");
  try {
    return read_grid_csv(is, std::move(dom));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

DomainSpec domain_spec_from_json(const json& j) {
  if (!j.is_object()) fail("config.domain must be an object");
  DomainSpec d;
  const double n = get_number(j, "n");
  if (n != 1.0 && n != 2.0) fail("config.domain.n must be 1 or 2");
  d.dim = static_cast<int>(n);

  if (!j.contains("box") || !j.at("box").is_array())
    fail("config.domain.box must be an array");
  const auto& box = j.at("box");
  const auto read_interval = [&](const json& iv, int axis) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      fail("config.domain.box entries must be [lo, hi] number pairs");
    d.lo[axis] = iv[0].get<double>();
    d.hi[axis] = iv[1].get<double>();
    if (!(d.hi[axis] > d.lo[axis])) fail("config.domain.box interval must have lo < hi");
  };
  if (d.dim == 1 && box.size() == 2 && box[0].is_number()) {
    read_interval(json::array({box[0], box[1]}), 0);
  } else {
    if (static_cast<int>(box.size()) != d.dim)
      fail("config.domain.box must list one interval per axis");
    for (int a = 0; a < d.dim; ++a) read_interval(box[a], a);
  }

  if (!j.contains("resolution")) fail("config: missing field 'domain.resolution'");
  const auto& res = j.at("resolution");
  if (res.is_number()) {
    for (int a = 0; a < d.dim; ++a) d.res[a] = res.get<int>();
  } else if (res.is_array() && static_cast<int>(res.size()) == d.dim) {
    for (int a = 0; a < d.dim; ++a) {
      if (!res[a].is_number()) fail("config.domain.resolution entries must be numbers");
      d.res[a] = res[a].get<int>();
    }
  } else {
    fail("config.domain.resolution must be a count or one count per axis");
  }
  for (int a = 0; a < d.dim; ++a)
    if (d.res[a] < 1) fail("config.domain.resolution must be >= 1 per axis");

  d.mask = j.contains("mask") ? get_string(j, "mask") : "all";
  if (d.mask != "all" && d.mask != "disk" && d.mask.rfind("csv:", 0) != 0)
    fail("config.domain.mask must be 'all', 'disk', or 'csv:<path>'");

  // canonical values for the unused axis, so round-trips compare equal
  if (d.dim == 1) {
    d.lo[1] = 0.0;
    d.hi[1] = 1.0;
    d.res[1] = 1;
  }
  return d;
}

nlohmann::ordered_json domain_spec_to_json(const DomainSpec& d) {
  ordered_json j;
  j["n"] = d.dim;
  ordered_json box = ordered_json::array();
  for (int a = 0; a < d.dim; ++a) box.push_back({d.lo[a], d.hi[a]});
  j["box"] = box;
  ordered_json res = ordered_json::array();
  for (int a = 0; a < d.dim; ++a) res.push_back(d.res[a]);
  j["resolution"] = res;
  j["mask"] = d.mask;
  return j;
}

std::shared_ptr<const Domain> build_domain_from_spec(const DomainSpec& d,
                                                     const std::string& base_dir) {
  if (d.mask.rfind("csv:", 0) != 0) return d.build();

  const std::string path = resolve_path(d.mask.substr(4), base_dir);
  std::ifstream is(path);
  if (!is) fail("cannot open mask file '" + path + "'");
  const CsvData data = parse_csv(is);
  if (data.dim != d.dim) fail("mask csv dimension does not match domain");

  auto probe = Domain::build_masked(
      d.dim, d.lo, d.hi, d.res,
      std::vector<std::uint8_t>(
          static_cast<std::size_t>(static_cast<std::int64_t>(d.res[0]) *
                                   (d.dim == 2 ? d.res[1] : 1)),
          1));
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(probe->cell_count()), 0);
  for (const auto& row : data.rows) {
    const std::int64_t c = locate_cell(*probe, row.x);
    if (c < 0) {
      std::ostringstream os;
      os << "mask csv line " << row.line << ": center is not a cell of the domain";
      fail(os.str());
    }
    mask[static_cast<std::size_t>(c)] = row.value != 0.0 ? 1 : 0;
  }
  return Domain::build_masked(d.dim, d.lo, d.hi, d.res, std::move(mask));
}

ExponentSpec exponent_spec_from_json(const json& j) {
  if (!j.is_object()) fail("config.exponent must be an object");
  const std::string family = get_string(j, "family");
  ExponentSpec e;
  if (family == "constant") {
    e.family = ExponentSpec::Family::Constant;
    e.p0 = get_number(j, "p0");
  } else if (family == "affine") {
    e.family = ExponentSpec::Family::Affine;
    e.p0 = get_number(j, "p0");
    e.slope = get_number(j, "slope");
    e.clamp_lo = get_number(j, "clamp_lo");
    e.clamp_hi = get_number(j, "clamp_hi");
    if (!(e.clamp_lo <= e.clamp_hi))
      fail("config.exponent: clamp_lo must not exceed clamp_hi");
  } else if (family == "log_decay") {
    e.family = ExponentSpec::Family::LogDecay;
    e.p_inf = get_number(j, "p_inf");
    e.a = get_number(j, "a");
  } else if (family == "csv") {
    e.family = ExponentSpec::Family::Csv;
    e.path = get_string(j, "path");
  } else {
    fail("config.exponent.family must be constant|affine|log_decay|csv");
  }
  return e;
}

ExponentSpec exponent_spec_from_string(const std::string& s) {
  const auto parse_params = [&](const std::string& body, std::size_t want) {
    const auto parts = split(body, ',');
    if (parts.size() != want)
      fail("exponent spec '" + s + "': expected " + std::to_string(want) +
           " parameter(s)");
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(parse_double(p, 0));
    return out;
  };
  ExponentSpec e;
  if (s.rfind("csv:", 0) == 0) {
    e.family = ExponentSpec::Family::Csv;
    e.path = s.substr(4);
    return e;
  }
  if (s.rfind("const:", 0) == 0 || s.rfind("constant:", 0) == 0) {
    const auto v = parse_params(s.substr(s.find(':') + 1), 1);
    e.family = ExponentSpec::Family::Constant;
    e.p0 = v[0];
    return e;
  }
  if (s.rfind("affine:", 0) == 0) {
    const auto v = parse_params(s.substr(7), 4);
    e.family = ExponentSpec::Family::Affine;
    e.p0 = v[0];
    e.slope = v[1];
    e.clamp_lo = v[2];
    e.clamp_hi = v[3];
    return e;
  }
  if (s.rfind("log_decay:", 0) == 0) {
    const auto v = parse_params(s.substr(10), 2);
    e.family = ExponentSpec::Family::LogDecay;
    e.p_inf = v[0];
    e.a = v[1];
    return e;
  }
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    std::ifstream is(s);
    if (!is) fail("cannot open exponent file '" + s + "'");
    json j;
    try {
      is >> j;
    } catch (const json::exception& ex) {
      fail("exponent file '" + s + "': " + ex.what());
    }
    return exponent_spec_from_json(j);
  }
  fail("exponent spec '" + s +
       "' not understood; use const:, affine:, log_decay:, csv:, or a .json path");
}

nlohmann::ordered_json exponent_spec_to_json(const ExponentSpec& e) {
  ordered_json j;
  switch (e.family) {
    case ExponentSpec::Family::Constant:
      j["family"] = "constant";
      j["p0"] = e.p0;
      break;
    case ExponentSpec::Family::Affine:
      j["family"] = "affine";
      j["p0"] = e.p0;
      j["slope"] = e.slope;
      j["clamp_lo"] = e.clamp_lo;
      j["clamp_hi"] = e.clamp_hi;
      break;
    case ExponentSpec::Family::LogDecay:
      j["family"] = "log_decay";
      j["p_inf"] = e.p_inf;
      j["a"] = e.a;
      break;
    case ExponentSpec::Family::Csv:
      j["family"] = "csv";
      j["path"] = e.path;
      break;
  }
  return j;
}

ExponentField load_exponent(const ExponentSpec& e, std::shared_ptr<const Domain> dom,
                            const std::string& base_dir) {
  if (e.family != ExponentSpec::Family::Csv) return e.build(std::move(dom));
  return ExponentField(
      read_grid_csv_file(resolve_path(e.path, base_dir), std::move(dom)));
}

FunctionSpec function_spec_from_json(const json& j) {
  if (!j.is_object()) fail("config.function must be an object");
  const std::string kind = get_string(j, "kind");
  FunctionSpec f;
  if (kind == "csv") {
    f.kind = FunctionSpec::Kind::Csv;
    f.path = get_string(j, "path");
  } else if (kind == "constant") {
    f.kind = FunctionSpec::Kind::Constant;
    f.value = get_number(j, "value");
  } else if (kind == "mixture" || kind == "indicator" || kind == "sub_unit") {
    f.kind = kind == "mixture" ? FunctionSpec::Kind::Mixture
             : kind == "indicator" ? FunctionSpec::Kind::Indicator
                                   : FunctionSpec::Kind::SubUnit;
    f.seed = static_cast<std::uint64_t>(get_number_or(j, "seed", 1));
  } else {
    fail("config.function.kind must be csv|constant|mixture|indicator|sub_unit");
  }
  return f;
}

nlohmann::ordered_json function_spec_to_json(const FunctionSpec& f) {
  ordered_json j;
  switch (f.kind) {
    case FunctionSpec::Kind::Csv:
      j["kind"] = "csv";
      j["path"] = f.path;
      break;
    case FunctionSpec::Kind::Constant:
      j["kind"] = "constant";
      j["value"] = f.value;
      break;
    case FunctionSpec::Kind::Mixture:
      j["kind"] = "mixture";
      j["seed"] = f.seed;
      break;
    case FunctionSpec::Kind::Indicator:
      j["kind"] = "indicator";
      j["seed"] = f.seed;
      break;
    case FunctionSpec::Kind::SubUnit:
      j["kind"] = "sub_unit";
      j["seed"] = f.seed;
      break;
  }
  return j;
}

GridFunction build_function(const FunctionSpec& f, const DomainSpec& spec,
                            std::shared_ptr<const Domain> dom,
                            const std::string& base_dir) {
  switch (f.kind) {
    case FunctionSpec::Kind::Csv:
      return read_grid_csv_file(resolve_path(f.path, base_dir), std::move(dom));
    case FunctionSpec::Kind::Constant: {
      const double v = f.value;
      return GridFunction::from_fn(std::move(dom), [v](const Point&) { return v; });
    }
    case FunctionSpec::Kind::Mixture:
      return mixture_function(f.seed, spec).sample(std::move(dom));
    case FunctionSpec::Kind::Indicator:
      return indicator_function(f.seed, spec).sample(std::move(dom));
    case FunctionSpec::Kind::SubUnit:
      return sub_unit_function(f.seed, spec).sample(std::move(dom));
  }
  throw Error(ErrorCode::Internal, "unreachable function kind");
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) fail("config must be a JSON object");
  static const char* known[] = {"domain", "exponent", "alpha",   "function",
                                "max_side", "tol",     "seed",    "cases"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail("config: unknown field '" + key + "'");
  }
  RunConfig c;
  if (!j.contains("domain")) fail("config: missing field 'domain'");
  c.domain = domain_spec_from_json(j.at("domain"));
  if (!j.contains("exponent")) fail("config: missing field 'exponent'");
  c.exponent = exponent_spec_from_json(j.at("exponent"));
  c.alpha = get_number(j, "alpha");
  if (!j.contains("function")) fail("config: missing field 'function'");
  c.function = function_spec_from_json(j.at("function"));
  c.max_side = static_cast<int>(get_number_or(j, "max_side", 0));
  if (c.max_side < 0) fail("config.max_side must be >= 0");
  c.tol = get_number_or(j, "tol", 0.0);
  c.seed = static_cast<std::uint64_t>(get_number_or(j, "seed", 1));
  c.cases = static_cast<int>(get_number_or(j, "cases", 100));
  return c;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& c) {
  ordered_json j;
  j["domain"] = domain_spec_to_json(c.domain);
  j["exponent"] = exponent_spec_to_json(c.exponent);
  j["alpha"] = c.alpha;
  j["function"] = function_spec_to_json(c.function);
  j["max_side"] = c.max_side;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["cases"] = c.cases;
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot open config '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& ex) {
    fail("config '" + path + "': " + ex.what());
  }
  return run_config_from_json(j);
}

namespace {

ordered_json meta_to_json(const CaseMeta& m) {
  ordered_json j;
  j["case"] = m.case_id;
  j["alpha"] = m.alpha;
  j["n"] = m.dim;
  ordered_json res = ordered_json::array();
  for (int a = 0; a < m.dim; ++a) res.push_back(m.resolution[a]);
  j["resolution"] = res;
  j["max_side"] = m.max_side;
  j["seed"] = m.seed;
  j["exponent"] = m.exponent_family;
  j["mask"] = m.mask;
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["mode"] = r.mode;
  j["pass"] = r.pass;
  j["worst_ratio"] = json_number(r.worst_ratio);
  if (r.mode == "lemma") j["tolerance"] = r.tolerance;
  if (r.empirical_constant) j["empirical_constant"] = json_number(*r.empirical_constant);
  if (r.local_log_holder_c) j["local_log_holder_c"] = json_number(*r.local_log_holder_c);
  if (r.decay_log_holder_c) j["decay_log_holder_c"] = json_number(*r.decay_log_holder_c);
  if (r.norm_f) j["norm_f"] = json_number(*r.norm_f);
  if (r.modular_f) j["modular_f"] = json_number(*r.modular_f);
  j["metadata"] = meta_to_json(r.meta);
  if (r.has_fields) {
    ordered_json fields;
    fields["lhs"] = r.lhs;
    fields["rhs"] = r.rhs;
    j["fields"] = fields;
  }
  return j;
}

nlohmann::ordered_json sweep_to_json(const SweepReport& r) {
  ordered_json j;
  j["max_ratio"] = json_number(r.max_ratio);
  j["median_ratio"] = json_number(r.median_ratio);
  j["argmax_id"] = r.argmax_id;
  j["cases_run"] = r.cases_run;
  j["cases_skipped"] = r.cases_skipped;
  j["metadata"] = meta_to_json(r.meta);
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json row;
    row["id"] = e.case_id;
    row["ratio"] = json_number(e.ratio);
    row["norm_f"] = json_number(e.norm_f);
    row["norm_mf"] = json_number(e.norm_mf);
    entries.push_back(row);
  }
  j["ratios"] = entries;
  return j;
}

}  // namespace varlex
