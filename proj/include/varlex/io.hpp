#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

#include "varlex/generators.hpp"
#include "varlex/grid.hpp"
#include "varlex/lab.hpp"

namespace varlex {

// GridFunction CSV: header "x1,value" (n = 1) or "x1,x2,value"; one row per
// active cell in lexicographic cell order; shortest round-trip formatting.
void write_grid_csv(std::ostream& os, const GridFunction& f);
void write_grid_csv_file(const std::string& path, const GridFunction& f);

// With a domain: rows must cover exactly the active cells. Without one, the
// grid is inferred: spacing from the smallest center gap, box from the extreme
// centers, listed cells active. Inference needs at least two distinct
// coordinates per occupied axis.
GridFunction read_grid_csv(std::istream& is, std::shared_ptr<const Domain> dom);
GridFunction read_grid_csv_file(const std::string& path,
                                std::shared_ptr<const Domain> dom = nullptr);

// Domain JSON: {"n": 1|2, "box": [a,b] | [[a,b],...], "resolution": m | [m,...],
// "mask": "all" | "disk" | "csv:<path>"}. Mask CSV rows activate listed cells
// with a nonzero value; unlisted cells are inactive.
DomainSpec domain_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json domain_spec_to_json(const DomainSpec& d);
std::shared_ptr<const Domain> build_domain_from_spec(const DomainSpec& d,
                                                     const std::string& base_dir = "");

// Exponent configuration: JSON object {"family": ...} or the compact string
// forms "const:2", "affine:p0,slope,lo,hi", "log_decay:p_inf,a", "csv:<path>",
// or a path to a .json file holding the object form.
ExponentSpec exponent_spec_from_json(const nlohmann::json& j);
ExponentSpec exponent_spec_from_string(const std::string& s);
nlohmann::ordered_json exponent_spec_to_json(const ExponentSpec& e);
ExponentField load_exponent(const ExponentSpec& e, std::shared_ptr<const Domain> dom,
                            const std::string& base_dir = "");

struct FunctionSpec {
  enum class Kind { Csv, Constant, Mixture, Indicator, SubUnit };
  Kind kind = Kind::Constant;
  std::string path;
  double value = 1.0;
  std::uint64_t seed = 1;

  bool operator==(const FunctionSpec&) const = default;
};

FunctionSpec function_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json function_spec_to_json(const FunctionSpec& f);
GridFunction build_function(const FunctionSpec& f, const DomainSpec& spec,
                            std::shared_ptr<const Domain> dom,
                            const std::string& base_dir = "");

// One verification / sweep run, fully serializable; round-trip is identity.
struct RunConfig {
  DomainSpec domain;
  ExponentSpec exponent;
  double alpha = 0.25;
  FunctionSpec function;
  int max_side = 0;   // 0: one side length per axis cell
  double tol = 0.0;   // 0: solver default
  std::uint64_t seed = 1;
  int cases = 100;    // sweep only

  bool operator==(const RunConfig&) const = default;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json run_config_to_json(const RunConfig& c);
RunConfig load_run_config(const std::string& path);

nlohmann::ordered_json report_to_json(const VerificationReport& r);
nlohmann::ordered_json sweep_to_json(const SweepReport& r);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace varlex
