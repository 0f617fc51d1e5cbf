#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailinv/envelope.hpp"
#include "tailinv/oracle.hpp"
#include "tailinv/phi_function.hpp"

namespace tailinv::cli {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

// "start:stop:step" (stop included when it lands on the lattice), a comma
// list, or a single number. Strictly increasing. Throws InputError.
std::vector<double> parse_grid(const std::string& text, const std::string& option);

// Colon-separated numbers "a:b:c" with exactly `count` fields.
std::vector<double> parse_numbers(const std::string& text, const std::string& option, std::size_t count);

// MGF-exponent families on [0, inf):
//   quadratic[:s]   s l^2 / 2
//   quartic         l^4 / 4
//   power-log:p:r   l^p / p ln(e + l)^r
//   mgf:<law>       exact MGF exponent of an oracle law (see oracle_names())
PhiFunction parse_family(const std::string& spec);
std::string family_help();

OracleDistribution parse_law(const std::string& spec);
std::string oracle_names();

// Seed from TAILINV_SEED when set and valid, else kDefaultSeed.
std::uint64_t default_seed();

// Finite numbers as numbers, NaN as null, infinities as "inf" / "-inf".
json num(double v);
json nums(const std::vector<double>& v);
json envelope_json(const TailEnvelope& env);

struct Column {
  std::string name;
  std::vector<double> values;  // ln T, written as T; NaN left empty
  bool log_scale = true;       // false: written as is
};

// Wide table: x followed by one column per envelope. "-" writes to stdout.
void write_csv(const std::string& path, const std::vector<double>& x, const std::vector<Column>& columns);
void write_text(const std::string& path, const std::string& text);

}  // namespace tailinv::cli
