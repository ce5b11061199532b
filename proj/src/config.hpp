#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dfkg {

// Parse or validation failure; carries the source location when known and
// the offending key path when the error is semantic.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& msg, int line = 0, int col = 0,
              std::string key_path = "");
  int line = 0;
  int col = 0;
  std::string key_path;
};

// Plain-text nested key/value configuration: tables ([a.b] and [[a.b]]),
// typed scalars (bool, integer, float, string), single-line arrays and
// inline tables. The exact grammar is documented in docs/config.md.
class ConfigValue {
 public:
  using Array = std::vector<ConfigValue>;
  using Table = std::map<std::string, ConfigValue>;
  enum class Kind { Empty, Bool, Int, Float, String, Array, Table };

  ConfigValue() = default;

  Kind kind() const;
  bool is_table() const { return kind() == Kind::Table; }
  bool is_array() const { return kind() == Kind::Array; }

  bool as_bool(const std::string& path) const;
  long long as_int(const std::string& path) const;
  double as_double(const std::string& path) const;  // accepts Int too
  const std::string& as_string(const std::string& path) const;
  const Array& as_array(const std::string& path) const;
  const Table& as_table(const std::string& path) const;
  Table& table();

  const ConfigValue* find(const std::string& key) const;

  std::variant<std::monostate, bool, long long, double, std::string, Array,
               Table>
      value;
  int line = 0;
  int col = 0;
};

ConfigValue parse_config_text(const std::string& text);
ConfigValue parse_config_file(const std::string& path);

// Closest candidate by edit distance, empty when nothing is close enough.
std::string suggest_key(const std::string& unknown,
                        const std::vector<std::string>& known);

}  // namespace dfkg
