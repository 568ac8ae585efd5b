#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptslab/atomic_base.hpp"
#include "ptslab/formula.hpp"
#include "ptslab/validity.hpp"

namespace ptslab::cli {

enum class Format { Text, Lines };

struct RunConfig {
  std::string command;
  /// Positional operands in order (paths, formulas, variant or demo name).
  std::vector<std::string> inputs;
  std::vector<std::string> context;
  std::optional<std::size_t> max_steps;
  std::vector<std::string> sigma_pool;
  std::vector<std::string> extensions;
  /// `.base` files, or one `enumerate:atoms=K,rules=M` spec.
  std::vector<std::string> family;
  Format format = Format::Text;
  bool rsystem = false;
  std::string formula = "a";
  std::optional<std::size_t> extension_rules;
  std::optional<std::string> atoms;
  std::size_t rules = 2;
  std::size_t cap = 1'000'000;
};

/// One machine-readable output line: a record type followed by
/// tab-separated `key=value` fields. Tabs, newlines and backslashes in values
/// are escaped.
struct Record {
  std::string type;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<std::string> get(std::string_view key) const;
  friend bool operator==(const Record&, const Record&) = default;
};
std::string format_record(const Record& r);
/// Throws ParseError.
Record parse_record(std::string_view line);

/// 0 Valid, 1 Invalid, 2 Unknown.
int exit_code(Verdict::Kind k);

struct SearchResult {
  enum class Status { Found, None, CapExceeded };
  Status status = Status::None;
  std::optional<AtomicBase> base;
  std::size_t examined = 0;
};

/// First enumerated base over `atoms` (consistent, at most opts.max_rules
/// rules) on which context does not entail goal.
SearchResult search_counterexample(const std::vector<Formula>& context, const Formula& goal,
                                   const std::vector<Atom>& atoms, const EnumerationOptions& opts);

/// Loads bases from files, or enumerates them; sorted by id.
std::vector<AtomicBase> load_family(const std::vector<std::string>& specs);

/// Parses argv into a config and runs it. Exit codes: 0 holds or Valid,
/// 1 fails or Invalid, 2 Unknown, 3 usage, parse or I/O error.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ptslab::cli
