#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atsuji/analysis.hpp"
#include "atsuji/error.hpp"
#include "atsuji/space.hpp"

namespace atsuji::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitInputError = 2 };

/// Malformed or invalid input; the message names the offending field.
class InputError : public Error {
public:
    using Error::Error;
};

struct LoadedSpec {
    FiniteSpace space;
    DerivedSetView derived;
    /// The spec document as read, echoed into reports.
    Json echo;
};

/// Parses a space-spec document. `tol_override` replaces the document's tol.
LoadedSpec load_spec(const Json& doc, std::optional<double> tol_override = std::nullopt);
LoadedSpec load_spec_file(const std::string& path, std::optional<double> tol_override = std::nullopt);

/// Matrix-arm spec document for an arbitrary space and derived set (what --out-matrix writes).
Json matrix_spec(const FiniteSpace& space, const DerivedSetView& derived);

/// Doubles serialize with shortest round-trip precision; infinity becomes the string "inf".
Json number(double value);

/// Serialized form used for every report written by the tool.
std::string dump(const Json& doc);

/// Entry point; `args` excludes the program name. Reports go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atsuji::cli
