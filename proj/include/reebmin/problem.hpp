#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reebmin/approx.hpp"
#include "reebmin/cxonevol.hpp"
#include "reebmin/downgrade.hpp"
#include "reebmin/toricvol.hpp"

namespace reebmin {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "reebmin/1";

enum class Command { Minimize, Eval, Futaki, Downgrade, Binom2Toric, Oracle, Approx };

/// Throws ParseError for an unknown name.
Command parse_command(std::string_view name);
std::string_view command_name(Command c);

/// Command-line overrides; unset fields fall back to the spec's "options", then to defaults.
struct RunOptions {
    std::optional<Real> tolerance;
    std::optional<int> max_iter;
    std::optional<unsigned> precision_bits;
    unsigned threads = 1;
};

struct ApproxPayload {
    std::vector<RealEnclosure> target;
    Rat epsilon;
    std::optional<std::vector<int>> signs;  // present: signed mode
    std::int64_t q_max = default_q_max;
};

/// A decoded "reebmin/1" document. Exactly one payload group is filled, by kind.
struct ProblemSpec {
    std::string kind;  // toric, complexity_one, binomial, downgrade, approx
    std::string name;
    Json doc;

    std::optional<ToricData> toric;
    std::optional<BinomialHypersurface> binomial;
    std::optional<DowngradeData> downgrade;
    std::vector<std::pair<std::string, IntVec>> downgrade_points;
    std::optional<IntVec> equation_weight;
    std::optional<PolyhedralDivisor> divisor;
    std::optional<ComplexityOneData> cxone;  // divisor plus u0
    std::optional<IntMatrix> ambient_weights;  // F, for reporting coordinate weights
    std::optional<ApproxPayload> approx;

    std::optional<ReebVector> xi;
    std::optional<std::vector<RealVec>> etas;
    std::vector<Rat> oracle_m;

    std::optional<Real> tolerance;
    std::optional<int> max_iter;
    std::optional<unsigned> precision_bits;
};

/// Structural problems throw ParseError; payloads violating a module's
/// invariants throw that module's error.
ProblemSpec parse_spec(const Json& doc);
ProblemSpec parse_spec_text(std::string_view text);
ProblemSpec load_spec_file(const std::string& path);

/// Report with "schema", "command", "input", "options" and "result".
Json run(Command command, const ProblemSpec& spec, const RunOptions& options = {});

/// {"error": {"code", "message"}}.
Json error_report(const Error& e);

/// 2 for ParseError, 1 otherwise.
int exit_code_for(const Error& e);

/// Plain-text rendering of a report's result section.
std::string render_table(const Json& report);

}  // namespace reebmin
