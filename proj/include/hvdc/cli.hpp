#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hvdc/monoidal.hpp"
#include "hvdc/yoneda.hpp"

namespace hvdc {

/// Input-side failure: parse errors, validation failures on load, dangling
/// references, unknown commands or entries, and shape mismatches. The
/// command-line driver maps this to exit code 2; check failures exit 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A named collection of artifacts loaded from one or more documents. All
/// cross-references are resolved on load and every entry passes its
/// validator; provenance records the source file per entry ("section/name").
///
/// Document format: UTF-8 JSON with a versioned top level {"hvdc": 1}.
/// Pair keys are rendered "x→y" (hom and profunctor fibers), "g∘f"
/// (composition, g after f), "a·u" / "u·b" (left/right actions); tuple keys
/// are comma-joined (the empty tuple is ""); associator keys are
/// "shape|leaves". Atoms containing these delimiters are the caller's
/// responsibility. Canonical ordering makes saves bit-exact.
struct Workspace {
  struct LaxEntry {
    LaxMonoidalFunctor functor;
    std::string source;  // monoidal-structure name
    std::string target;
  };
  struct MonProfEntry {
    MonoidalProfunctor profunctor;
    std::string source;
    std::string target;
  };
  struct ContextEntry {
    std::vector<std::string> profunctors;
    std::vector<std::string> verticals;
    std::size_t path_len = 2;
  };

  std::map<std::string, FinCategory> categories;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, NatTransformation> transformations;
  std::map<std::string, Profunctor> profunctors;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, Cell> cells;
  std::map<std::string, MonoidalStructure> monoidal;
  std::map<std::string, LaxEntry> lax_functors;
  std::map<std::string, MonProfEntry> monoidal_profunctors;
  std::map<std::string, ContextEntry> contexts;
  std::map<std::string, std::string> provenance;
};

/// Parses and validates a document; the error message lists every violation.
Workspace load_workspace(const std::string& path);
Workspace parse_workspace(const std::string& text, const std::string& provenance);

/// Canonical serialized form; load ∘ save is the identity.
nlohmann::ordered_json workspace_json(const Workspace& ws);
void save_workspace(const Workspace& ws, const std::string& path);

/// One verdict line of a report.
struct ReportCheck {
  std::string name;
  CheckResult result;
};

struct RunOptions {
  std::optional<std::string> ctx;        // named context; default = whole workspace, L = 2
  std::optional<std::size_t> path_len;   // overrides the context's bound
  std::optional<std::size_t> arity;      // lowers the monoidal arity bound
  std::optional<std::uint64_t> seed;     // echoed for reproducibility
};

/// Outcome of one command: the structured invocation (so it can be re-run),
/// per-check verdicts with witnesses, constructed artifacts (already
/// serialized, deterministic), and wall time. ok() iff every verdict holds
/// (exactly or boundedly).
struct Report {
  std::string name;
  std::vector<std::string> args;
  RunOptions options;
  std::vector<ReportCheck> checks;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  double elapsed_ms = 0.0;

  std::string command() const;  // rendered echo, e.g. "day z2 y0 y1 --arity 2"
  bool ok() const;
};

/// Machine-readable form; report_from_json(report_json(r)) reproduces r,
/// including failure witnesses (cells are embedded self-contained).
nlohmann::ordered_json report_json(const Report& report);
Report report_from_json(const nlohmann::ordered_json& j);
std::string report_text(const Report& report);

/// Dispatches one named command. Commands: validate, compose, restrict,
/// companion, conjoint, unit, tabulate, cotabulate, kan, weighted-colim,
/// dense, yoneda-check, curry, day, monoidal-yoneda, bc-check, doctrinal,
/// lift-kan, check-cartesian, check-cocartesian, check-pointwise.
/// Unknown commands, missing entries, and shape mismatches throw InputError.
Report run(const std::string& command, const std::vector<std::string>& args,
           const Workspace& ws, const RunOptions& opt = {});

/// Re-runs the stored report's command (with its stored options) against the
/// workspace and confirms it reproduces bit-exactly (timing aside); in
/// particular every failing check re-fails with the same witness.
bool verify_witness(const Report& stored, const Workspace& ws);

}  // namespace hvdc
