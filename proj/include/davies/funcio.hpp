#pragma once

#include "davies/builder.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace davies {

/// Rejection of a representation or input file, naming what failed.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builtin pair functions: "product", "zero", "randtable:SEED:M",
/// "expseries:K", "e0".
PairFunction builtin(const std::string& descriptor);

/// CSV of rationals, one matrix row per line.
PairFunction load_table(const std::filesystem::path& csv_path);

/// A builtin descriptor or "table:PATH".
PairFunction function_from_spec(const std::string& spec);

/// JSON array of {"label": ..., "payload": "p/q" | {"prefix","tail"} | null}.
PointList load_points(const std::filesystem::path& json_path);
PointList points_from_json_text(const std::string& text);

/// Canonical JSON text of a representation: function descriptor (inline
/// table when needed), points, per-row values and milestones at canonical
/// depth, per-pair cutoffs. Canonicalizes the representation first, so the
/// bytes do not depend on prior evaluation order.
std::string representation_to_json(Representation& rep);

void dump_representation(Representation& rep, const std::filesystem::path& out_path);

/// Rebuilds the representation recorded in the text from its function and
/// points, compares every recorded value, milestone, and cutoff against
/// the reconstruction, and re-verifies the sum identities and the support
/// discipline. Throws validation_error naming the first violation.
Representation representation_from_json(const std::string& text);

Representation load_representation(const std::filesystem::path& in_path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace davies
