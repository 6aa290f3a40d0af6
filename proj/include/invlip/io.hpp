#pragma once

// JSON encodings shared by the CLI, the suite and the Python module.
// Rationals travel as "p/q" strings, words as arrays of [generator, sign].

#include "invlip/approximants.hpp"
#include "invlip/group_space.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/lipschitz.hpp"
#include "invlip/mean_growth.hpp"
#include "invlip/quasimorphism.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invlip::io {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& field);
RationalVector rational_vector_from_json(const json& j, const std::string& field);

json to_json(const Word& w);
/// Accepts [[g, sign], ...] or a string parsed with `names`.
Word word_from_json(const json& j, std::size_t rank, const std::vector<std::string>& names, const std::string& field);

json to_json(const Scope& s);
json to_json(const LipFn& f);
LipFn lipfn_from_json(const json& j, const GroupSpace& space, const std::string& field);

/// A group instance: presentation, backend and an optional function.
struct Instance {
    Presentation presentation;
    std::string backend;
    std::vector<Permutation> permutations;  // finite_cayley only
    std::optional<json> function;
    std::optional<FiniteActionSpace> action;
};

Instance instance_from_json(const json& j);
Instance load_instance(const std::string& path);
json read_json_file(const std::string& path);

/// Metric space realizing the instance's backend over its generators.
GroupSpace build_space(const Instance& inst);

/// The instance function; kind "random" is drawn with `seed`.
LipFn build_function(const Instance& inst, const GroupSpace& space, std::uint64_t seed);
PointFunction build_point_function(const Instance& inst, std::uint64_t seed);

/// Orbit-constant base plus a small perturbation, vanishing at point 0.
PointFunction random_point_function(const FiniteActionSpace& fa, std::uint64_t seed);

FiniteActionSpace action_from_json(const json& j);
json to_json(const FiniteActionSpace& fa);

json to_json(const DefectReport& d);
json to_json(const ApproximationReport& r);
json to_json(const MeanGrowth& mg);
json to_json(const KernelProjection& kp);
json to_json(const QmReport& q);
json to_json(const TwoSidedDefect& d);
json to_json(const PqmImplications& p);

RationalMatrix matrix_from_json(const json& j);

/// One CSV row per report: seed,delta_hat,bound,achieved,pass. Rows keep the
/// order of `seeds`. Throws PreconditionError on an empty list.
struct CurveRow {
    std::uint64_t seed;
    ApproximationReport report;
};
void emit_curve(const std::vector<CurveRow>& rows, const std::string& path);
std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace invlip::io
