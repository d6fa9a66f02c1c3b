// Internals of the command-line front end: scenario files, JSON helpers and
// report rendering.

#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/corpus.hpp"

namespace toric::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int
{
    kExitOk = 0,
    kExitAssertionFailed = 1,
    kExitInputError = 2,
    kExitDegenerate = 3,
    kExitNilpotency = 4,
};

/** Malformed input: bad JSON, schema violations, bad flags. Maps to exit 2. */
class InputError : public std::runtime_error
{
    public:
        explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/** A supplied derivation failed the nilpotency check; carries the report. Maps to exit 4. */
class NilpotencyFailure : public std::runtime_error
{
    public:
        NilpotencyFailure(const std::string& what, json detail) : std::runtime_error(what), detail(std::move(detail)) {}
        json detail;
};

struct BoundsOverride
{
    std::optional<long> coordBound;
    std::optional<long> degreeBound;
    std::optional<long> sliceDegree;
    std::optional<long> truncationDegree;
};

using ElementSpec = std::vector<std::pair<LatticePoint, Rational>>;

struct Scenario
{
    std::string name;
    Index rank = 0;
    std::vector<LatticePoint> generators;
    std::optional<LatticePoint> grading;
    std::vector<DerivationSpec> derivations;
    std::vector<ElementSpec> elements;
    BoundsOverride bounds;
    std::string canonical;   // canonical JSON dump, hashed into reports
};

/** Parses and validates a scenario document; throws InputError with a path to the offending field. */
Scenario parseScenario(const std::string& text);
Scenario loadScenario(const std::string& path);

/** The scenario document for a corpus case. */
json scenarioJson(const ScenarioCase& c);

/** The case's data as a Scenario, as if read back from its exported file. */
Scenario scenarioFromCase(const ScenarioCase& c);

// JSON encoding of exact values: integers are numbers when |x| < 2^53 and
// decimal strings otherwise; rationals are always "p/q" strings.
json jsonInteger(const Integer& x);
json jsonPoint(const LatticePoint& p);
json jsonPoints(const std::vector<LatticePoint>& pts);
json jsonRational(const Rational& q);
json jsonElement(const AlgebraElement& f);
json jsonDerivation(const Derivation& d);
json jsonNilpotency(const NilpotencyStatus& s);
json jsonSubspace(const TruncatedSubspace& s);

std::string fnv1a64Hex(const std::string& bytes);

enum class Format { Text, Json };

/** Writes the report: canonical JSON (sorted keys, 2-space indent) or aligned text. */
void writeReport(std::ostream& out, const json& report, Format format, bool color);

}   // namespace toric::cli
