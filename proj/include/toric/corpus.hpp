// Built-in regression corpus: monoids, derivation families and expected
// facts, each with a note on where the expected value comes from.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/invariants.hpp"

namespace toric {

struct Bounds
{
    long coordBound = 3;
    long degreeBound = 10;
    long sliceDegree = 4;
    long truncationDegree = 8;
};

/** A derivation given as (root, coefficient) pairs. */
using DerivationSpec = std::vector<std::pair<LatticePoint, Rational>>;

/**
 * A named check re-derived by the engine. `bound` is the kind-specific
 * bound (hole degree, coordinate bound or truncation degree) and `family`
 * selects derivations for probe facts: "allRoots", "sliceAdmitting" or
 * "derivations:i,j,..." (indices into the case's derivation list).
 */
struct ExpectedFact
{
    enum class Kind
    {
        GeneratorCount,
        Holes,
        Saturated,
        FaceCount,
        RootCount,
        WellDefinedRootCount,
        RootsOfDegree,
        WellDefinedRootsOfDegree,
        SliceRoots,
        LemmaOne,
        MlProbe,
        HdProbe,
        HdStarZeroCoefficient,
        MlEqualsMlStar,
    };
    Kind kind;
    long bound = 0;
    std::string family;
    std::optional<LatticePoint> monomial;   // HdStarZeroCoefficient target
    long degree = 0;                        // RootsOfDegree: w0-degree
    std::string expected;
    std::string provenance;
};

const char* toString(ExpectedFact::Kind k);

struct ScenarioCase
{
    std::string name;
    Index rank = 0;
    std::vector<LatticePoint> monoidGenerators;
    std::optional<LatticePoint> gradingVector;
    std::vector<DerivationSpec> derivations;
    std::vector<ExpectedFact> facts;
    Bounds defaultBounds;

    MonoidPtr monoid() const;
};

/** The non-normal example Z^3_>=0 minus the two vertical rays over (1,0) and (0,1). */
ScenarioCase paperExample();
std::vector<ScenarioCase> standardCorpus();
std::optional<ScenarioCase> findCase(const std::string& name);

/** Builds a family for a probe fact (members verified; slices searched at the case's slice degree). */
DerivationFamily familyFor(const ScenarioCase& c, const MonoidPtr& P, const std::string& selector);

/** Renders the engine's value for a fact in the same notation as `expected`. */
std::string evaluateFact(const ScenarioCase& c, const MonoidPtr& P, const ExpectedFact& fact);

struct FactCheck
{
    std::string name;
    std::string expected;
    std::string actual;
    std::string provenance;
    bool passed = false;
};

std::vector<FactCheck> checkCase(const ScenarioCase& c);

/** "{(1,0),(0,1)}" in the given order. */
std::string toString(const std::vector<LatticePoint>& pts);

}   // namespace toric
