// Demazure roots of a pointed cone and their well-definedness on a
// (possibly non-saturated) weight monoid.

#pragma once

#include <optional>
#include <vector>

#include "toric/cone.hpp"
#include "toric/monoid.hpp"

namespace toric {

/** e ∈ M with <e, rho> = -1 for its distinguished ray and >= 0 on all other rays. */
struct DemazureRoot
{
    LatticePoint e;
    LatticePoint distinguishedRay;   // primitive generator p_rho
    std::size_t rayIndex = 0;        // index into rayGenerators(sigma)

    bool operator==(const DemazureRoot& other) const
    {
        return e == other.e && distinguishedRay == other.distinguishedRay && rayIndex == other.rayIndex;
    }
};

/** Whether e satisfies the root inequalities for ray `rayIndex` of the given rays. */
bool satisfiesRootConditions(const LatticePoint& e, const std::vector<LatticePoint>& sigmaRays, std::size_t rayIndex);

/** The root with degree vector e, if e is one (its distinguished ray is unique). */
std::optional<DemazureRoot> rootFromVector(const std::vector<LatticePoint>& sigmaRays, const LatticePoint& e);
std::optional<DemazureRoot> rootFromVector(const AffineMonoid& P, const LatticePoint& e);

/** Roots with sup-norm <= coordBound, sorted by (rayIndex, lex(e)). */
std::vector<DemazureRoot> enumerateRoots(const PolyhedralCone& sigma, long coordBound);

struct WellDefinedVerdict
{
    enum class Status { HoldsUpToBound, Violation };
    Status status;
    std::optional<LatticePoint> witness;   // hole q with q - e ∈ P
    long bound;

    bool holds() const { return status == Status::HoldsUpToBound; }
};

/** Bounded check of (P + e) ∩ P_sat ⊆ P, quantifying over holes of degree <= bound. */
WellDefinedVerdict isWellDefined(const AffineMonoid& P, const DemazureRoot& root, long degreeBound);

/** Well-defined roots (up to the bounds) whose homogeneous derivation has the slice chi^{-e}. */
std::vector<DemazureRoot> rootsWithSlice(const AffineMonoid& P, long coordBound, long degreeBound);

/** Well-defined roots of P up to the bounds, in enumeration order. */
std::vector<DemazureRoot> wellDefinedRoots(const AffineMonoid& P, long coordBound, long degreeBound);

struct LemmaOneReport
{
    enum class Verdict { AgreeYes, AgreeNo, InconclusiveAtBounds };
    Verdict verdict;
    std::size_t rayIndex;
    LatticePoint ray;
    Face faceHat;                                  // rho-hat in sigma^vee
    std::optional<LatticePoint> saturationWitness; // condition (1)
    std::optional<DemazureRoot> rootWitness;       // condition (2)
    long coordBound;
    long degreeBound;
};

/**
 * Evaluates the two bounded searches attached to a ray: an almost saturated
 * face rho-hat, and a well-defined root with distinguished ray rho.
 */
LemmaOneReport lemmaOneCheck(const AffineMonoid& P, std::size_t rayIndex, long coordBound, long degreeBound);

const char* toString(WellDefinedVerdict::Status s);
const char* toString(LemmaOneReport::Verdict v);

}   // namespace toric
