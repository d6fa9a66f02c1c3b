// Degree-truncated probes of the Makar-Limanov and Derksen invariants and
// their slice-restricted variants, over finite families of LNDs.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/derivation.hpp"
#include "toric/subalgebra.hpp"

namespace toric {

struct FamilyMember
{
    Derivation derivation;
    std::optional<AlgebraElement> slice;
    std::string note;   // how the member was obtained
};

/** A finite family of verified LNDs; members carry their slices where known. */
class DerivationFamily
{
    public:
        enum class Kind { AllRoots, SliceAdmitting, UserSupplied };

        /** Throws PreconditionError unless every member is VerifiedUpToBound (and sliced, for SliceAdmitting). */
        DerivationFamily(Kind kind, std::vector<FamilyMember> members, long coordBound = 0, long sliceDegree = 0);

        Kind kind() const { return kind_; }
        const std::vector<FamilyMember>& members() const { return members_; }
        bool empty() const { return members_.empty(); }
        std::size_t size() const { return members_.size(); }
        long coordBound() const { return coordBound_; }
        long sliceDegree() const { return sliceDegree_; }
        /** True iff every member carries a verified slice. */
        bool allSliced() const;

    private:
        Kind kind_;
        std::vector<FamilyMember> members_;
        long coordBound_;
        long sliceDegree_;
};

const char* toString(DerivationFamily::Kind k);

/** One member d_e per well-defined root (bounded), each verified locally nilpotent. */
DerivationFamily allRootsFamily(const MonoidPtr& P, long coordBound, long degreeBound);

/**
 * Slice-admitting roots d_e (slice chi^{-e}), plus every sum d_s + d_e of such
 * a root with another well-defined root that verifies as an LND and has a
 * slice of degree <= sliceDegree.
 */
DerivationFamily sliceAdmittingFamily(const MonoidPtr& P, long coordBound, long degreeBound, long sliceDegree);

/** Verifies each derivation and searches for a slice; throws NonNilpotentError if one is inconclusive. */
DerivationFamily userFamily(const std::vector<Derivation>& derivations, long sliceDegree);

struct ProbeResult
{
    enum class Direction { LowerBoundOfInvariant, UpperBoundOfInvariant };
    TruncatedSubspace subspace;
    long degree;
    Direction direction;
    std::size_t familySize;
};

const char* toString(ProbeResult::Direction d);

/** Intersection of the members' kernels in degree <= d; an upper bound. */
ProbeResult mlProbe(const DerivationFamily& family, long d);
/** Truncated subalgebra generated by the members' kernels; a lower bound. */
ProbeResult hdProbe(const DerivationFamily& family, long d);
/** hdProbe restricted to slice-admitting families. */
ProbeResult hdStarProbe(const DerivationFamily& family, long d);

/** True iff the chi^m coordinate vanishes on the subspace; IndexError if m is not in the ambient. */
bool coefficientVanishes(const TruncatedSubspace& space, const LatticePoint& m);

/** True iff the subspace is span{1}. */
bool isConstants(const TruncatedSubspace& space);
bool isFull(const TruncatedSubspace& space);

struct MlComparison
{
    enum class Status { Equal, Different, HypothesisNotMet };
    Status status;
    std::optional<TruncatedSubspace> ml;       // AllRoots family, augmented by slice sums
    std::optional<TruncatedSubspace> mlStar;   // SliceAdmitting family
    std::vector<VectorXr> discrepancy;         // basis of vectors in one probe but not the other
    std::size_t mlFamilySize = 0;
    std::size_t mlStarFamilySize = 0;
    long degree = 0;
};

const char* toString(MlComparison::Status s);

MlComparison mlEqualsMlStarCheck(const MonoidPtr& P, long coordBound, long degreeBound, long sliceDegree, long d);

}   // namespace toric
