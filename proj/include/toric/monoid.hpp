// Finitely generated submonoids P of M = Z^n and their hole structure.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "toric/cone.hpp"
#include "toric/exactmath.hpp"

namespace toric {

/** Graded-lexicographic order: by <w, m>, then lexicographically. */
struct GradedLexLess
{
    LatticePoint grading;
    bool operator()(const LatticePoint& a, const LatticePoint& b) const;
};

/**
 * The weight monoid of an affine toric variety: P = N-span of the
 * generators inside M. The cone Q_{>=0} P = sigma^vee must be pointed and
 * full-dimensional; the grading vector w0 lies in the interior of sigma.
 *
 * Membership answers are memoized in a mutex-guarded cache shared by all
 * copies, so a monoid can be queried from several threads.
 */
class AffineMonoid
{
    public:
        AffineMonoid(Index rank, std::vector<LatticePoint> generators,
                     std::optional<LatticePoint> gradingVector = std::nullopt);

        Index rank() const { return rank_; }
        const std::vector<LatticePoint>& generators() const { return generators_; }
        const PolyhedralCone& coneDual() const { return coneDual_; }
        const PolyhedralCone& coneSigma() const { return coneSigma_; }
        const LatticePoint& gradingVector() const { return grading_; }
        /** Primitive ray generators of sigma, the order used for ray indices. */
        const std::vector<LatticePoint>& sigmaRays() const { return sigmaRays_; }

        Integer degree(const LatticePoint& m) const { return pairing(m, grading_); }
        Integer maxGeneratorDegree() const;
        GradedLexLess order() const { return GradedLexLess{grading_}; }

        /** m ∈ P, decided by memoized recursion on the w0-degree. */
        bool contains(const LatticePoint& m) const;
        /** m ∈ P_sat = M ∩ sigma^vee. */
        bool inSaturation(const LatticePoint& m) const;

        /** M ∩ sigma^vee with w0-degree <= d, graded-lex sorted. */
        std::vector<LatticePoint> saturationPointsUpTo(long d) const;
        /** {m ∈ P : <w0, m> <= d}, graded-lex sorted (cached per d). */
        const std::vector<LatticePoint>& truncationSet(long d) const;
        /** The truncation set as a shared ambient basis (cached per d). */
        Ambient truncationAmbient(long d) const;

        bool operator==(const AffineMonoid& other) const
        {
            return rank_ == other.rank_ && generators_ == other.generators_ && grading_ == other.grading_;
        }

    private:
        bool containsImpl(const LatticePoint& m) const;

        struct Cache
        {
            std::mutex mutex;
            std::map<LatticePoint, bool, LexLess> membership;
            std::map<long, Ambient> truncations;
        };

        Index rank_;
        std::vector<LatticePoint> generators_;
        PolyhedralCone coneDual_;
        PolyhedralCone coneSigma_;
        std::vector<LatticePoint> sigmaRays_;
        LatticePoint grading_;
        std::shared_ptr<Cache> cache_;
};

using MonoidPtr = std::shared_ptr<const AffineMonoid>;

MonoidPtr makeMonoid(Index rank, std::vector<LatticePoint> generators,
                     std::optional<LatticePoint> gradingVector = std::nullopt);

inline bool contains(const AffineMonoid& P, const LatticePoint& m) { return P.contains(m); }
inline bool inSaturation(const AffineMonoid& P, const LatticePoint& m) { return P.inSaturation(m); }

struct HoleReport
{
    long degreeBound = 0;
    std::vector<LatticePoint> holes;   // graded-lex sorted
    bool complete = true;              // complete up to degreeBound
};

HoleReport holesUpTo(const AffineMonoid& P, long degreeBound);

struct SaturationVerdict
{
    enum class Status { NotSaturated, SaturatedUpToBound };
    Status status;
    std::optional<LatticePoint> witness;
    long bound;
};

/** Requires degreeBound >= max generator degree. */
SaturationVerdict isSaturated(const AffineMonoid& P, long degreeBound);

struct SaturationPointVerdict
{
    enum class Status { CounterexampleFound, HoleFreeUpToBound };
    Status status;
    std::optional<LatticePoint> hole;
    long bound;
};

/** Bounded search for a hole h ∈ p + sigma^vee with <w0, h - p> <= bound. Requires p ∈ P. */
SaturationPointVerdict isSaturationPoint(const AffineMonoid& P, const LatticePoint& p, long degreeBound);

struct AlmostSaturatedVerdict
{
    enum class Status { AlmostSaturated, NoWitnessUpToBound };
    Status status;
    std::optional<LatticePoint> witness;
    long bound;
};

/**
 * Searches P ∩ face (graded-lex, degree <= bound) for a saturation point,
 * each candidate tested as in isSaturationPoint.
 */
AlmostSaturatedVerdict almostSaturatedFace(const AffineMonoid& P, const Face& faceOfDual, long degreeBound);

inline const std::vector<LatticePoint>& truncationSet(const AffineMonoid& P, long d) { return P.truncationSet(d); }

/** Monomials of truncationSet(P, d) off the face: the truncated orbit ideal. */
std::vector<LatticePoint> orbitIdealBasis(const AffineMonoid& P, const Face& faceOfDual, long d);

const char* toString(SaturationVerdict::Status s);
const char* toString(SaturationPointVerdict::Status s);
const char* toString(AlmostSaturatedVerdict::Status s);

}   // namespace toric
