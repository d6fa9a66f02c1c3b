#include "toric/monoid.hpp"

#include <algorithm>

namespace toric {

bool GradedLexLess::operator()(const LatticePoint& a, const LatticePoint& b) const
{
    const Integer da = pairing(a, grading);
    const Integer db = pairing(b, grading);
    if (da != db)
        return da < db;
    return lexCompare(a, b) < 0;
}

namespace {

std::vector<LatticePoint> normalizeGenerators(Index rank, std::vector<LatticePoint> gens)
{
    if (rank < 1)
        throw DegenerateInputError("AffineMonoid: lattice rank must be positive");
    std::vector<LatticePoint> out;
    for (auto& g : gens)
    {
        if (g.size() != rank)
            throw DimensionError("AffineMonoid: generator " + toString(g) + " does not have rank "
                                 + std::to_string(rank));
        if (!isZero(g))
            out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), LexLess{});
    out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a == b; }), out.end());
    if (out.empty())
        throw DegenerateInputError("AffineMonoid: no nonzero generators (the torus action would not be effective)");
    MatrixXr m(static_cast<Index>(out.size()), rank);
    for (std::size_t i = 0; i < out.size(); ++i)
        m.row(static_cast<Index>(i)) = toRational(out[i]).transpose();
    if (matrixRank(m) != rank)
        throw DegenerateInputError("AffineMonoid: generators do not span a full-rank sublattice of M; "
                                   "sigma^vee would lie in a proper subspace (torus action not effective)");
    return out;
}

PolyhedralCone pointedDual(Index rank, const std::vector<LatticePoint>& gens)
{
    PolyhedralCone c = PolyhedralCone::fromGenerators(rank, gens);
    if (!c.pointed())
        throw DegenerateInputError("AffineMonoid: sigma^vee is not pointed, so sigma is not full-dimensional "
                                   "(P contains invertible elements other than 0)");
    return c;
}

}   // namespace

AffineMonoid::AffineMonoid(Index rank, std::vector<LatticePoint> generators, std::optional<LatticePoint> gradingVector)
    : rank_(rank),
      generators_(normalizeGenerators(rank, std::move(generators))),
      coneDual_(pointedDual(rank, generators_)),
      coneSigma_(dualCone(coneDual_)),
      sigmaRays_(rayGenerators(coneSigma_)),
      cache_(std::make_shared<Cache>())
{
    if (gradingVector)
    {
        if (gradingVector->size() != rank)
            throw DimensionError("AffineMonoid: grading vector has wrong rank");
        grading_ = *gradingVector;
    }
    else
    {
        grading_ = zeroPoint(rank);
        for (const auto& r : sigmaRays_)
            grading_ += r;
    }
    for (const auto& r : coneDual_.generators())
    {
        if (pairing(r, grading_) <= 0)
            throw PreconditionError("AffineMonoid: grading vector " + toString(grading_)
                                    + " is not in the interior of sigma (pairs " + pairing(r, grading_).str()
                                    + " with ray " + toString(r) + " of sigma^vee)");
    }
}

MonoidPtr makeMonoid(Index rank, std::vector<LatticePoint> generators, std::optional<LatticePoint> gradingVector)
{
    return std::make_shared<const AffineMonoid>(rank, std::move(generators), std::move(gradingVector));
}

Integer AffineMonoid::maxGeneratorDegree() const
{
    Integer best = 0;
    for (const auto& g : generators_)
        best = std::max(best, degree(g));
    return best;
}

bool AffineMonoid::inSaturation(const LatticePoint& m) const
{
    return coneDual_.contains(m);
}

bool AffineMonoid::contains(const LatticePoint& m) const
{
    if (m.size() != rank_)
        throw DimensionError("AffineMonoid::contains: rank mismatch");
    if (!inSaturation(m))
        return false;
    return containsImpl(m);
}

bool AffineMonoid::containsImpl(const LatticePoint& m) const
{
    if (isZero(m))
        return true;
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->membership.find(m);
        if (it != cache_->membership.end())
            return it->second;
    }
    // Every generator has positive degree, so the recursion terminates.
    bool found = false;
    for (const auto& g : generators_)
    {
        LatticePoint rest = m - g;
        if (inSaturation(rest) && containsImpl(rest))
        {
            found = true;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->membership.emplace(m, found);
    return found;
}

std::vector<LatticePoint> AffineMonoid::saturationPointsUpTo(long d) const
{
    if (d < 0)
        return {};
    // {m ∈ sigma^vee : <w0,m> <= d} is the simplex-like polytope spanned by 0
    // and d * r / <w0,r> over the rays r of sigma^vee.
    LatticePoint lo = zeroPoint(rank_), hi = zeroPoint(rank_);
    for (const auto& r : coneDual_.generators())
    {
        const Integer deg = pairing(r, grading_);
        for (Index j = 0; j < rank_; ++j)
        {
            const Rational v = Rational(r(j) * d, deg);
            const Integer fl = numerator(v) >= 0 ? Integer(numerator(v) / denominator(v))
                                                 : Integer(-((-numerator(v) + denominator(v) - 1) / denominator(v)));
            const Integer ce = numerator(v) >= 0 ? Integer((numerator(v) + denominator(v) - 1) / denominator(v))
                                                 : Integer(-((-numerator(v)) / denominator(v)));
            lo(j) = std::min(lo(j), fl);
            hi(j) = std::max(hi(j), ce);
        }
    }
    const Integer bound(d);
    auto pts = latticePointsInBox(lo, hi, [&](const LatticePoint& m) {
        return pairing(m, grading_) <= bound && inSaturation(m);
    });
    std::sort(pts.begin(), pts.end(), order());
    return pts;
}

Ambient AffineMonoid::truncationAmbient(long d) const
{
    if (d < 0)
        throw PreconditionError("truncationSet: degree must be nonnegative");
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->truncations.find(d);
        if (it != cache_->truncations.end())
            return it->second;
    }
    std::vector<LatticePoint> pts;
    for (auto& m : saturationPointsUpTo(d))
    {
        if (contains(m))
            pts.push_back(std::move(m));
    }
    Ambient amb = makeAmbient(std::move(pts));
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->truncations.emplace(d, amb).first->second;
}

const std::vector<LatticePoint>& AffineMonoid::truncationSet(long d) const
{
    return truncationAmbient(d)->points();
}

// ---------------------------------------------------------------------------

HoleReport holesUpTo(const AffineMonoid& P, long degreeBound)
{
    if (degreeBound < 0)
        throw PreconditionError("holesUpTo: degree bound must be nonnegative");
    HoleReport r;
    r.degreeBound = degreeBound;
    for (auto& m : P.saturationPointsUpTo(degreeBound))
    {
        if (!P.contains(m))
            r.holes.push_back(std::move(m));
    }
    return r;
}

SaturationVerdict isSaturated(const AffineMonoid& P, long degreeBound)
{
    if (Integer(degreeBound) < P.maxGeneratorDegree())
        throw PreconditionError("isSaturated: degree bound below the maximal generator degree "
                                + P.maxGeneratorDegree().str());
    auto holes = holesUpTo(P, degreeBound);
    if (!holes.holes.empty())
        return {SaturationVerdict::Status::NotSaturated, holes.holes.front(), degreeBound};
    return {SaturationVerdict::Status::SaturatedUpToBound, std::nullopt, degreeBound};
}

namespace {

/** Searches holes h with h - p ∈ sigma^vee and <w0, h - p> <= bound. */
SaturationPointVerdict saturationPointAgainst(const AffineMonoid& P, const LatticePoint& p,
                                              const std::vector<LatticePoint>& holes, long bound)
{
    const Integer limit = P.degree(p) + bound;
    for (const auto& h : holes)
    {
        if (P.degree(h) > limit)
            break;   // holes are sorted by degree
        if (P.coneDual().contains(h - p))
            return {SaturationPointVerdict::Status::CounterexampleFound, h, bound};
    }
    return {SaturationPointVerdict::Status::HoleFreeUpToBound, std::nullopt, bound};
}

}   // namespace

SaturationPointVerdict isSaturationPoint(const AffineMonoid& P, const LatticePoint& p, long degreeBound)
{
    if (!P.contains(p))
        throw PreconditionError("isSaturationPoint: " + toString(p) + " is not an element of P");
    const long reach = toLong(P.degree(p)) + degreeBound;
    return saturationPointAgainst(P, p, holesUpTo(P, reach).holes, degreeBound);
}

AlmostSaturatedVerdict almostSaturatedFace(const AffineMonoid& P, const Face& faceOfDual, long degreeBound)
{
    requireFace(faceOfDual, P.coneDual(), "almostSaturatedFace");
    const auto holes = holesUpTo(P, 2 * degreeBound).holes;
    for (const auto& p : P.truncationSet(degreeBound))
    {
        if (!onFace(faceOfDual, P.coneDual(), p))
            continue;
        if (saturationPointAgainst(P, p, holes, degreeBound).status
            == SaturationPointVerdict::Status::HoleFreeUpToBound)
            return {AlmostSaturatedVerdict::Status::AlmostSaturated, p, degreeBound};
    }
    return {AlmostSaturatedVerdict::Status::NoWitnessUpToBound, std::nullopt, degreeBound};
}

std::vector<LatticePoint> orbitIdealBasis(const AffineMonoid& P, const Face& faceOfDual, long d)
{
    requireFace(faceOfDual, P.coneDual(), "orbitIdealBasis");
    std::vector<LatticePoint> out;
    for (const auto& m : P.truncationSet(d))
    {
        if (!onFace(faceOfDual, P.coneDual(), m))
            out.push_back(m);
    }
    return out;
}

const char* toString(SaturationVerdict::Status s)
{
    return s == SaturationVerdict::Status::NotSaturated ? "NotSaturated" : "SaturatedUpToBound";
}

const char* toString(SaturationPointVerdict::Status s)
{
    return s == SaturationPointVerdict::Status::CounterexampleFound ? "CounterexampleFound" : "HoleFreeUpToBound";
}

const char* toString(AlmostSaturatedVerdict::Status s)
{
    return s == AlmostSaturatedVerdict::Status::AlmostSaturated ? "AlmostSaturated" : "NoWitnessUpToBound";
}

}   // namespace toric
