#include "toric/roots.hpp"

#include <algorithm>

#include "toric/parallel.hpp"

namespace toric {

bool satisfiesRootConditions(const LatticePoint& e, const std::vector<LatticePoint>& sigmaRays, std::size_t rayIndex)
{
    for (std::size_t j = 0; j < sigmaRays.size(); ++j)
    {
        const Integer p = pairing(e, sigmaRays[j]);
        if (j == rayIndex ? p != -1 : p < 0)
            return false;
    }
    return true;
}

std::optional<DemazureRoot> rootFromVector(const std::vector<LatticePoint>& sigmaRays, const LatticePoint& e)
{
    for (std::size_t i = 0; i < sigmaRays.size(); ++i)
    {
        if (satisfiesRootConditions(e, sigmaRays, i))
            return DemazureRoot{e, sigmaRays[i], i};
    }
    return std::nullopt;
}

std::optional<DemazureRoot> rootFromVector(const AffineMonoid& P, const LatticePoint& e)
{
    return rootFromVector(P.sigmaRays(), e);
}

std::vector<DemazureRoot> enumerateRoots(const PolyhedralCone& sigma, long coordBound)
{
    if (!sigma.pointed() || !sigma.fullDimensional())
        throw DegenerateInputError("enumerateRoots: sigma must be pointed and full-dimensional");
    if (coordBound < 1)
        throw PreconditionError("enumerateRoots: coordinate bound must be at least 1");
    const auto rayGens = rayGenerators(sigma);
    const Index n = sigma.rank();
    LatticePoint lo(n), hi(n);
    for (Index i = 0; i < n; ++i)
    {
        lo(i) = -coordBound;
        hi(i) = coordBound;
    }
    auto perRay = parallelMap<std::vector<DemazureRoot>>(rayGens.size(), [&](std::size_t i) {
        std::vector<DemazureRoot> out;
        for (auto& e : latticePointsInBox(lo, hi, [&](const LatticePoint& v) {
                 return satisfiesRootConditions(v, rayGens, i);
             }))
            out.push_back(DemazureRoot{std::move(e), rayGens[i], i});
        return out;
    });
    std::vector<DemazureRoot> all;
    for (auto& v : perRay)
        all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    return all;
}

WellDefinedVerdict isWellDefined(const AffineMonoid& P, const DemazureRoot& root, long degreeBound)
{
    if (!satisfiesRootConditions(root.e, P.sigmaRays(), root.rayIndex)
        || root.distinguishedRay != P.sigmaRays()[root.rayIndex])
        throw PreconditionError("isWellDefined: " + toString(root.e) + " is not a root of sigma for the stated ray");
    for (const auto& q : holesUpTo(P, degreeBound).holes)
    {
        if (P.contains(q - root.e))
            return {WellDefinedVerdict::Status::Violation, q, degreeBound};
    }
    return {WellDefinedVerdict::Status::HoldsUpToBound, std::nullopt, degreeBound};
}

std::vector<DemazureRoot> wellDefinedRoots(const AffineMonoid& P, long coordBound, long degreeBound)
{
    const auto holes = holesUpTo(P, degreeBound).holes;
    std::vector<DemazureRoot> out;
    for (auto& r : enumerateRoots(P.coneSigma(), coordBound))
    {
        bool ok = true;
        for (const auto& q : holes)
        {
            if (P.contains(q - r.e))
            {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(std::move(r));
    }
    return out;
}

std::vector<DemazureRoot> rootsWithSlice(const AffineMonoid& P, long coordBound, long degreeBound)
{
    std::vector<DemazureRoot> out;
    for (auto& r : wellDefinedRoots(P, coordBound, degreeBound))
    {
        // d_e(chi^{-e}) = <p_rho, -e> chi^0 = 1
        if (P.contains(LatticePoint(-r.e)))
            out.push_back(std::move(r));
    }
    return out;
}

LemmaOneReport lemmaOneCheck(const AffineMonoid& P, std::size_t rayIndex, long coordBound, long degreeBound)
{
    const auto sigmaRayFaces = rays(P.coneSigma());
    if (rayIndex >= sigmaRayFaces.size())
        throw InvalidFaceError("lemmaOneCheck: ray index " + std::to_string(rayIndex) + " out of range");
    LemmaOneReport rep;
    rep.rayIndex = rayIndex;
    rep.ray = P.sigmaRays()[rayIndex];
    rep.faceHat = faceHat(sigmaRayFaces[rayIndex], P.coneDual());
    rep.coordBound = coordBound;
    rep.degreeBound = degreeBound;

    auto sat = almostSaturatedFace(P, rep.faceHat, degreeBound);
    if (sat.status == AlmostSaturatedVerdict::Status::AlmostSaturated)
        rep.saturationWitness = sat.witness;
    for (const auto& r : wellDefinedRoots(P, coordBound, degreeBound))
    {
        if (r.rayIndex == rayIndex)
        {
            rep.rootWitness = r;
            break;
        }
    }
    if (rep.saturationWitness && rep.rootWitness)
        rep.verdict = LemmaOneReport::Verdict::AgreeYes;
    else if (!rep.saturationWitness && !rep.rootWitness)
        rep.verdict = LemmaOneReport::Verdict::AgreeNo;
    else
        rep.verdict = LemmaOneReport::Verdict::InconclusiveAtBounds;
    return rep;
}

const char* toString(WellDefinedVerdict::Status s)
{
    return s == WellDefinedVerdict::Status::HoldsUpToBound ? "HoldsUpToBound" : "Violation";
}

const char* toString(LemmaOneReport::Verdict v)
{
    switch (v)
    {
        case LemmaOneReport::Verdict::AgreeYes: return "Agree(yes)";
        case LemmaOneReport::Verdict::AgreeNo: return "Agree(no)";
        case LemmaOneReport::Verdict::InconclusiveAtBounds: return "InconclusiveAtBounds";
    }
    return "?";
}

}   // namespace toric
