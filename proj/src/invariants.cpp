#include "toric/invariants.hpp"

#include <algorithm>

#include "toric/parallel.hpp"

namespace toric {

DerivationFamily::DerivationFamily(Kind kind, std::vector<FamilyMember> members, long coordBound, long sliceDegree)
    : kind_(kind), members_(std::move(members)), coordBound_(coordBound), sliceDegree_(sliceDegree)
{
    for (const auto& m : members_)
    {
        if (!m.derivation.nilpotency().verified())
            throw PreconditionError("DerivationFamily: member " + m.derivation.describe()
                                    + " is not verified locally nilpotent");
        if (kind_ == Kind::SliceAdmitting && !m.slice)
            throw PreconditionError("DerivationFamily: slice-admitting member " + m.derivation.describe()
                                    + " has no slice");
        if (m.slice && apply(m.derivation, *m.slice) != AlgebraElement::constant(m.derivation.monoid(), Rational(1)))
            throw PreconditionError("DerivationFamily: recorded slice of " + m.derivation.describe()
                                    + " does not satisfy d(s) = 1");
    }
}

bool DerivationFamily::allSliced() const
{
    return std::all_of(members_.begin(), members_.end(), [](const FamilyMember& m) { return m.slice.has_value(); });
}

const char* toString(DerivationFamily::Kind k)
{
    switch (k)
    {
        case DerivationFamily::Kind::AllRoots: return "AllRoots";
        case DerivationFamily::Kind::SliceAdmitting: return "SliceAdmitting";
        case DerivationFamily::Kind::UserSupplied: return "UserSupplied";
    }
    return "?";
}

namespace {

HomogeneousDerivation unitComponent(const DemazureRoot& r)
{
    return HomogeneousDerivation{r, Rational(1)};
}

}   // namespace

DerivationFamily allRootsFamily(const MonoidPtr& P, long coordBound, long degreeBound)
{
    const auto roots = wellDefinedRoots(*P, coordBound, degreeBound);
    auto members = parallelMap<FamilyMember>(roots.size(), [&](std::size_t i) {
        Derivation d = verified(Derivation(P, {unitComponent(roots[i])}));
        return FamilyMember{std::move(d), std::nullopt, "root " + toString(roots[i].e)};
    });
    std::vector<FamilyMember> kept;
    for (auto& m : members)
    {
        // A single root derivation is always locally nilpotent; the check only guards the cap.
        if (m.derivation.nilpotency().verified())
            kept.push_back(std::move(m));
    }
    return DerivationFamily(DerivationFamily::Kind::AllRoots, std::move(kept), coordBound);
}

namespace {

std::vector<FamilyMember> sliceMembers(const MonoidPtr& P, long coordBound, long degreeBound, long sliceDegree)
{
    const auto roots = wellDefinedRoots(*P, coordBound, degreeBound);
    std::vector<DemazureRoot> sliced;
    for (const auto& r : roots)
    {
        if (P->contains(LatticePoint(-r.e)))
            sliced.push_back(r);
    }
    std::vector<std::pair<std::size_t, std::optional<std::size_t>>> candidates;
    for (std::size_t s = 0; s < sliced.size(); ++s)
    {
        candidates.emplace_back(s, std::nullopt);
        for (std::size_t j = 0; j < roots.size(); ++j)
        {
            if (roots[j].e != sliced[s].e)
                candidates.emplace_back(s, j);
        }
    }
    auto tried = parallelMap<std::optional<FamilyMember>>(candidates.size(), [&](std::size_t i) -> std::optional<FamilyMember> {
        const auto& [s, j] = candidates[i];
        if (!j)
        {
            Derivation d = verified(Derivation(P, {unitComponent(sliced[s])}));
            AlgebraElement slice = AlgebraElement::monomial(P, LatticePoint(-sliced[s].e));
            return FamilyMember{std::move(d), std::move(slice), "root " + toString(sliced[s].e) + ", slice chi^-e"};
        }
        Derivation d = verified(Derivation(P, {unitComponent(sliced[s]), unitComponent(roots[*j])}));
        if (!d.nilpotency().verified())
            return std::nullopt;
        auto found = findSlice(d, sliceDegree);
        if (!found.slice)
            return std::nullopt;
        return FamilyMember{std::move(d), std::move(*found.slice),
                            "sum of roots " + toString(sliced[s].e) + " and " + toString(roots[*j].e)
                                + ", slice found at degree " + std::to_string(sliceDegree)};
    });
    std::vector<FamilyMember> out;
    for (auto& m : tried)
    {
        if (m)
            out.push_back(std::move(*m));
    }
    return out;
}

}   // namespace

DerivationFamily sliceAdmittingFamily(const MonoidPtr& P, long coordBound, long degreeBound, long sliceDegree)
{
    return DerivationFamily(DerivationFamily::Kind::SliceAdmitting,
                            sliceMembers(P, coordBound, degreeBound, sliceDegree), coordBound, sliceDegree);
}

DerivationFamily userFamily(const std::vector<Derivation>& derivations, long sliceDegree)
{
    std::vector<FamilyMember> members;
    for (const auto& d : derivations)
    {
        Derivation v = d.nilpotency().verified() ? d : verified(d);
        if (!v.nilpotency().verified())
            throw NonNilpotentError("userFamily: " + d.describe() + " is not verified locally nilpotent: the chain on "
                                    + toString(*v.nilpotency().offendingGenerator) + " did not vanish within "
                                    + std::to_string(v.nilpotency().bound) + " steps");
        auto found = findSlice(v, sliceDegree);
        std::string note = found.slice ? "supplied, slice found at degree " + std::to_string(sliceDegree)
                                       : "supplied, no slice up to degree " + std::to_string(sliceDegree);
        members.push_back(FamilyMember{std::move(v), std::move(found.slice), std::move(note)});
    }
    return DerivationFamily(DerivationFamily::Kind::UserSupplied, std::move(members), 0, sliceDegree);
}

const char* toString(ProbeResult::Direction d)
{
    return d == ProbeResult::Direction::UpperBoundOfInvariant ? "UpperBoundOfInvariant" : "LowerBoundOfInvariant";
}

namespace {

void requireUsable(const DerivationFamily& family, long d, const char* context)
{
    if (family.empty())
        throw PreconditionError(std::string(context) + ": the derivation family is empty");
    if (d < 0)
        throw PreconditionError(std::string(context) + ": degree must be nonnegative");
}

}   // namespace

ProbeResult mlProbe(const DerivationFamily& family, long d)
{
    requireUsable(family, d, "mlProbe");
    auto kernels = parallelMap<TruncatedSubspace>(family.size(), [&](std::size_t i) {
        return kernelBasis(family.members()[i].derivation, d);
    });
    TruncatedSubspace acc = kernels.front();
    for (std::size_t i = 1; i < kernels.size(); ++i)
        acc = subspaceIntersect(acc, kernels[i]);
    return ProbeResult{std::move(acc), d, ProbeResult::Direction::UpperBoundOfInvariant, family.size()};
}

ProbeResult hdProbe(const DerivationFamily& family, long d)
{
    requireUsable(family, d, "hdProbe");
    // Kernel elements of degree above d still contribute their low-degree
    // parts to the truncated products, so compute kernels with headroom.
    Integer shift = 0;
    for (const auto& m : family.members())
        shift = std::max(shift, m.derivation.maxAbsDegreeShift());
    const long internal = d + toLong(shift);
    auto kernels = parallelMap<TruncatedSubspace>(family.size(), [&](std::size_t i) {
        return kernelBasis(family.members()[i].derivation, internal);
    });
    const auto& P = *family.members().front().derivation.monoid();
    return ProbeResult{generateSubalgebra(P, kernels, d), d, ProbeResult::Direction::LowerBoundOfInvariant,
                       family.size()};
}

ProbeResult hdStarProbe(const DerivationFamily& family, long d)
{
    if (!family.allSliced())
        throw PreconditionError("hdStarProbe: every family member must carry a verified slice");
    return hdProbe(family, d);
}

bool coefficientVanishes(const TruncatedSubspace& space, const LatticePoint& m)
{
    auto idx = space.ambient()->indexOf(m);
    if (!idx)
        throw IndexError("coefficientVanishes: " + toString(m) + " is not an ambient monomial");
    for (Index r = 0; r < space.dimension(); ++r)
    {
        if (space.rows()(r, *idx) != 0)
            return false;
    }
    return true;
}

bool isConstants(const TruncatedSubspace& space)
{
    if (space.dimension() != 1 || space.ambientDimension() == 0 || !isZero(space.ambientBasis().front()))
        return false;
    for (Index j = 1; j < space.ambientDimension(); ++j)
    {
        if (space.rows()(0, j) != 0)
            return false;
    }
    return true;
}

bool isFull(const TruncatedSubspace& space)
{
    return space.dimension() == space.ambientDimension();
}

const char* toString(MlComparison::Status s)
{
    switch (s)
    {
        case MlComparison::Status::Equal: return "Equal";
        case MlComparison::Status::Different: return "Different";
        case MlComparison::Status::HypothesisNotMet: return "HypothesisNotMet";
    }
    return "?";
}

MlComparison mlEqualsMlStarCheck(const MonoidPtr& P, long coordBound, long degreeBound, long sliceDegree, long d)
{
    MlComparison rep;
    rep.degree = d;
    auto starMembers = sliceMembers(P, coordBound, degreeBound, sliceDegree);
    if (starMembers.empty())
    {
        rep.status = MlComparison::Status::HypothesisNotMet;
        return rep;
    }
    DerivationFamily star(DerivationFamily::Kind::SliceAdmitting, starMembers, coordBound, sliceDegree);
    auto all = allRootsFamily(P, coordBound, degreeBound).members();
    for (auto& m : starMembers)
    {
        if (m.derivation.components().size() > 1)
            all.push_back(std::move(m));
    }
    DerivationFamily full(DerivationFamily::Kind::AllRoots, std::move(all), coordBound);
    rep.mlFamilySize = full.size();
    rep.mlStarFamilySize = star.size();
    rep.ml = mlProbe(full, d).subspace;
    rep.mlStar = mlProbe(star, d).subspace;
    auto collect = [&](const TruncatedSubspace& from, const TruncatedSubspace& against) {
        for (Index r = 0; r < from.dimension(); ++r)
        {
            VectorXr v = from.rows().row(r).transpose();
            if (!against.containsVector(v))
                rep.discrepancy.push_back(std::move(v));
        }
    };
    collect(*rep.ml, *rep.mlStar);
    collect(*rep.mlStar, *rep.ml);
    rep.status = rep.discrepancy.empty() ? MlComparison::Status::Equal : MlComparison::Status::Different;
    return rep;
}

}   // namespace toric
