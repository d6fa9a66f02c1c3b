#include "toric/corpus.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

const char* toString(ExpectedFact::Kind k)
{
    using K = ExpectedFact::Kind;
    switch (k)
    {
        case K::GeneratorCount: return "generatorCount";
        case K::Holes: return "holes";
        case K::Saturated: return "saturated";
        case K::FaceCount: return "faceCount";
        case K::RootCount: return "rootCount";
        case K::WellDefinedRootCount: return "wellDefinedRootCount";
        case K::RootsOfDegree: return "rootsOfDegree";
        case K::WellDefinedRootsOfDegree: return "wellDefinedRootsOfDegree";
        case K::SliceRoots: return "sliceRoots";
        case K::LemmaOne: return "lemmaOne";
        case K::MlProbe: return "mlProbe";
        case K::HdProbe: return "hdProbe";
        case K::HdStarZeroCoefficient: return "hdStarZeroCoefficient";
        case K::MlEqualsMlStar: return "mlEqualsMlStar";
    }
    return "?";
}

std::string toString(const std::vector<LatticePoint>& pts)
{
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        if (i)
            s += ",";
        s += toString(pts[i]);
    }
    return s + "}";
}

MonoidPtr ScenarioCase::monoid() const
{
    return makeMonoid(rank, monoidGenerators, gradingVector);
}

namespace {

using K = ExpectedFact::Kind;

ExpectedFact fact(K kind, long bound, std::string expected, std::string provenance)
{
    ExpectedFact f;
    f.kind = kind;
    f.bound = bound;
    f.expected = std::move(expected);
    f.provenance = std::move(provenance);
    return f;
}

ExpectedFact probeFact(K kind, long degree, std::string family, std::string expected, std::string provenance)
{
    ExpectedFact f = fact(kind, degree, std::move(expected), std::move(provenance));
    f.family = std::move(family);
    return f;
}

ExpectedFact degreeFact(K kind, long coordBound, long degree, std::string expected, std::string provenance)
{
    ExpectedFact f = fact(kind, coordBound, std::move(expected), std::move(provenance));
    f.degree = degree;
    return f;
}

DerivationSpec spec(std::initializer_list<std::pair<std::initializer_list<long>, long>> terms)
{
    DerivationSpec out;
    for (const auto& [e, c] : terms)
        out.emplace_back(point(e), Rational(c));
    return out;
}

}   // namespace

ScenarioCase paperExample()
{
    ScenarioCase c;
    c.name = "paper-example";
    c.rank = 3;
    for (auto g : {point({2, 0, 0}), point({1, 1, 0}), point({0, 2, 0}), point({3, 0, 0}), point({2, 1, 0}),
                   point({1, 2, 0}), point({0, 3, 0}), point({0, 0, 1})})
        c.monoidGenerators.push_back(g);
    // d1 = d/dz, d2 = y d/dx, d3 = x d/dy
    c.derivations = {
        spec({{{0, 0, -1}, 1}}),
        spec({{{0, 0, -1}, 1}, {{-1, 1, 0}, 1}}),
        spec({{{0, 0, -1}, 1}, {{1, -1, 0}, 1}}),
        spec({{{-1, 1, 0}, 1}}),
        spec({{{1, -1, 0}, 1}}),
    };
    c.facts = {
        fact(K::GeneratorCount, 0, "8", "the algebra generators x^2,xy,y^2,x^3,x^2y,xy^2,y^3,z"),
        fact(K::Holes, 2, "{(0,1,0),(1,0,0),(0,1,1),(1,0,1)}",
             "holes are the two removed vertical rays (1,0,k),(0,1,k); degree filter <= 2"),
        fact(K::Holes, 3, "{(0,1,0),(1,0,0),(0,1,1),(1,0,1),(0,1,2),(1,0,2)}",
             "holes are the two removed vertical rays (1,0,k),(0,1,k); degree filter <= 3"),
        fact(K::Saturated, 10, "NotSaturated", "P misses x and y, which lie in the positive octant"),
        fact(K::FaceCount, 0, "8", "sigma^vee is the positive octant: 2^3 faces"),
        fact(K::RootCount, 1, "12", "brute-force count of root inequalities on the octant, sup-norm <= 1"),
        fact(K::WellDefinedRootCount, 3, "38",
             "brute-force hole test: z-ray loses (1,0,-1),(0,1,-1); x- and y-rays keep only e with a positive "
             "second coordinate (12 each)"),
        degreeFact(K::RootsOfDegree, 1, -1, "{(-1,0,0),(0,-1,0),(0,0,-1)}",
                   "exactly three Demazure roots of w0-degree -1 on the octant"),
        degreeFact(K::WellDefinedRootsOfDegree, 1, -1, "{(0,0,-1)}",
                   "(-1,0,0) and (0,-1,0) map the monoid elements (1,1,0),(2,0,0) onto holes; the lowest "
                   "grading component is a multiple of d_e1"),
        fact(K::SliceRoots, 3, "{(0,0,-1)}", "-e in P holds only for e = (0,0,-1), whose slice is z"),
        fact(K::LemmaOne, 10, "Agree(yes),Agree(yes),Agree(yes)",
             "every ray carries a well-defined root and an almost saturated dual face"),
        probeFact(K::MlProbe, 8, "derivations:0,3,4", "constants",
                  "theorem item (i): Ker d_e1 and the kernels of y d/dx, x d/dy meet in K"),
        probeFact(K::MlProbe, 8, "derivations:0,1,2", "constants",
                  "theorem item (ii): Ker d1 ∩ Ker(d1+d2) ∩ Ker(d1+d3) = K"),
        probeFact(K::HdProbe, 8, "derivations:0,3", "full",
                  "theorem item (iii): K[X] = (Ker d1)[z] and z ∈ Ker d2"),
        [] {
            ExpectedFact f = probeFact(K::HdStarZeroCoefficient, 8, "derivations:0,1,2", "true",
                                       "theorem item (iv): every element of HD* has zero coefficient at z");
            f.monomial = point({0, 0, 1});
            return f;
        }(),
        fact(K::MlEqualsMlStar, 8, "Equal", "ML = ML* for toric varieties admitting a slice; both are K here"),
    };
    return c;
}

std::vector<ScenarioCase> standardCorpus()
{
    std::vector<ScenarioCase> out;
    out.push_back(paperExample());

    {
        ScenarioCase c;
        c.name = "affine-plane";
        c.rank = 2;
        c.monoidGenerators = {point({1, 0}), point({0, 1})};
        c.derivations = {spec({{{-1, 0}, 1}}), spec({{{0, -1}, 1}})};
        c.facts = {
            fact(K::GeneratorCount, 0, "2", "standard basis generators"),
            fact(K::Holes, 6, "{}", "Z^2_>=0 is saturated"),
            fact(K::Saturated, 6, "SaturatedUpToBound", "Z^2_>=0 is saturated"),
            fact(K::FaceCount, 0, "4", "the quadrant has 2^2 faces"),
            fact(K::RootCount, 1, "4", "e = (-1,b) or (a,-1) with a,b in {0,1}"),
            fact(K::SliceRoots, 3, "{(0,-1),(-1,0)}", "partial derivatives have slices y and x"),
            fact(K::LemmaOne, 10, "Agree(yes),Agree(yes)", "saturated monoid: every face is almost saturated"),
            probeFact(K::MlProbe, 6, "allRoots", "constants",
                      "kernels of the two partial-derivative roots intersect in constants"),
            probeFact(K::MlProbe, 6, "derivations:0,1", "constants", "Ker d/dx ∩ Ker d/dy = K"),
            fact(K::MlEqualsMlStar, 8, "Equal", "both probes are the constants"),
        };
        out.push_back(std::move(c));
    }
    {
        ScenarioCase c;
        c.name = "affine-space-3";
        c.rank = 3;
        c.monoidGenerators = {point({1, 0, 0}), point({0, 1, 0}), point({0, 0, 1})};
        c.facts = {
            fact(K::Holes, 6, "{}", "Z^3_>=0 is saturated"),
            fact(K::FaceCount, 0, "8", "the octant has 2^3 faces"),
            fact(K::RootCount, 1, "12", "brute-force count of root inequalities on the octant, sup-norm <= 1"),
            degreeFact(K::WellDefinedRootsOfDegree, 1, -1, "{(-1,0,0),(0,-1,0),(0,0,-1)}",
                       "saturated monoid: every root is well defined"),
            fact(K::SliceRoots, 3, "{(0,0,-1),(0,-1,0),(-1,0,0)}", "the three partial derivatives"),
            fact(K::LemmaOne, 10, "Agree(yes),Agree(yes),Agree(yes)",
                 "saturated monoid: every face is almost saturated"),
            probeFact(K::MlProbe, 6, "allRoots", "constants", "Ker of the partial derivatives meet in K"),
            fact(K::MlEqualsMlStar, 8, "Equal", "both probes are the constants"),
        };
        out.push_back(std::move(c));
    }
    {
        ScenarioCase c;
        c.name = "cusp";
        c.rank = 1;
        c.monoidGenerators = {point({2}), point({3})};
        c.facts = {
            fact(K::Holes, 10, "{(1)}", "the numerical semigroup <2,3> has the single gap 1"),
            fact(K::Saturated, 10, "NotSaturated", "gap 1"),
            fact(K::RootCount, 3, "1", "the only root of Q_>=0 is -1"),
            fact(K::WellDefinedRootCount, 3, "0", "hole 1 with 1 - (-1) = 2 in P blocks the unique root"),
            fact(K::SliceRoots, 3, "{}", "no well-defined roots"),
            fact(K::LemmaOne, 10, "Agree(no)", "hole 1 blocks the unique root; 0 is the only point on the face"),
            fact(K::MlEqualsMlStar, 8, "HypothesisNotMet", "no derivation with a slice"),
        };
        out.push_back(std::move(c));
    }
    {
        ScenarioCase c;
        c.name = "square-cone";
        c.rank = 3;
        c.monoidGenerators = {point({0, 0, 1}), point({1, 0, 1}), point({0, 1, 1}), point({1, 1, 1})};
        c.facts = {
            fact(K::Holes, 6, "{}", "the cone over a unit square is generated by its degree-one points"),
            fact(K::Saturated, 6, "SaturatedUpToBound", "the cone over a unit square is normal"),
            fact(K::FaceCount, 0, "10", "apex, 4 rays, 4 two-dimensional faces and the cone itself"),
            fact(K::LemmaOne, 10, "Agree(yes),Agree(yes),Agree(yes),Agree(yes)",
                 "saturated monoid: every face is almost saturated"),
        };
        out.push_back(std::move(c));
    }
    {
        ScenarioCase c;
        c.name = "cusp-times-line";
        c.rank = 2;
        c.monoidGenerators = {point({2, 0}), point({3, 0}), point({0, 1})};
        c.derivations = {spec({{{0, -1}, 1}}), spec({{{2, -1}, 1}})};
        c.facts = {
            fact(K::Holes, 2, "{(1,0),(1,1)}", "holes are the vertical ray (1,k)"),
            fact(K::WellDefinedRootCount, 3, "3",
                 "d/dy, x^2 d/dy and x^3 d/dy survive; x d/dy hits the holes and x-ray roots all do"),
            fact(K::SliceRoots, 3, "{(0,-1)}", "d/dy has the slice y"),
            fact(K::LemmaOne, 10, "Agree(yes),Agree(no)",
                 "y-ray: (2,0) is a saturation point; x-ray: every root maps into the holes"),
            probeFact(K::MlProbe, 6, "derivations:0,1", "dim 6/22",
                      "both kernels are K[x^2,x^3] in degree <= 6"),
            fact(K::MlEqualsMlStar, 8, "Equal", "all well-defined roots share the y-ray, so kernels coincide"),
        };
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<ScenarioCase> findCase(const std::string& name)
{
    for (auto& c : standardCorpus())
    {
        if (c.name == name)
            return c;
    }
    return std::nullopt;
}

DerivationFamily familyFor(const ScenarioCase& c, const MonoidPtr& P, const std::string& selector)
{
    const Bounds& b = c.defaultBounds;
    if (selector == "allRoots")
        return allRootsFamily(P, b.coordBound, b.degreeBound);
    if (selector == "sliceAdmitting")
        return sliceAdmittingFamily(P, b.coordBound, b.degreeBound, b.sliceDegree);
    const std::string prefix = "derivations:";
    if (selector.rfind(prefix, 0) != 0)
        throw PreconditionError("familyFor: unknown family selector '" + selector + "'");
    std::vector<Derivation> ds;
    std::stringstream ss(selector.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const std::size_t i = std::stoul(item);
        if (i >= c.derivations.size())
            throw IndexError("familyFor: derivation index " + item + " out of range");
        ds.push_back(Derivation::fromRoots(P, c.derivations[i], b.degreeBound));
    }
    return userFamily(ds, b.sliceDegree);
}

namespace {

std::string describeProbe(const TruncatedSubspace& s)
{
    if (isConstants(s))
        return "constants";
    if (isFull(s))
        return "full";
    return "dim " + std::to_string(s.dimension()) + "/" + std::to_string(s.ambientDimension());
}

std::vector<LatticePoint> rootVectors(const std::vector<DemazureRoot>& roots)
{
    std::vector<LatticePoint> out;
    for (const auto& r : roots)
        out.push_back(r.e);
    return out;
}

std::vector<DemazureRoot> rootsOfDegree(const AffineMonoid& P, const std::vector<DemazureRoot>& roots, long degree)
{
    std::vector<DemazureRoot> out;
    for (const auto& r : roots)
    {
        if (P.degree(r.e) == degree)
            out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lexCompare(a.e, b.e) < 0; });
    return out;
}

}   // namespace

std::string evaluateFact(const ScenarioCase& c, const MonoidPtr& P, const ExpectedFact& f)
{
    const Bounds& b = c.defaultBounds;
    switch (f.kind)
    {
        case K::GeneratorCount: return std::to_string(P->generators().size());
        case K::Holes: return toString(holesUpTo(*P, f.bound).holes);
        case K::Saturated: return toString(isSaturated(*P, f.bound).status);
        case K::FaceCount: return std::to_string(faces(P->coneDual()).size());
        case K::RootCount: return std::to_string(enumerateRoots(P->coneSigma(), f.bound).size());
        case K::WellDefinedRootCount: return std::to_string(wellDefinedRoots(*P, f.bound, b.degreeBound).size());
        case K::RootsOfDegree:
            return toString(rootVectors(rootsOfDegree(*P, enumerateRoots(P->coneSigma(), f.bound), f.degree)));
        case K::WellDefinedRootsOfDegree:
            return toString(rootVectors(rootsOfDegree(*P, wellDefinedRoots(*P, f.bound, b.degreeBound), f.degree)));
        case K::SliceRoots: return toString(rootVectors(rootsWithSlice(*P, f.bound, b.degreeBound)));
        case K::LemmaOne:
        {
            std::string s;
            for (std::size_t i = 0; i < P->sigmaRays().size(); ++i)
            {
                if (i)
                    s += ",";
                s += toString(lemmaOneCheck(*P, i, b.coordBound, f.bound).verdict);
            }
            return s;
        }
        case K::MlProbe: return describeProbe(mlProbe(familyFor(c, P, f.family), f.bound).subspace);
        case K::HdProbe: return describeProbe(hdProbe(familyFor(c, P, f.family), f.bound).subspace);
        case K::HdStarZeroCoefficient:
        {
            const auto probe = hdStarProbe(familyFor(c, P, f.family), f.bound);
            return coefficientVanishes(probe.subspace, *f.monomial) && !isFull(probe.subspace) ? "true" : "false";
        }
        case K::MlEqualsMlStar:
            return toString(mlEqualsMlStarCheck(P, b.coordBound, b.degreeBound, b.sliceDegree, f.bound).status);
    }
    return "?";
}

std::vector<FactCheck> checkCase(const ScenarioCase& c)
{
    const MonoidPtr P = c.monoid();
    std::vector<FactCheck> out;
    for (const auto& f : c.facts)
    {
        FactCheck chk;
        chk.name = c.name + "/" + toString(f.kind) + (f.family.empty() ? "" : "[" + f.family + "]") + "@"
                   + std::to_string(f.bound);
        chk.expected = f.expected;
        chk.provenance = f.provenance;
        chk.actual = evaluateFact(c, P, f);
        chk.passed = chk.actual == chk.expected;
        out.push_back(std::move(chk));
    }
    return out;
}

}   // namespace toric
