#include "toric/cone.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

void sortUnique(std::vector<LatticePoint>& v)
{
    std::sort(v.begin(), v.end(), LexLess{});
    v.erase(std::unique(v.begin(), v.end(), [](const LatticePoint& a, const LatticePoint& b) { return a == b; }),
            v.end());
}

MatrixXr rowsToMatrix(const std::vector<LatticePoint>& rows, Index rank)
{
    MatrixXr m(static_cast<Index>(rows.size()), rank);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (Index j = 0; j < rank; ++j)
            m(static_cast<Index>(i), j) = Rational(rows[i](j));
    }
    return m;
}

Index rankOf(const std::vector<const LatticePoint*>& rows, Index rank)
{
    if (rows.empty())
        return 0;
    MatrixXr m(static_cast<Index>(rows.size()), rank);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (Index j = 0; j < rank; ++j)
            m(static_cast<Index>(i), j) = Rational((*rows[i])(j));
    }
    return matrixRank(m);
}

struct DDRay
{
    LatticePoint vec;
    std::vector<bool> tight;   // over processed constraints
};

}   // namespace

ConeDescription coneFromInequalities(Index rank, const std::vector<LatticePoint>& normals)
{
    for (const auto& a : normals)
    {
        if (a.size() != rank)
            throw DimensionError("coneFromInequalities: normal of wrong rank");
    }
    ConeDescription out;
    std::vector<LatticePoint> ineq;
    for (const auto& a : normals)
    {
        if (!isZero(a))
            ineq.push_back(a);
    }

    // Lineality space: the common kernel of all constraints.
    MatrixXr kernel = nullspace(rowsToMatrix(ineq, rank));
    if (ineq.empty())
        kernel = MatrixXr::Identity(rank, rank);
    for (Index i = 0; i < kernel.rows(); ++i)
        out.lineality.push_back(primitiveFromRational(kernel.row(i).transpose()));
    sortUnique(out.lineality);
    if (static_cast<Index>(out.lineality.size()) == rank)
        return out;

    // Restrict to the orthogonal complement of the lineality space, which is
    // pointed; equalities enter as pairs of opposite inequalities.
    std::vector<LatticePoint> constraints;
    for (const auto& l : out.lineality)
    {
        constraints.push_back(l);
        constraints.push_back(-l);
    }
    for (const auto& a : ineq)
        constraints.push_back(a);

    // Initial simplicial cone from n independent constraints.
    std::vector<std::size_t> basisIdx;
    {
        std::vector<const LatticePoint*> chosen;
        for (std::size_t i = 0; i < constraints.size() && static_cast<Index>(chosen.size()) < rank; ++i)
        {
            chosen.push_back(&constraints[i]);
            if (rankOf(chosen, rank) == static_cast<Index>(chosen.size()))
                basisIdx.push_back(i);
            else
                chosen.pop_back();
        }
    }
    if (static_cast<Index>(basisIdx.size()) != rank)
        throw std::logic_error("coneFromInequalities: constraint system unexpectedly rank-deficient");

    std::vector<std::size_t> processed = basisIdx;
    MatrixXr b(rank, rank);
    for (Index i = 0; i < rank; ++i)
    {
        for (Index j = 0; j < rank; ++j)
            b(i, j) = Rational(constraints[basisIdx[static_cast<std::size_t>(i)]](j));
    }
    MatrixXr aug(rank, 2 * rank);
    aug.leftCols(rank) = b;
    aug.rightCols(rank) = MatrixXr::Identity(rank, rank);
    MatrixXr binv = reducedRowEchelon<Rational>(aug).rows.rightCols(rank);
    std::vector<DDRay> current;
    for (Index j = 0; j < rank; ++j)
    {
        DDRay r;
        r.vec = primitiveFromRational(binv.col(j));
        r.tight.assign(processed.size(), false);
        for (Index i = 0; i < rank; ++i)
            r.tight[static_cast<std::size_t>(i)] = (i != j);
        current.push_back(std::move(r));
    }

    std::vector<bool> inBasis(constraints.size(), false);
    for (auto i : basisIdx)
        inBasis[i] = true;

    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
    {
        if (inBasis[ci])
            continue;
        const LatticePoint& a = constraints[ci];
        std::vector<Integer> s(current.size());
        std::vector<std::size_t> pos, zer, neg;
        for (std::size_t k = 0; k < current.size(); ++k)
        {
            s[k] = pairing(a, current[k].vec);
            if (s[k] > 0) pos.push_back(k);
            else if (s[k] == 0) zer.push_back(k);
            else neg.push_back(k);
        }
        std::vector<DDRay> next;
        for (auto k : pos)
        {
            DDRay r = current[k];
            r.tight.push_back(false);
            next.push_back(std::move(r));
        }
        for (auto k : zer)
        {
            DDRay r = current[k];
            r.tight.push_back(true);
            next.push_back(std::move(r));
        }
        for (auto p : pos)
        {
            for (auto q : neg)
            {
                std::vector<const LatticePoint*> common;
                for (std::size_t t = 0; t < processed.size(); ++t)
                {
                    if (current[p].tight[t] && current[q].tight[t])
                        common.push_back(&constraints[processed[t]]);
                }
                if (static_cast<Index>(common.size()) < rank - 2)
                    continue;
                if (rankOf(common, rank) != rank - 2)
                    continue;
                LatticePoint combo = current[q].vec * s[p] - current[p].vec * s[q];
                DDRay r;
                r.vec = primitive(combo);
                r.tight.resize(processed.size() + 1);
                for (std::size_t t = 0; t < processed.size(); ++t)
                    r.tight[t] = pairing(constraints[processed[t]], r.vec) == 0;
                r.tight[processed.size()] = true;
                next.push_back(std::move(r));
            }
        }
        processed.push_back(ci);
        current = std::move(next);
    }

    for (const auto& r : current)
        out.rays.push_back(r.vec);
    sortUnique(out.rays);
    return out;
}

// ---------------------------------------------------------------------------

PolyhedralCone::PolyhedralCone(Index rank, std::vector<LatticePoint> generators, std::vector<LatticePoint> normals)
    : rank_(rank), generators_(std::move(generators)), facetNormals_(std::move(normals))
{
    sortUnique(generators_);
    sortUnique(facetNormals_);
    for (const auto& g : generators_)
    {
        for (const auto& f : facetNormals_)
        {
            if (pairing(f, g) < 0)
                throw std::logic_error("PolyhedralCone: V- and H-descriptions disagree at " + toString(g));
        }
    }
    fullDim_ = matrixRank(rowsToMatrix(generators_, rank_)) == rank_;
    pointed_ = matrixRank(rowsToMatrix(facetNormals_, rank_)) == rank_;
}

namespace {

std::vector<LatticePoint> withLineality(const ConeDescription& d)
{
    std::vector<LatticePoint> out = d.rays;
    for (const auto& l : d.lineality)
    {
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

}   // namespace

PolyhedralCone PolyhedralCone::fromGenerators(Index rank, const std::vector<LatticePoint>& generators)
{
    if (rank < 1)
        throw DegenerateInputError("PolyhedralCone: rank must be positive");
    std::vector<LatticePoint> gens;
    for (const auto& g : generators)
    {
        if (g.size() != rank)
            throw DimensionError("PolyhedralCone: generator " + toString(g) + " has wrong rank");
        if (!isZero(g))
            gens.push_back(primitive(g));
    }
    std::vector<LatticePoint> normals = withLineality(coneFromInequalities(rank, gens));
    std::vector<LatticePoint> minimal = gens.empty() ? std::vector<LatticePoint>{}
                                                     : withLineality(coneFromInequalities(rank, normals));
    return PolyhedralCone(rank, std::move(minimal), std::move(normals));
}

PolyhedralCone PolyhedralCone::fromInequalities(Index rank, const std::vector<LatticePoint>& normals)
{
    if (rank < 1)
        throw DegenerateInputError("PolyhedralCone: rank must be positive");
    std::vector<LatticePoint> ns;
    for (const auto& n : normals)
    {
        if (n.size() != rank)
            throw DimensionError("PolyhedralCone: normal " + toString(n) + " has wrong rank");
        if (!isZero(n))
            ns.push_back(primitive(n));
    }
    std::vector<LatticePoint> gens = withLineality(coneFromInequalities(rank, ns));
    return fromGenerators(rank, gens);
}

bool PolyhedralCone::contains(const LatticePoint& m) const
{
    if (m.size() != rank_)
        throw DimensionError("PolyhedralCone::contains: rank mismatch");
    for (const auto& f : facetNormals_)
    {
        if (pairing(f, m) < 0)
            return false;
    }
    return true;
}

bool PolyhedralCone::containsInInterior(const LatticePoint& m) const
{
    if (!fullDim_)
        return false;
    for (const auto& f : facetNormals_)
    {
        if (pairing(f, m) <= 0)
            return false;
    }
    return true;
}

bool PolyhedralCone::operator==(const PolyhedralCone& other) const
{
    return rank_ == other.rank_ && generators_ == other.generators_ && facetNormals_ == other.facetNormals_;
}

PolyhedralCone dualCone(const PolyhedralCone& c)
{
    if (c.generators().empty())
        throw DegenerateInputError("dualCone: the zero cone is degenerate input (its dual is the whole space)");
    return PolyhedralCone::fromGenerators(c.rank(), c.facetNormals());
}

// ---------------------------------------------------------------------------

Face faceFromNormals(const PolyhedralCone& c, std::vector<std::size_t> normals)
{
    const auto& ns = c.facetNormals();
    for (auto i : normals)
    {
        if (i >= ns.size())
            throw InvalidFaceError("faceFromNormals: normal index out of range");
    }
    Face f;
    for (const auto& g : c.generators())
    {
        bool on = true;
        for (auto i : normals)
            on = on && pairing(ns[i], g) == 0;
        if (on)
            f.generators.push_back(g);
    }
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        bool vanishes = true;
        for (const auto& g : f.generators)
            vanishes = vanishes && pairing(ns[i], g) == 0;
        if (vanishes)
            f.activeNormals.push_back(i);
    }
    f.dim = f.generators.empty() ? 0 : matrixRank(rowsToMatrix(f.generators, c.rank()));
    return f;
}

std::vector<Face> faces(const PolyhedralCone& c)
{
    std::set<std::vector<std::size_t>> seen;
    std::vector<Face> out;
    std::vector<Face> queue{faceFromNormals(c, {})};
    seen.insert(queue.front().activeNormals);
    while (!queue.empty())
    {
        Face f = std::move(queue.back());
        queue.pop_back();
        for (std::size_t i = 0; i < c.facetNormals().size(); ++i)
        {
            if (std::binary_search(f.activeNormals.begin(), f.activeNormals.end(), i))
                continue;
            std::vector<std::size_t> active = f.activeNormals;
            active.insert(std::lower_bound(active.begin(), active.end(), i), i);
            Face g = faceFromNormals(c, active);
            if (seen.insert(g.activeNormals).second)
                queue.push_back(std::move(g));
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim)
            return a.dim < b.dim;
        return std::lexicographical_compare(a.generators.begin(), a.generators.end(), b.generators.begin(),
                                            b.generators.end(), LexLess{});
    });
    return out;
}

std::vector<Face> rays(const PolyhedralCone& c)
{
    std::vector<Face> out;
    for (auto& f : faces(c))
    {
        if (f.dim == 1)
            out.push_back(std::move(f));
    }
    return out;
}

std::vector<LatticePoint> rayGenerators(const PolyhedralCone& c)
{
    std::vector<LatticePoint> out;
    for (const auto& f : rays(c))
    {
        if (f.generators.size() != 1)
            throw DegenerateInputError("rayGenerators: ray face of a non-pointed cone");
        out.push_back(f.generators.front());
    }
    return out;
}

bool isFaceOf(const Face& f, const PolyhedralCone& c)
{
    for (auto i : f.activeNormals)
    {
        if (i >= c.facetNormals().size())
            return false;
    }
    if (!std::is_sorted(f.activeNormals.begin(), f.activeNormals.end()))
        return false;
    return faceFromNormals(c, f.activeNormals) == f;
}

void requireFace(const Face& f, const PolyhedralCone& c, const char* context)
{
    if (!isFaceOf(f, c))
        throw InvalidFaceError(std::string(context) + ": argument is not a face of the cone");
}

bool onFace(const Face& f, const PolyhedralCone& c, const LatticePoint& m)
{
    if (!c.contains(m))
        return false;
    for (auto i : f.activeNormals)
    {
        if (pairing(c.facetNormals()[i], m) != 0)
            return false;
    }
    return true;
}

Face faceHat(const Face& tau, const PolyhedralCone& sigmaDual)
{
    const PolyhedralCone sigma = dualCone(sigmaDual);
    requireFace(tau, sigma, "faceHat");
    std::vector<LatticePoint> orthogonal;
    for (const auto& g : sigmaDual.generators())
    {
        bool orth = true;
        for (const auto& t : tau.generators)
            orth = orth && pairing(g, t) == 0;
        if (orth)
            orthogonal.push_back(g);
    }
    std::vector<std::size_t> vanishing;
    for (std::size_t i = 0; i < sigmaDual.facetNormals().size(); ++i)
    {
        bool v = true;
        for (const auto& g : orthogonal)
            v = v && pairing(sigmaDual.facetNormals()[i], g) == 0;
        if (v)
            vanishing.push_back(i);
    }
    return faceFromNormals(sigmaDual, vanishing);
}

}   // namespace toric
