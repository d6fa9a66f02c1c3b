// Rational polyhedral cones with dual V/H descriptions and face lattices.

#pragma once

#include <cstddef>
#include <vector>

#include "toric/exactmath.hpp"

namespace toric {

/** Lineality basis and extreme rays of {y : <a, y> >= 0 for all rows a}. */
struct ConeDescription
{
    std::vector<LatticePoint> lineality;
    std::vector<LatticePoint> rays;
};

/** Double description conversion H -> V with exact integer arithmetic. */
ConeDescription coneFromInequalities(Index rank, const std::vector<LatticePoint>& normals);

/**
 * A finitely generated rational cone. Both descriptions are kept: the
 * generators (extreme rays, plus +/- a lineality basis when not pointed)
 * and the facet normals (plus +/- a basis of the orthogonal complement of
 * the span when not full-dimensional). Both lists are primitive and sorted.
 */
class PolyhedralCone
{
    public:
        static PolyhedralCone fromGenerators(Index rank, const std::vector<LatticePoint>& generators);
        static PolyhedralCone fromInequalities(Index rank, const std::vector<LatticePoint>& normals);

        Index rank() const { return rank_; }
        const std::vector<LatticePoint>& generators() const { return generators_; }
        const std::vector<LatticePoint>& facetNormals() const { return facetNormals_; }
        bool pointed() const { return pointed_; }
        bool fullDimensional() const { return fullDim_; }

        /** Membership of a lattice point in the (closed) cone. */
        bool contains(const LatticePoint& m) const;
        /** Membership in the relative interior of the full cone. */
        bool containsInInterior(const LatticePoint& m) const;

        bool operator==(const PolyhedralCone& other) const;

    private:
        PolyhedralCone(Index rank, std::vector<LatticePoint> generators, std::vector<LatticePoint> normals);

        Index rank_ = 0;
        std::vector<LatticePoint> generators_;
        std::vector<LatticePoint> facetNormals_;
        bool pointed_ = false;
        bool fullDim_ = false;
};

/** The dual cone. Throws DegenerateInputError for the zero cone. */
PolyhedralCone dualCone(const PolyhedralCone& c);

inline bool isPointed(const PolyhedralCone& c) { return c.pointed(); }
inline bool isFullDim(const PolyhedralCone& c) { return c.fullDimensional(); }

/**
 * A face of a cone, identified by the set of facet normals vanishing on it.
 * The owning cone is passed explicitly to every operation on faces.
 */
struct Face
{
    std::vector<std::size_t>  activeNormals;   // indices into facetNormals(), sorted
    std::vector<LatticePoint> generators;      // parent generators on the face
    Index dim = 0;

    bool operator==(const Face& other) const
    {
        return activeNormals == other.activeNormals && generators == other.generators && dim == other.dim;
    }
};

/** The face cut out by the given normals (closed under the face lattice). */
Face faceFromNormals(const PolyhedralCone& c, std::vector<std::size_t> normals);

/** Faces sorted by (dim, generators). */
std::vector<Face> faces(const PolyhedralCone& c);

/** One-dimensional faces, sorted by primitive generator. */
std::vector<Face> rays(const PolyhedralCone& c);

/** Primitive generators of the rays, in the order of rays(c). */
std::vector<LatticePoint> rayGenerators(const PolyhedralCone& c);

bool isFaceOf(const Face& f, const PolyhedralCone& c);
void requireFace(const Face& f, const PolyhedralCone& c, const char* context);

/** Whether m lies on the face (pairs to zero with every active normal and lies in c). */
bool onFace(const Face& f, const PolyhedralCone& c, const LatticePoint& m);

/** tau^perp ∩ sigma^vee for a face tau of sigma = dual(sigmaDual). */
Face faceHat(const Face& tau, const PolyhedralCone& sigmaDual);

}   // namespace toric
