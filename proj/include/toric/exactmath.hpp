// Exact integer/rational arithmetic, lattice points, dense echelon forms,
// degree-truncated subspaces and small-scale convex geometry helpers.

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace toric {

using Integer  = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                               boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index        = Eigen::Index;
using LatticePoint = Vector<Integer>;
using VectorXr     = Vector<Rational>;
using MatrixXr     = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class DimensionError : public std::runtime_error
{
    public:
        explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};
class DegenerateInputError : public std::runtime_error
{
    public:
        explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};
class InvalidFaceError : public std::runtime_error
{
    public:
        explicit InvalidFaceError(const std::string& what) : std::runtime_error(what) {}
};
class PreconditionError : public std::runtime_error
{
    public:
        explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};
class IndexError : public std::runtime_error
{
    public:
        explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Lattice points
// ---------------------------------------------------------------------------

LatticePoint point(std::initializer_list<long> coords);
LatticePoint point(const std::vector<long>& coords);
LatticePoint zeroPoint(Index rank);

/** Three-way lexicographic comparison; ranks must agree. */
int lexCompare(const LatticePoint& a, const LatticePoint& b);

struct LexLess
{
    bool operator()(const LatticePoint& a, const LatticePoint& b) const
    {
        return lexCompare(a, b) < 0;
    }
};

bool isZero(const LatticePoint& v);

/** The pairing M x N -> Z. Throws DimensionError on rank mismatch. */
Integer pairing(const LatticePoint& m, const LatticePoint& v);

/** v / gcd(|v_1|, ..., |v_n|). Throws DegenerateInputError for v = 0. */
LatticePoint primitive(const LatticePoint& v);

/** Scales a rational vector to the primitive integer vector on the same ray. */
LatticePoint primitiveFromRational(const VectorXr& v);

VectorXr toRational(const LatticePoint& v);

long toLong(const Integer& x);

std::string toString(const LatticePoint& v);
/** Always "p/q", including integers ("3/1"). */
std::string toString(const Rational& q);

/** Accepts "3", "-7/2", "0.25", "-1.5". Throws std::invalid_argument. */
Rational parseRational(std::string_view text);

// ---------------------------------------------------------------------------
// Dense echelon forms
// ---------------------------------------------------------------------------

template <typename Scalar>
struct EchelonForm
{
    Matrix<Scalar>     rows;    // reduced row-echelon, zero rows dropped
    std::vector<Index> pivots;  // strictly increasing
};

/**
 * Reduced row-echelon form by Gauss-Jordan elimination. Pivots are chosen
 * leftmost-first; exact for exact scalar types.
 */
template <typename Scalar>
EchelonForm<Scalar> reducedRowEchelon(Matrix<Scalar> m)
{
    const Index nrows = m.rows();
    const Index ncols = m.cols();
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < ncols && r < nrows; ++c)
    {
        Index sel = -1;
        for (Index i = r; i < nrows; ++i)
        {
            if (m(i, c) != 0) { sel = i; break; }
        }
        if (sel < 0)
            continue;
        if (sel != r)
            m.row(sel).swap(m.row(r));
        const Scalar inv = Scalar(1) / m(r, c);
        for (Index j = c; j < ncols; ++j)
        {
            if (m(r, j) != 0)
                m(r, j) *= inv;
        }
        for (Index i = 0; i < nrows; ++i)
        {
            if (i == r || m(i, c) == 0)
                continue;
            const Scalar f = m(i, c);
            for (Index j = c; j < ncols; ++j)
            {
                if (m(r, j) != 0)
                    m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    EchelonForm<Scalar> out;
    out.rows = m.topRows(r);
    out.pivots = std::move(pivots);
    return out;
}

/** Rows spanning {x : a x = 0}, in reduced echelon form. */
MatrixXr nullspace(const MatrixXr& a);

/** One solution of a x = rhs (free variables set to zero), or nullopt. */
std::optional<VectorXr> solveLinear(const MatrixXr& a, const VectorXr& rhs);

Index matrixRank(const MatrixXr& a);

// ---------------------------------------------------------------------------
// Truncated subspaces
// ---------------------------------------------------------------------------

/** Ordered monomial index set with reverse lookup. */
class MonomialBasis
{
    public:
        explicit MonomialBasis(std::vector<LatticePoint> points);

        const std::vector<LatticePoint>& points() const { return points_; }
        Index size() const { return static_cast<Index>(points_.size()); }
        const LatticePoint& operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
        std::optional<Index> indexOf(const LatticePoint& m) const;

        bool operator==(const MonomialBasis& other) const { return points_ == other.points_; }

    private:
        std::vector<LatticePoint> points_;
        std::map<LatticePoint, Index, LexLess> index_;
};

using Ambient = std::shared_ptr<const MonomialBasis>;

Ambient makeAmbient(std::vector<LatticePoint> points);

/**
 * A subspace of the coefficient space spanned by the ambient monomials,
 * stored canonically as a reduced row-echelon basis.
 */
class TruncatedSubspace
{
    public:
        /** Row space of `spanning` (columns indexed by the ambient basis). */
        TruncatedSubspace(Ambient ambient, const MatrixXr& spanning);

        static TruncatedSubspace zero(Ambient ambient);
        static TruncatedSubspace full(Ambient ambient);
        static TruncatedSubspace spanOfMonomials(Ambient ambient,
                                                 const std::vector<LatticePoint>& monomials);

        const Ambient& ambient() const { return ambient_; }
        const std::vector<LatticePoint>& ambientBasis() const { return ambient_->points(); }
        const MatrixXr& rows() const { return rows_; }
        const std::vector<Index>& pivots() const { return pivots_; }
        Index dimension() const { return rows_.rows(); }
        Index ambientDimension() const { return ambient_->size(); }

        /** Remainder of v after elimination against the basis rows. */
        VectorXr reduce(VectorXr v) const;
        bool containsVector(const VectorXr& v) const;

        bool operator==(const TruncatedSubspace& other) const;

    private:
        TruncatedSubspace(Ambient ambient, EchelonForm<Rational> form);

        Ambient ambient_;
        MatrixXr rows_;
        std::vector<Index> pivots_;
};

bool sameAmbient(const TruncatedSubspace& a, const TruncatedSubspace& b);

/** a ∩ b. Throws DimensionError if the ambients differ. */
TruncatedSubspace subspaceIntersect(const TruncatedSubspace& a, const TruncatedSubspace& b);

/** True iff b ⊆ a. Throws DimensionError if the ambients differ. */
bool subspaceContains(const TruncatedSubspace& a, const TruncatedSubspace& b);

TruncatedSubspace subspaceSum(const TruncatedSubspace& a, const TruncatedSubspace& b);

// ---------------------------------------------------------------------------
// Sparse incremental elimination
// ---------------------------------------------------------------------------

using SparseVector = std::map<Index, Rational>;

void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

/**
 * Incrementally maintained, fully reduced echelon basis of sparse vectors.
 * Each row may carry a "combination" vector that is transformed alongside
 * it, so kernel relations and particular solutions can be recovered.
 */
class SparseEchelon
{
    public:
        struct Row
        {
            SparseVector value;
            SparseVector combination;
        };

        /** Eliminates all pivot entries of `row.value`. */
        void reduce(Row& row) const;

        /**
         * Reduces `row`; if the remainder is nonzero it becomes a new basis
         * row and true is returned. Otherwise `row` holds the reduced (zero)
         * value and its combination, and false is returned.
         */
        bool insert(Row& row);

        std::size_t size() const { return rows_.size(); }
        const std::map<Index, Row>& rows() const { return rows_; }

    private:
        std::map<Index, Row> rows_;  // keyed by pivot
};

// ---------------------------------------------------------------------------
// Enumeration and tiny convex hulls
// ---------------------------------------------------------------------------

/** Integer points of the box [lo, hi] accepted by `predicate`, lexicographic. */
std::vector<LatticePoint> latticePointsInBox(const LatticePoint& lo, const LatticePoint& hi,
                                             const std::function<bool(const LatticePoint&)>& predicate);

/** True iff p is a convex combination of `others` (exact). */
bool inConvexHull(const LatticePoint& p, const std::vector<LatticePoint>& others);

/** The points of `points` that are vertices of their convex hull, input order. */
std::vector<LatticePoint> hullVertices(const std::vector<LatticePoint>& points);

}   // namespace toric
