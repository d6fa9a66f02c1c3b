#include "toric/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace toric {

LatticePoint point(std::initializer_list<long> coords)
{
    return point(std::vector<long>(coords));
}

LatticePoint point(const std::vector<long>& coords)
{
    LatticePoint v(static_cast<Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        v(static_cast<Index>(i)) = Integer(coords[i]);
    return v;
}

LatticePoint zeroPoint(Index rank)
{
    LatticePoint v(rank);
    for (Index i = 0; i < rank; ++i)
        v(i) = 0;
    return v;
}

int lexCompare(const LatticePoint& a, const LatticePoint& b)
{
    if (a.size() != b.size())
        throw DimensionError("lexCompare: rank mismatch");
    for (Index i = 0; i < a.size(); ++i)
    {
        if (a(i) < b(i)) return -1;
        if (b(i) < a(i)) return 1;
    }
    return 0;
}

bool isZero(const LatticePoint& v)
{
    for (Index i = 0; i < v.size(); ++i)
    {
        if (v(i) != 0)
            return false;
    }
    return true;
}

Integer pairing(const LatticePoint& m, const LatticePoint& v)
{
    if (m.size() != v.size())
    {
        throw DimensionError("pairing: rank mismatch (" + std::to_string(m.size()) + " vs "
                             + std::to_string(v.size()) + ")");
    }
    Integer s = 0;
    for (Index i = 0; i < m.size(); ++i)
        s += m(i) * v(i);
    return s;
}

LatticePoint primitive(const LatticePoint& v)
{
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i)
        g = gcd(g, abs(v(i)));
    if (g == 0)
        throw DegenerateInputError("primitive: zero vector has no primitive generator");
    LatticePoint out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out(i) = v(i) / g;
    return out;
}

LatticePoint primitiveFromRational(const VectorXr& v)
{
    Integer l = 1;
    for (Index i = 0; i < v.size(); ++i)
        l = lcm(l, denominator(v(i)));
    LatticePoint scaled(v.size());
    for (Index i = 0; i < v.size(); ++i)
        scaled(i) = numerator(v(i)) * (l / denominator(v(i)));
    return primitive(scaled);
}

VectorXr toRational(const LatticePoint& v)
{
    VectorXr out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out(i) = Rational(v(i));
    return out;
}

long toLong(const Integer& x)
{
    if (x > Integer(std::numeric_limits<long>::max()) || x < Integer(std::numeric_limits<long>::min()))
        throw std::overflow_error("integer does not fit in a machine word: " + x.str());
    return x.convert_to<long>();
}

std::string toString(const LatticePoint& v)
{
    std::string s = "(";
    for (Index i = 0; i < v.size(); ++i)
    {
        if (i > 0) s += ",";
        s += v(i).str();
    }
    return s + ")";
}

std::string toString(const Rational& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool allDigits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}   // namespace

Rational parseRational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos)
    {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den))
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        Integer d{std::string(den)};
        if (d == 0)
            throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        value = Rational(Integer(std::string(num)), d);
    }
    else if (auto dot = s.find('.'); dot != std::string_view::npos)
    {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !allDigits(whole))
            || (!frac.empty() && !allDigits(frac)))
            throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        Integer scale = pow(Integer(10), static_cast<unsigned>(frac.size()));
        Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
        value = Rational(w * scale + f, scale);
    }
    else
    {
        if (!allDigits(s))
            throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
        value = Rational(Integer(std::string(s)));
    }
    return negative ? Rational(-value) : value;
}

// ---------------------------------------------------------------------------

MatrixXr nullspace(const MatrixXr& a)
{
    const Index n = a.cols();
    auto form = reducedRowEchelon<Rational>(a);
    std::vector<bool> isPivot(static_cast<std::size_t>(n), false);
    for (Index p : form.pivots)
        isPivot[static_cast<std::size_t>(p)] = true;
    std::vector<Index> free;
    for (Index c = 0; c < n; ++c)
    {
        if (!isPivot[static_cast<std::size_t>(c)])
            free.push_back(c);
    }
    MatrixXr basis = MatrixXr::Zero(static_cast<Index>(free.size()), n);
    for (std::size_t k = 0; k < free.size(); ++k)
    {
        const Index f = free[k];
        basis(static_cast<Index>(k), f) = 1;
        for (std::size_t i = 0; i < form.pivots.size(); ++i)
        {
            const Rational& entry = form.rows(static_cast<Index>(i), f);
            if (entry != 0)
                basis(static_cast<Index>(k), form.pivots[i]) = -entry;
        }
    }
    return reducedRowEchelon<Rational>(basis).rows;
}

std::optional<VectorXr> solveLinear(const MatrixXr& a, const VectorXr& rhs)
{
    if (a.rows() != rhs.size())
        throw DimensionError("solveLinear: rhs length does not match row count");
    MatrixXr aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = rhs;
    auto form = reducedRowEchelon<Rational>(aug);
    VectorXr x = VectorXr::Zero(a.cols());
    for (std::size_t i = 0; i < form.pivots.size(); ++i)
    {
        if (form.pivots[i] == a.cols())
            return std::nullopt;
        x(form.pivots[i]) = form.rows(static_cast<Index>(i), a.cols());
    }
    return x;
}

Index matrixRank(const MatrixXr& a)
{
    return static_cast<Index>(reducedRowEchelon<Rational>(a).pivots.size());
}

// ---------------------------------------------------------------------------

MonomialBasis::MonomialBasis(std::vector<LatticePoint> points) : points_(std::move(points))
{
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        if (!index_.emplace(points_[i], static_cast<Index>(i)).second)
            throw PreconditionError("MonomialBasis: duplicate monomial " + toString(points_[i]));
    }
}

std::optional<Index> MonomialBasis::indexOf(const LatticePoint& m) const
{
    if (!points_.empty() && m.size() != points_.front().size())
        return std::nullopt;
    auto it = index_.find(m);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Ambient makeAmbient(std::vector<LatticePoint> points)
{
    return std::make_shared<const MonomialBasis>(std::move(points));
}

TruncatedSubspace::TruncatedSubspace(Ambient ambient, const MatrixXr& spanning)
    : TruncatedSubspace(ambient, reducedRowEchelon<Rational>(spanning))
{
    if (spanning.cols() != ambient_->size())
        throw DimensionError("TruncatedSubspace: column count does not match ambient basis");
}

TruncatedSubspace::TruncatedSubspace(Ambient ambient, EchelonForm<Rational> form)
    : ambient_(std::move(ambient)), rows_(std::move(form.rows)), pivots_(std::move(form.pivots))
{
    if (rows_.rows() == 0)
        rows_.resize(0, ambient_->size());
}

TruncatedSubspace TruncatedSubspace::zero(Ambient ambient)
{
    const Index n = ambient->size();
    return TruncatedSubspace(std::move(ambient), MatrixXr(0, n));
}

TruncatedSubspace TruncatedSubspace::full(Ambient ambient)
{
    const Index n = ambient->size();
    EchelonForm<Rational> form;
    form.rows = MatrixXr::Identity(n, n);
    for (Index i = 0; i < n; ++i)
        form.pivots.push_back(i);
    return TruncatedSubspace(std::move(ambient), std::move(form));
}

TruncatedSubspace TruncatedSubspace::spanOfMonomials(Ambient ambient,
                                                     const std::vector<LatticePoint>& monomials)
{
    std::vector<Index> cols;
    for (const auto& m : monomials)
    {
        auto idx = ambient->indexOf(m);
        if (!idx)
            throw IndexError("spanOfMonomials: monomial " + toString(m) + " not in ambient basis");
        cols.push_back(*idx);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    EchelonForm<Rational> form;
    form.rows = MatrixXr::Zero(static_cast<Index>(cols.size()), ambient->size());
    for (std::size_t i = 0; i < cols.size(); ++i)
        form.rows(static_cast<Index>(i), cols[i]) = 1;
    form.pivots = cols;
    return TruncatedSubspace(std::move(ambient), std::move(form));
}

VectorXr TruncatedSubspace::reduce(VectorXr v) const
{
    if (v.size() != ambient_->size())
        throw DimensionError("TruncatedSubspace::reduce: vector length mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i)
    {
        const Rational f = v(pivots_[i]);
        if (f == 0)
            continue;
        for (Index j = 0; j < v.size(); ++j)
        {
            const Rational& r = rows_(static_cast<Index>(i), j);
            if (r != 0)
                v(j) -= f * r;
        }
    }
    return v;
}

bool TruncatedSubspace::containsVector(const VectorXr& v) const
{
    VectorXr r = reduce(v);
    for (Index j = 0; j < r.size(); ++j)
    {
        if (r(j) != 0)
            return false;
    }
    return true;
}

bool TruncatedSubspace::operator==(const TruncatedSubspace& other) const
{
    if (!sameAmbient(*this, other) || pivots_ != other.pivots_)
        return false;
    return rows_ == other.rows_;
}

bool sameAmbient(const TruncatedSubspace& a, const TruncatedSubspace& b)
{
    return a.ambient() == b.ambient() || *a.ambient() == *b.ambient();
}

TruncatedSubspace subspaceIntersect(const TruncatedSubspace& a, const TruncatedSubspace& b)
{
    if (!sameAmbient(a, b))
        throw DimensionError("subspaceIntersect: ambient bases differ");
    const TruncatedSubspace& small = a.dimension() <= b.dimension() ? a : b;
    const TruncatedSubspace& large = a.dimension() <= b.dimension() ? b : a;
    const Index k = small.dimension();
    const Index n = small.ambientDimension();
    if (k == 0 || large.dimension() == 0)
        return TruncatedSubspace::zero(a.ambient());

    // Residuals of the small basis modulo the large subspace; linear
    // relations among residuals are exactly the combinations lying in both.
    MatrixXr residualsT(n, k);
    for (Index i = 0; i < k; ++i)
        residualsT.col(i) = large.reduce(small.rows().row(i).transpose());
    MatrixXr relations = nullspace(residualsT);
    if (relations.rows() == 0)
        return TruncatedSubspace::zero(a.ambient());
    MatrixXr vectors = relations * small.rows();
    return TruncatedSubspace(a.ambient(), vectors);
}

bool subspaceContains(const TruncatedSubspace& a, const TruncatedSubspace& b)
{
    if (!sameAmbient(a, b))
        throw DimensionError("subspaceContains: ambient bases differ");
    for (Index i = 0; i < b.dimension(); ++i)
    {
        if (!a.containsVector(b.rows().row(i).transpose()))
            return false;
    }
    return true;
}

TruncatedSubspace subspaceSum(const TruncatedSubspace& a, const TruncatedSubspace& b)
{
    if (!sameAmbient(a, b))
        throw DimensionError("subspaceSum: ambient bases differ");
    MatrixXr stacked(a.dimension() + b.dimension(), a.ambientDimension());
    stacked.topRows(a.dimension()) = a.rows();
    stacked.bottomRows(b.dimension()) = b.rows();
    return TruncatedSubspace(a.ambient(), stacked);
}

// ---------------------------------------------------------------------------

void axpy(SparseVector& y, const Rational& a, const SparseVector& x)
{
    if (a == 0)
        return;
    auto hint = y.begin();
    for (const auto& [idx, val] : x)
    {
        hint = y.lower_bound(idx);
        if (hint != y.end() && hint->first == idx)
        {
            hint->second += a * val;
            if (hint->second == 0)
                hint = y.erase(hint);
        }
        else
        {
            hint = y.emplace_hint(hint, idx, a * val);
        }
    }
}

void SparseEchelon::reduce(Row& row) const
{
    // Rows are fully reduced, so the coefficients at pivot positions are not
    // disturbed by subtracting other rows; collect them first.
    std::vector<std::pair<const Row*, Rational>> steps;
    for (const auto& [idx, val] : row.value)
    {
        auto it = rows_.find(idx);
        if (it != rows_.end())
            steps.emplace_back(&it->second, val);
    }
    for (const auto& [basis, factor] : steps)
    {
        const Rational neg = -factor;
        axpy(row.value, neg, basis->value);
        axpy(row.combination, neg, basis->combination);
    }
}

bool SparseEchelon::insert(Row& row)
{
    reduce(row);
    if (row.value.empty())
        return false;
    const Index pivot = row.value.begin()->first;
    const Rational inv = Rational(1) / row.value.begin()->second;
    Row normalized = row;
    for (auto& [idx, val] : normalized.value)
        val *= inv;
    for (auto& [idx, val] : normalized.combination)
        val *= inv;
    for (auto& [p, existing] : rows_)
    {
        auto hit = existing.value.find(pivot);
        if (hit == existing.value.end())
            continue;
        const Rational neg = -hit->second;
        axpy(existing.value, neg, normalized.value);
        axpy(existing.combination, neg, normalized.combination);
    }
    rows_.emplace(pivot, std::move(normalized));
    return true;
}

// ---------------------------------------------------------------------------

std::vector<LatticePoint> latticePointsInBox(const LatticePoint& lo, const LatticePoint& hi,
                                             const std::function<bool(const LatticePoint&)>& predicate)
{
    if (lo.size() != hi.size())
        throw DimensionError("latticePointsInBox: corner ranks differ");
    std::vector<LatticePoint> out;
    const Index n = lo.size();
    std::vector<long> l(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
    {
        l[static_cast<std::size_t>(i)] = toLong(lo(i));
        h[static_cast<std::size_t>(i)] = toLong(hi(i));
        if (h[static_cast<std::size_t>(i)] < l[static_cast<std::size_t>(i)])
            return out;
    }
    std::vector<long> cur = l;
    LatticePoint p(n);
    while (true)
    {
        for (Index i = 0; i < n; ++i)
            p(i) = cur[static_cast<std::size_t>(i)];
        if (!predicate || predicate(p))
            out.push_back(p);
        Index k = n - 1;
        while (k >= 0)
        {
            auto ks = static_cast<std::size_t>(k);
            if (cur[ks] < h[ks])
            {
                ++cur[ks];
                break;
            }
            cur[ks] = l[ks];
            --k;
        }
        if (k < 0)
            break;
    }
    return out;
}

namespace {

// Carathéodory: if p lies in the hull, it is a convex combination of an
// affinely independent subset; enumerate those and solve exactly.
bool hullSearch(const LatticePoint& p, const std::vector<LatticePoint>& others,
                std::vector<std::size_t>& chosen, std::size_t start, std::size_t maxSize)
{
    if (!chosen.empty())
    {
        const Index n = p.size();
        const auto k = static_cast<Index>(chosen.size());
        MatrixXr a(n + 1, k);
        for (Index j = 0; j < k; ++j)
        {
            const auto& q = others[chosen[static_cast<std::size_t>(j)]];
            for (Index i = 0; i < n; ++i)
                a(i, j) = Rational(q(i));
            a(n, j) = 1;
        }
        if (matrixRank(a) == k)
        {
            VectorXr rhs(n + 1);
            for (Index i = 0; i < n; ++i)
                rhs(i) = Rational(p(i));
            rhs(n) = 1;
            if (auto lambda = solveLinear(a, rhs))
            {
                bool nonneg = true;
                for (Index j = 0; j < k; ++j)
                    nonneg = nonneg && (*lambda)(j) >= 0;
                if (nonneg)
                    return true;
            }
        }
        else
        {
            return false;   // supersets stay dependent
        }
    }
    if (chosen.size() == maxSize)
        return false;
    for (std::size_t i = start; i < others.size(); ++i)
    {
        chosen.push_back(i);
        if (hullSearch(p, others, chosen, i + 1, maxSize))
            return true;
        chosen.pop_back();
    }
    return false;
}

}   // namespace

bool inConvexHull(const LatticePoint& p, const std::vector<LatticePoint>& others)
{
    for (const auto& q : others)
    {
        if (q.size() != p.size())
            throw DimensionError("inConvexHull: rank mismatch");
    }
    std::vector<std::size_t> chosen;
    return hullSearch(p, others, chosen, 0, static_cast<std::size_t>(p.size()) + 1);
}

std::vector<LatticePoint> hullVertices(const std::vector<LatticePoint>& points)
{
    std::vector<LatticePoint> unique;
    for (const auto& p : points)
    {
        if (std::none_of(unique.begin(), unique.end(), [&](const LatticePoint& q) { return q == p; }))
            unique.push_back(p);
    }
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < unique.size(); ++i)
    {
        std::vector<LatticePoint> others;
        for (std::size_t j = 0; j < unique.size(); ++j)
        {
            if (j != i)
                others.push_back(unique[j]);
        }
        if (!inConvexHull(unique[i], others))
            out.push_back(unique[i]);
    }
    return out;
}

}   // namespace toric
