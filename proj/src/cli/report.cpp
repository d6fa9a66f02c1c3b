#include <cstdint>
#include <cstdio>

#include "cli_internal.hpp"

namespace toric::cli {

json jsonInteger(const Integer& x)
{
    static const Integer limit = Integer(1) << 53;
    if (abs(x) < limit)
        return json(static_cast<std::int64_t>(x.convert_to<long long>()));
    return json(x.str());
}

json jsonPoint(const LatticePoint& p)
{
    json a = json::array();
    for (Index i = 0; i < p.size(); ++i)
        a.push_back(jsonInteger(p(i)));
    return a;
}

json jsonPoints(const std::vector<LatticePoint>& pts)
{
    json a = json::array();
    for (const auto& p : pts)
        a.push_back(jsonPoint(p));
    return a;
}

json jsonRational(const Rational& q)
{
    return json(toString(q));
}

json jsonElement(const AlgebraElement& f)
{
    json a = json::array();
    for (const auto& [m, c] : f.terms())
        a.push_back({{"coefficient", jsonRational(c)}, {"exponent", jsonPoint(m)}});
    return a;
}

json jsonDerivation(const Derivation& d)
{
    json comps = json::array();
    for (const auto& c : d.components())
    {
        comps.push_back({{"coefficient", jsonRational(c.coefficient)},
                         {"root", jsonPoint(c.root.e)},
                         {"distinguishedRay", jsonPoint(c.root.distinguishedRay)}});
    }
    return {{"components", comps}, {"nilpotency", jsonNilpotency(d.nilpotency())}, {"text", d.describe()}};
}

json jsonNilpotency(const NilpotencyStatus& s)
{
    json j = {{"status", toString(s.state)}, {"bound", s.bound}};
    if (s.offendingGenerator)
        j["offendingGenerator"] = jsonPoint(*s.offendingGenerator);
    return j;
}

json jsonSubspace(const TruncatedSubspace& s)
{
    json basis = json::array();
    for (Index r = 0; r < s.dimension(); ++r)
    {
        json terms = json::array();
        for (Index j = 0; j < s.ambientDimension(); ++j)
        {
            if (s.rows()(r, j) != 0)
                terms.push_back({{"coefficient", jsonRational(s.rows()(r, j))},
                                 {"exponent", jsonPoint(s.ambientBasis()[static_cast<std::size_t>(j)])}});
        }
        basis.push_back(terms);
    }
    return {{"dimension", s.dimension()}, {"ambientDimension", s.ambientDimension()}, {"basis", basis}};
}

std::string fnv1a64Hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

bool isScalar(const json& v)
{
    return !v.is_object() && !v.is_array();
}

std::string scalarText(const json& v, bool color)
{
    if (v.is_string())
    {
        const std::string s = v.get<std::string>();
        if (color && (s == "PASS" || s == "FAIL"))
            return (s == "PASS" ? "\033[32m" : "\033[31m") + s + "\033[0m";
        return s;
    }
    return v.dump();
}

bool inlineable(const json& v)
{
    if (isScalar(v))
        return true;
    if (v.is_array())
    {
        for (const auto& x : v)
        {
            if (!inlineable(x) || x.is_object())
                return false;
        }
        return true;
    }
    return false;
}

std::string inlineText(const json& v, bool color)
{
    if (isScalar(v))
        return scalarText(v, color);
    std::string s = "[";
    bool first = true;
    for (const auto& x : v)
    {
        if (!first)
            s += ", ";
        first = false;
        s += inlineText(x, color);
    }
    return s + "]";
}

void writeText(std::ostream& out, const json& v, int indent, bool color)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object())
    {
        std::size_t width = 0;
        for (const auto& [k, x] : v.items())
        {
            if (inlineable(x))
                width = std::max(width, k.size());
        }
        for (const auto& [k, x] : v.items())
        {
            if (inlineable(x))
                out << pad << k << ':' << std::string(width - k.size() + 1, ' ') << inlineText(x, color) << '\n';
            else
            {
                out << pad << k << ":\n";
                writeText(out, x, indent + 2, color);
            }
        }
    }
    else if (v.is_array())
    {
        if (v.empty())
            out << pad << "(none)\n";
        std::size_t i = 0;
        for (const auto& x : v)
        {
            if (inlineable(x))
                out << pad << "- " << inlineText(x, color) << '\n';
            else
            {
                out << pad << "- [" << i << "]\n";
                writeText(out, x, indent + 4, color);
            }
            ++i;
        }
    }
    else
        out << pad << scalarText(v, color) << '\n';
}

}   // namespace

void writeReport(std::ostream& out, const json& report, Format format, bool color)
{
    if (format == Format::Json)
        out << report.dump(2) << '\n';
    else
        writeText(out, report, 0, color);
}

}   // namespace toric::cli
