#include <fstream>
#include <set>
#include <sstream>

#include "cli_internal.hpp"

namespace toric::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw InputError("scenario " + path + ": " + msg);
}

void requireKeys(const json& obj, const std::string& path, const std::set<std::string>& required,
                 const std::set<std::string>& optional)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    for (const auto& k : required)
    {
        if (!obj.contains(k))
            fail(path, "missing required field '" + k + "'");
    }
    for (const auto& [k, v] : obj.items())
    {
        if (!required.count(k) && !optional.count(k))
            fail(path, "unknown field '" + k + "'");
    }
}

Integer parseInteger(const json& v, const std::string& path)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Integer(v.get<unsigned long long>()) : Integer(v.get<long long>());
    if (v.is_string())
    {
        const std::string s = v.get<std::string>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos)
            return Integer(s);
    }
    fail(path, "expected an integer (JSON integer or decimal string)");
}

long parseBound(const json& v, const std::string& path, long minimum)
{
    if (!v.is_number_integer())
        fail(path, "expected an integer");
    const long long x = v.get<long long>();
    if (x < minimum || x > 1000000)
        fail(path, "must be in [" + std::to_string(minimum) + ", 1000000]");
    return static_cast<long>(x);
}

LatticePoint parsePoint(const json& v, const std::string& path, Index rank)
{
    if (!v.is_array())
        fail(path, "expected an integer array");
    if (static_cast<Index>(v.size()) != rank)
        fail(path, "has " + std::to_string(v.size()) + " entries but latticeRank is " + std::to_string(rank));
    LatticePoint p(rank);
    for (Index i = 0; i < rank; ++i)
        p(i) = parseInteger(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
    return p;
}

Rational parseCoefficient(const json& v, const std::string& path)
{
    if (!v.is_string())
        fail(path, "coefficient must be a decimal or p/q string");
    try
    {
        return parseRational(v.get<std::string>());
    }
    catch (const std::exception& e)
    {
        fail(path, std::string("bad coefficient: ") + e.what());
    }
}

std::vector<std::pair<LatticePoint, Rational>> parseTerms(const json& arr, const std::string& path, Index rank,
                                                          const char* vectorKey)
{
    if (!arr.is_array())
        fail(path, "expected an array");
    std::vector<std::pair<LatticePoint, Rational>> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const std::string p = path + "[" + std::to_string(i) + "]";
        requireKeys(arr[i], p, {"coefficient", vectorKey}, {});
        out.emplace_back(parsePoint(arr[i][vectorKey], p + "." + vectorKey, rank),
                         parseCoefficient(arr[i]["coefficient"], p + ".coefficient"));
    }
    return out;
}

}   // namespace

Scenario parseScenario(const std::string& text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw InputError(std::string("scenario is not valid JSON: ") + e.what());
    }
    requireKeys(doc, "$", {"schemaVersion", "latticeRank", "monoidGenerators"},
                {"name", "gradingVector", "derivations", "elements", "bounds"});
    if (!doc["schemaVersion"].is_number_integer() || doc["schemaVersion"].get<long long>() != kSchemaVersion)
        fail("$.schemaVersion", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");

    Scenario s;
    s.rank = parseBound(doc["latticeRank"], "$.latticeRank", 1);
    if (s.rank > 16)
        fail("$.latticeRank", "ranks above 16 are not supported");
    if (doc.contains("name"))
    {
        if (!doc["name"].is_string())
            fail("$.name", "expected a string");
        s.name = doc["name"].get<std::string>();
    }
    const json& gens = doc["monoidGenerators"];
    if (!gens.is_array() || gens.empty())
        fail("$.monoidGenerators", "expected a nonempty array of integer arrays");
    for (std::size_t i = 0; i < gens.size(); ++i)
        s.generators.push_back(parsePoint(gens[i], "$.monoidGenerators[" + std::to_string(i) + "]", s.rank));
    if (doc.contains("gradingVector"))
        s.grading = parsePoint(doc["gradingVector"], "$.gradingVector", s.rank);

    if (doc.contains("derivations"))
    {
        const json& ds = doc["derivations"];
        if (!ds.is_array())
            fail("$.derivations", "expected an array");
        for (std::size_t i = 0; i < ds.size(); ++i)
        {
            const std::string p = "$.derivations[" + std::to_string(i) + "]";
            requireKeys(ds[i], p, {"components"}, {});
            s.derivations.push_back(parseTerms(ds[i]["components"], p + ".components", s.rank, "root"));
        }
    }
    if (doc.contains("elements"))
    {
        const json& es = doc["elements"];
        if (!es.is_array())
            fail("$.elements", "expected an array");
        for (std::size_t i = 0; i < es.size(); ++i)
        {
            const std::string p = "$.elements[" + std::to_string(i) + "]";
            requireKeys(es[i], p, {"terms"}, {});
            s.elements.push_back(parseTerms(es[i]["terms"], p + ".terms", s.rank, "exponent"));
        }
    }
    if (doc.contains("bounds"))
    {
        const json& b = doc["bounds"];
        requireKeys(b, "$.bounds", {}, {"coordBound", "degreeBound", "sliceDegree", "truncationDegree"});
        if (b.contains("coordBound"))
            s.bounds.coordBound = parseBound(b["coordBound"], "$.bounds.coordBound", 1);
        if (b.contains("degreeBound"))
            s.bounds.degreeBound = parseBound(b["degreeBound"], "$.bounds.degreeBound", 0);
        if (b.contains("sliceDegree"))
            s.bounds.sliceDegree = parseBound(b["sliceDegree"], "$.bounds.sliceDegree", 0);
        if (b.contains("truncationDegree"))
            s.bounds.truncationDegree = parseBound(b["truncationDegree"], "$.bounds.truncationDegree", 0);
    }
    s.canonical = doc.dump();
    return s;
}

Scenario loadScenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseScenario(buf.str());
}

json scenarioJson(const ScenarioCase& c)
{
    json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["name"] = c.name;
    doc["latticeRank"] = c.rank;
    doc["monoidGenerators"] = jsonPoints(c.monoidGenerators);
    if (c.gradingVector)
        doc["gradingVector"] = jsonPoint(*c.gradingVector);
    json ds = json::array();
    for (const auto& d : c.derivations)
    {
        json comps = json::array();
        for (const auto& [e, coeff] : d)
            comps.push_back({{"coefficient", jsonRational(coeff)}, {"root", jsonPoint(e)}});
        ds.push_back({{"components", comps}});
    }
    if (!ds.empty())
        doc["derivations"] = ds;
    doc["bounds"] = {{"coordBound", c.defaultBounds.coordBound},
                     {"degreeBound", c.defaultBounds.degreeBound},
                     {"sliceDegree", c.defaultBounds.sliceDegree},
                     {"truncationDegree", c.defaultBounds.truncationDegree}};
    return doc;
}

Scenario scenarioFromCase(const ScenarioCase& c)
{
    return parseScenario(scenarioJson(c).dump());
}

}   // namespace toric::cli
