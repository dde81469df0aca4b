#include "predeq/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace predeq {

using nlohmann::json;

namespace {

json domainToJson(const Domain& d) {
  json j;
  switch (d.kind) {
    case DomainKind::Boolean:
      j["kind"] = "boolean";
      break;
    case DomainKind::Categorical:
      j["kind"] = "categorical";
      j["values"] = d.values;
      break;
    case DomainKind::OrdinalInt:
      j["kind"] = "ordinal_int";
      j["lo"] = d.intLo;
      j["hi"] = d.intHi;
      break;
    case DomainKind::OrdinalReal:
      j["kind"] = "ordinal_real";
      j["lo"] = d.realLo;
      j["hi"] = d.realHi;
      break;
  }
  return j;
}

Domain domainFromJson(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError(where + ": domain must be an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "boolean") return Domain::boolean();
  if (kind == "categorical") {
    if (!j.contains("values"))
      throw ParseError(where + ": categorical domain needs \"values\"");
    return Domain::categorical(j.at("values").get<std::vector<std::string>>());
  }
  if (kind == "ordinal_int") {
    if (!j.contains("lo") || !j.contains("hi"))
      throw ParseError(where + ": ordinal domain needs \"lo\" and \"hi\"");
    return Domain::ordinalInt(j.at("lo").get<std::int64_t>(),
                              j.at("hi").get<std::int64_t>());
  }
  if (kind == "ordinal_real") {
    if (!j.contains("lo") || !j.contains("hi"))
      throw ParseError(where + ": ordinal domain needs \"lo\" and \"hi\"");
    return Domain::ordinalReal(j.at("lo").get<double>(), j.at("hi").get<double>());
  }
  throw ParseError(where + ": unknown domain kind \"" + kind + "\"");
}

LitOp opFromToken(const std::string& tok, const std::string& where) {
  if (tok == "in") return LitOp::In;
  if (tok == "eq") return LitOp::Eq;
  if (tok == "lt") return LitOp::Lt;
  if (tok == "le") return LitOp::Le;
  if (tok == "gt") return LitOp::Gt;
  if (tok == "ge") return LitOp::Ge;
  throw ParseError(where + ": unknown op token \"" + tok + "\"");
}

std::uint32_t discreteIndexFromJson(const Domain& dom, const json& v,
                                    const std::string& where) {
  if (dom.kind == DomainKind::Boolean) {
    if (v.is_boolean()) return v.get<bool>() ? 1u : 0u;
    if (v.is_number_integer()) {
      std::int64_t n = v.get<std::int64_t>();
      if (n == 0 || n == 1) return static_cast<std::uint32_t>(n);
    }
    throw ParseError(where + ": boolean value must be true/false or 0/1");
  }
  if (!v.is_string())
    throw ParseError(where + ": categorical value must be a string");
  const std::string s = v.get<std::string>();
  for (std::size_t i = 0; i < dom.values.size(); ++i)
    if (dom.values[i] == s) return static_cast<std::uint32_t>(i);
  throw SchemaError(where + ": value \"" + s + "\" not in the declared domain");
}

json discreteValueToJson(const Domain& dom, std::uint32_t idx) {
  if (dom.kind == DomainKind::Boolean) return idx != 0 ? 1 : 0;
  return dom.values[idx];
}

json literalToJson(const Schema& schema, const Literal& lit) {
  const Domain& dom = schema[lit.feature - 1].domain;
  json j;
  j["feature"] = lit.feature;
  j["op"] = litOpToken(lit.op);
  if (lit.op == LitOp::In) {
    json vals = json::array();
    if (dom.discrete()) {
      for (std::uint32_t v : lit.setIdx) vals.push_back(discreteValueToJson(dom, v));
    } else if (dom.kind == DomainKind::OrdinalInt) {
      for (std::int64_t v : lit.setInt) vals.push_back(v);
    } else {
      for (double v : lit.setReal) vals.push_back(v);
    }
    j["values"] = vals;
  } else {
    if (dom.kind == DomainKind::OrdinalInt)
      j["value"] = lit.intValue;
    else
      j["value"] = lit.realValue;
  }
  return j;
}

Literal literalFromJson(const Schema& schema, const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": literal must be an object");
  if (!j.contains("feature")) throw ParseError(where + ": literal needs \"feature\"");
  if (!j.contains("op")) throw ParseError(where + ": literal needs \"op\"");
  int feature = j.at("feature").get<int>();
  if (feature < 1 || feature > static_cast<int>(schema.size()))
    throw SchemaError(where + ": unknown feature id " + std::to_string(feature));
  const Domain& dom = schema[feature - 1].domain;
  LitOp op = opFromToken(j.at("op").get<std::string>(), where);

  if (op == LitOp::In) {
    if (!j.contains("values"))
      throw ParseError(where + ": op \"in\" needs a \"values\" array");
    const json& vals = j.at("values");
    if (!vals.is_array()) throw ParseError(where + ": \"values\" must be an array");
    if (dom.discrete()) {
      std::vector<std::uint32_t> idx;
      for (const json& v : vals) idx.push_back(discreteIndexFromJson(dom, v, where));
      return inDiscrete(feature, std::move(idx));
    }
    if (dom.kind == DomainKind::OrdinalInt)
      return inInt(feature, vals.get<std::vector<std::int64_t>>());
    return inReal(feature, vals.get<std::vector<double>>());
  }

  if (dom.discrete()) {
    // eq normalizes to a singleton in; comparisons are undefined here
    if (op != LitOp::Eq)
      throw SchemaError(where + ": op \"" + litOpToken(op) +
                        "\" is not applicable to a discrete feature");
    if (!j.contains("value")) throw ParseError(where + ": op \"eq\" needs \"value\"");
    return eqDiscrete(feature, discreteIndexFromJson(dom, j.at("value"), where));
  }
  if (!j.contains("value"))
    throw ParseError(where + ": scalar op needs a \"value\" field");
  if (dom.kind == DomainKind::OrdinalInt)
    return scalarInt(feature, op, j.at("value").get<std::int64_t>());
  return scalarReal(feature, op, j.at("value").get<double>());
}

json parseDoc(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("document is not valid JSON");
  return j;
}

void checkVersion(const json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " document must be a JSON object");
  if (!j.contains("format_version"))
    throw ParseError(what + " document is missing \"format_version\"");
  if (j.at("format_version").get<int>() != 1)
    throw ParseError(what + " document has unsupported format_version");
}

}  // namespace

std::string serializeTree(const DecisionTree& tree) {
  json j;
  j["format_version"] = 1;
  json features = json::array();
  for (const FeatureSchema& f : tree.schema) {
    json jf;
    jf["id"] = f.id;
    jf["name"] = f.name;
    jf["domain"] = domainToJson(f.domain);
    features.push_back(jf);
  }
  j["features"] = features;
  j["classes"] = tree.classes;
  json nodes = json::array();
  for (const Node& n : tree.nodes) {
    json jn;
    jn["id"] = n.id;
    if (n.leaf) {
      jn["kind"] = "leaf";
      jn["class"] = tree.classes[n.cls];
    } else {
      jn["kind"] = "internal";
      jn["feature"] = n.feature;
      json edges = json::array();
      for (const Edge& e : n.edges) {
        json je;
        je["literal"] = literalToJson(tree.schema, e.lit);
        je["child"] = tree.nodes[e.child].id;
        edges.push_back(je);
      }
      jn["edges"] = edges;
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  j["root"] = tree.nodes[tree.root].id;
  return j.dump(2);
}

DecisionTree deserializeTree(const std::string& text) {
  json j = parseDoc(text);
  checkVersion(j, "tree");
  for (const char* field : {"features", "classes", "nodes", "root"})
    if (!j.contains(field))
      throw ParseError(std::string("tree document is missing \"") + field + "\"");

  Schema schema;
  for (const json& jf : j.at("features")) {
    std::string where = "features[" + std::to_string(schema.size()) + "]";
    FeatureSchema f;
    if (!jf.contains("id") || !jf.contains("name") || !jf.contains("domain"))
      throw ParseError(where + ": feature needs id, name and domain");
    f.id = jf.at("id").get<int>();
    f.name = jf.at("name").get<std::string>();
    f.domain = domainFromJson(jf.at("domain"), where);
    schema.push_back(std::move(f));
  }
  checkSchema(schema);

  TreeBuilder builder(schema, j.at("classes").get<std::vector<std::string>>());
  for (const json& jn : j.at("nodes")) {
    if (!jn.contains("id") || !jn.contains("kind"))
      throw ParseError("node entry needs id and kind");
    int id = jn.at("id").get<int>();
    std::string where = "nodes[id=" + std::to_string(id) + "]";
    std::string kind = jn.at("kind").get<std::string>();
    if (kind == "leaf") {
      if (!jn.contains("class")) throw ParseError(where + ": leaf needs \"class\"");
      builder.leaf(id, jn.at("class").get<std::string>());
    } else if (kind == "internal") {
      if (!jn.contains("feature") || !jn.contains("edges"))
        throw ParseError(where + ": internal node needs feature and edges");
      std::vector<std::pair<Literal, int>> edges;
      for (const json& je : jn.at("edges")) {
        if (!je.contains("literal") || !je.contains("child"))
          throw ParseError(where + ": edge needs literal and child");
        edges.emplace_back(literalFromJson(schema, je.at("literal"), where),
                           je.at("child").get<int>());
      }
      builder.internal(id, jn.at("feature").get<int>(), std::move(edges));
    } else {
      throw ParseError(where + ": unknown node kind \"" + kind + "\"");
    }
  }
  return builder.build(j.at("root").get<int>());
}

std::string serializeAssignment(const Schema& schema, const PartialAssignment& a) {
  json j;
  j["format_version"] = 1;
  json lits = json::array();
  for (const Literal& l : a.literals()) lits.push_back(literalToJson(schema, l));
  j["literals"] = lits;
  return j.dump(2);
}

PartialAssignment deserializeAssignment(const Schema& schema, const std::string& text) {
  json j = parseDoc(text);
  checkVersion(j, "assignment");
  if (!j.contains("literals"))
    throw ParseError("assignment document is missing \"literals\"");
  std::vector<Literal> lits;
  std::size_t i = 0;
  for (const json& jl : j.at("literals")) {
    lits.push_back(literalFromJson(schema, jl, "literals[" + std::to_string(i) + "]"));
    ++i;
  }
  return PartialAssignment(schema, std::move(lits));
}

DecisionTree readTreeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tree file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserializeTree(buf.str());
}

void writeTreeFile(const std::string& path, const DecisionTree& tree) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write tree file: " + path);
  out << serializeTree(tree) << "\n";
}

PartialAssignment readAssignmentFile(const Schema& schema, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open assignment file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserializeAssignment(schema, buf.str());
}

PartialAssignment parseInlineAssignment(const Schema& schema, const std::string& text) {
  std::string s = text;
  auto fail = [&](const std::string& msg) {
    throw ParseError("inline assignment \"" + text + "\": " + msg);
  };
  // strip whitespace
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.size() < 2 || compact.front() != '{' || compact.back() != '}')
    fail("expected {name:value,...}");
  compact = compact.substr(1, compact.size() - 2);

  std::vector<Literal> lits;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    std::size_t comma = compact.find(',', pos);
    std::string item = compact.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? compact.size() : comma + 1;
    if (item.empty()) continue;
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) fail("item \"" + item + "\" has no ':'");
    std::string name = item.substr(0, colon);
    std::string value = item.substr(colon + 1);
    int feature = schemaFeatureByName(schema, name);
    if (feature < 0 && name.size() > 1 && name[0] == 'x') {
      try {
        int id = std::stoi(name.substr(1));
        if (id >= 1 && id <= static_cast<int>(schema.size())) feature = id;
      } catch (...) {
      }
    }
    if (feature < 0) fail("unknown feature \"" + name + "\"");
    const Domain& dom = schema[feature - 1].domain;
    switch (dom.kind) {
      case DomainKind::Boolean:
        if (value == "0" || value == "false")
          lits.push_back(eqBool(feature, false));
        else if (value == "1" || value == "true")
          lits.push_back(eqBool(feature, true));
        else
          fail("boolean value must be 0/1/true/false");
        break;
      case DomainKind::Categorical: {
        int idx = -1;
        for (std::size_t i = 0; i < dom.values.size(); ++i)
          if (dom.values[i] == value) idx = static_cast<int>(i);
        if (idx < 0)
          throw SchemaError("inline assignment: value \"" + value +
                            "\" not in the domain of " + name);
        lits.push_back(eqDiscrete(feature, static_cast<std::uint32_t>(idx)));
        break;
      }
      case DomainKind::OrdinalInt:
        try {
          lits.push_back(scalarInt(feature, LitOp::Eq, std::stoll(value)));
        } catch (const std::exception&) {
          fail("integer value expected for " + name);
        }
        break;
      case DomainKind::OrdinalReal:
        try {
          lits.push_back(scalarReal(feature, LitOp::Eq, std::stod(value)));
        } catch (const std::exception&) {
          fail("numeric value expected for " + name);
        }
        break;
    }
  }
  return PartialAssignment(schema, std::move(lits));
}

}  // namespace predeq
