#include "finitegap/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace finitegap {

using nlohmann::json;

namespace {

Complex read_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json write_complex(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

CurveSpec parse_curve_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("curve spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("curve spec must be a JSON object");
  if (!doc.contains("u")) throw ParseError("curve spec: missing \"u\"");
  const Complex u = read_complex(doc["u"], "u");

  std::vector<GluePair> glue;
  if (doc.contains("glue")) {
    const json& list = doc["glue"];
    if (!list.is_array()) throw ParseError("glue: expected an array of pairs");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "glue[" + std::to_string(k) + "]";
      const json& entry = list[k];
      if (!entry.is_array() || entry.size() < 2 || entry.size() > 3)
        throw ParseError(where + ": expected [[re, im], [re, im]] with optional multiplicity");
      GluePair pair{read_complex(entry[0], where + "[0]"), read_complex(entry[1], where + "[1]"), 1};
      if (entry.size() == 3) {
        if (!entry[2].is_number_integer()) throw ParseError(where + ": multiplicity must be an integer");
        pair.multiplicity = entry[2].get<int>();
      }
      glue.push_back(pair);
    }
  }
  try {
    return CurveSpec(u, std::move(glue));
  } catch (const CurveError& e) {
    throw ParseError(std::string("invalid curve spec: ") + e.what());
  }
}

CurveSpec read_curve_spec(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_curve_spec(buffer.str());
}

CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open curve spec file: " + path);
  return read_curve_spec(in);
}

std::string curve_spec_to_json(const CurveSpec& curve) {
  json doc;
  doc["u"] = write_complex(curve.u());
  doc["glue"] = json::array();
  for (const GluePair& g : curve.glue()) {
    json entry = json::array({write_complex(g.first), write_complex(g.second)});
    if (g.multiplicity != 1) entry.push_back(g.multiplicity);
    doc["glue"].push_back(entry);
  }
  return doc.dump();
}

}  // namespace finitegap
