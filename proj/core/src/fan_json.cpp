#include "qtoric/fan_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qtoric/error.hpp"

namespace qtoric {

namespace {

using Json = nlohmann::ordered_json;

Integer to_integer(const Json& value, const char* what) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Integer(value.get<unsigned long>());
    return Integer(value.get<long>());
  }
  if (value.is_string()) {
    Integer out;
    if (out.set_str(value.get<std::string>(), 10) == 0) return out;
  }
  throw Error(ErrorKind::ParseError, std::string(what) + " must be an integer");
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

}  // namespace

Fan read_fan_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "fan document must be an object");
  for (const char* key : {"dim", "rays", "max_cones"})
    if (!doc.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key \"") + key + "\"");

  const Integer dim = to_integer(doc["dim"], "dim");
  if (dim < 0 || !dim.fits_uint_p()) throw Error(ErrorKind::ParseError, "dim must be a nonnegative integer");

  if (!doc["rays"].is_array()) throw Error(ErrorKind::ParseError, "rays must be an array");
  std::vector<LatticeVector> rays;
  for (const auto& r : doc["rays"]) {
    if (!r.is_array()) throw Error(ErrorKind::ParseError, "each ray must be an array of integers");
    LatticeVector v;
    for (const auto& x : r) v.push_back(to_integer(x, "ray entry"));
    if (v.size() != dim.get_ui())
      throw Error(ErrorKind::DimensionMismatch, "ray " + std::to_string(rays.size() + 1) + " has " +
                                                    std::to_string(v.size()) + " entries, expected " +
                                                    dim.get_str());
    rays.push_back(std::move(v));
  }

  if (!doc["max_cones"].is_array()) throw Error(ErrorKind::ParseError, "max_cones must be an array");
  std::vector<IndexSet> cones;
  for (const auto& c : doc["max_cones"]) {
    if (!c.is_array()) throw Error(ErrorKind::ParseError, "each cone must be an array of ray indices");
    IndexSet cone;
    for (const auto& x : c) {
      const Integer i = to_integer(x, "cone index");
      if (i < 1 || i > static_cast<long>(rays.size()))
        throw Error(ErrorKind::ParseError, "cone index " + i.get_str() + " out of range 1.." +
                                               std::to_string(rays.size()));
      cone.push_back(i.get_ui() - 1);
    }
    cones.push_back(std::move(cone));
  }
  return Fan(dim.get_ui(), std::move(rays), std::move(cones));
}

Fan read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open fan file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_fan_json(buf.str());
}

std::string write_fan_json(const Fan& fan) {
  Json doc;
  doc["dim"] = fan.dim();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(integer_json(x));
    rays.push_back(std::move(row));
  }
  doc["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const auto& c : fan.max_cones()) {
    Json row = Json::array();
    for (auto i : c) row.push_back(i + 1);
    cones.push_back(std::move(row));
  }
  doc["max_cones"] = std::move(cones);
  return doc.dump() + "\n";
}

}  // namespace qtoric
