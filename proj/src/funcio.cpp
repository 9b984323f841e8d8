#include "davies/funcio.hpp"

#include "davies/reportjson.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace davies {

namespace {

constexpr const char* kFormatTag = "davies.rep/1";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + " missing");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(std::string(what) + " must be a nonnegative integer, got '" + s + "'");
    }
  }
  return std::stoull(s);
}

OrderedJson payload_to_json(const Payload& p) {
  if (std::holds_alternative<std::monostate>(p)) return nullptr;
  if (const auto* r = std::get_if<Rational>(&p)) return to_string(*r);
  const auto& e = std::get<E0Point>(p);
  return OrderedJson{{"prefix", e.prefix}, {"tail", e.tail}};
}

Payload payload_from_json(const OrderedJson& j, const std::string& label) {
  if (j.is_null()) return std::monostate{};
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object()) {
    if (!j.contains("prefix") || !j.contains("tail") || !j["prefix"].is_string() ||
        !j["tail"].is_number_integer()) {
      throw validation_error("point '" + label + "': binary-sequence payload needs a string prefix and an integer tail");
    }
    return make_e0_point(j["prefix"].get<std::string>(), j["tail"].get<int>());
  }
  throw validation_error("point '" + label + "': payload must be a rational string, a {prefix, tail} object, or null");
}

PointList points_from_json(const OrderedJson& j) {
  if (!j.is_array()) throw validation_error("points file must contain a JSON array");
  PointList points;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string()) {
      throw validation_error("each point needs a string label");
    }
    const std::string label = entry["label"].get<std::string>();
    if (label.empty()) throw validation_error("empty point label");
    Payload payload;
    if (entry.contains("payload")) payload = payload_from_json(entry["payload"], label);
    points.push_back(Point{label, std::move(payload)});
  }
  return points;
}

OrderedJson row_to_json(Row& row) {
  const std::size_t stages = canonical_stage_count(row);
  row.ensure_stages(stages);
  const std::size_t length = row.milestones()[stages - 1] + 1;
  OrderedJson values = OrderedJson::array();
  for (std::size_t i = 0; i < length; ++i) values.push_back(to_string(row.value(i)));
  OrderedJson milestones = OrderedJson::array();
  for (std::size_t k = 0; k < stages; ++k) milestones.push_back(row.milestones()[k]);
  return OrderedJson{{"label", row.label()}, {"values", std::move(values)},
                     {"milestones", std::move(milestones)}};
}

OrderedJson representation_json(Representation& rep) {
  rep.canonicalize();
  OrderedJson j;
  j["format"] = kFormatTag;
  j["function"]["descriptor"] = rep.function().descriptor();
  if (rep.function().table_backed()) {
    OrderedJson table = OrderedJson::array();
    for (const auto& row : rep.function().table()) {
      OrderedJson out_row = OrderedJson::array();
      for (const auto& v : row) out_row.push_back(to_string(v));
      table.push_back(std::move(out_row));
    }
    j["function"]["table"] = std::move(table);
  }
  j["points"] = OrderedJson::array();
  for (const auto& p : rep.points()) {
    j["points"].push_back(OrderedJson{{"label", p.label}, {"payload", payload_to_json(p.payload)}});
  }
  j["g_rows"] = OrderedJson::array();
  j["h_rows"] = OrderedJson::array();
  for (std::size_t i = 0; i < rep.point_count(); ++i) {
    j["g_rows"].push_back(row_to_json(*rep.g_row(i)));
    j["h_rows"].push_back(row_to_json(*rep.h_row(i)));
  }
  j["cutoffs"] = OrderedJson::array();
  for (std::size_t i = 0; i < rep.point_count(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t k = 0; k < rep.point_count(); ++k) row.push_back(rep.pair_cutoff(i, k));
    j["cutoffs"].push_back(std::move(row));
  }
  return j;
}

void compare_row_lists(const OrderedJson& stored, const OrderedJson& derived, const char* side) {
  if (!stored.is_array() || stored.size() != derived.size()) {
    throw validation_error(std::string(side) + " count differs from the reconstruction");
  }
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const auto& s = stored[i];
    const auto& d = derived[i];
    const std::string where = std::string(side) + "[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("label") || !s.contains("values") || !s.contains("milestones")) {
      throw validation_error(where + " is missing label, values, or milestones");
    }
    if (s["label"] != d["label"]) {
      throw validation_error(where + " label differs from the reconstruction");
    }
    const auto& sm = s["milestones"];
    const auto& dm = d["milestones"];
    if (!sm.is_array() || sm.size() != dm.size()) {
      throw validation_error(where + " milestone count differs from the reconstruction");
    }
    for (std::size_t k = 0; k < sm.size(); ++k) {
      if (sm[k] != dm[k]) {
        throw validation_error(where + " milestone " + std::to_string(k) +
                               " differs from the reconstruction: stored " + sm[k].dump() +
                               ", derived " + dm[k].dump() + " (construction determinism violated)");
      }
    }
    const auto& sv = s["values"];
    const auto& dv = d["values"];
    if (!sv.is_array() || sv.size() != dv.size()) {
      throw validation_error(where + " value count differs from the reconstruction");
    }
    for (std::size_t k = 0; k < sv.size(); ++k) {
      if (sv[k] != dv[k]) {
        throw validation_error(where + " value at index " + std::to_string(k) +
                               " differs from the reconstruction: stored " + sv[k].dump() +
                               ", derived " + dv[k].dump() + " (construction determinism violated)");
      }
    }
  }
}

}  // namespace

PairFunction builtin(const std::string& descriptor) {
  const auto parts = split(descriptor, ':');
  if (parts[0] == "product" && parts.size() == 1) return PairFunction::product();
  if (parts[0] == "zero" && parts.size() == 1) return PairFunction::zero();
  if (parts[0] == "e0" && parts.size() == 1) return PairFunction::e0_indicator();
  if (parts[0] == "randtable" && parts.size() == 3) {
    const std::uint64_t seed = parse_uint(parts[1], "randtable seed");
    const std::uint64_t size = parse_uint(parts[2], "randtable size");
    if (size > 128) throw std::invalid_argument("randtable size above 128");
    return PairFunction::rand_table(seed, static_cast<std::size_t>(size));
  }
  if (parts[0] == "expseries" && parts.size() == 2) {
    return PairFunction::exp_series(static_cast<std::size_t>(parse_uint(parts[1], "expseries order")));
  }
  throw std::invalid_argument("unknown function descriptor '" + descriptor + "'");
}

PairFunction load_table(const std::filesystem::path& csv_path) {
  const std::string text = read_text_file(csv_path);
  std::vector<std::vector<Rational>> entries;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) continue;
    std::vector<Rational> row;
    for (const auto& cell : split(line, ',')) row.push_back(parse_rational(cell));
    entries.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != entries.size()) {
      throw validation_error("table row " + std::to_string(r) + " has " +
                             std::to_string(entries[r].size()) + " entries, expected " +
                             std::to_string(entries.size()));
    }
  }
  return PairFunction::from_table(std::move(entries));
}

PairFunction function_from_spec(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) return load_table(spec.substr(6));
  return builtin(spec);
}

PointList points_from_json_text(const std::string& text) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("points file is not valid JSON: ") + e.what());
  }
  return points_from_json(j);
}

PointList load_points(const std::filesystem::path& json_path) {
  return points_from_json_text(read_text_file(json_path));
}

std::string representation_to_json(Representation& rep) {
  return to_json_string(representation_json(rep));
}

void dump_representation(Representation& rep, const std::filesystem::path& out_path) {
  write_text_file(out_path, representation_to_json(rep));
}

Representation representation_from_json(const std::string& text) {
  OrderedJson stored;
  try {
    stored = OrderedJson::parse(text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("representation is not valid JSON: ") + e.what());
  }
  if (!stored.is_object() || stored.value("format", "") != kFormatTag) {
    throw validation_error("missing or unsupported format tag");
  }
  if (!stored.contains("function") || !stored["function"].is_object() ||
      !stored["function"].contains("descriptor") || !stored["function"]["descriptor"].is_string()) {
    throw validation_error("missing function descriptor");
  }
  const std::string descriptor = stored["function"]["descriptor"].get<std::string>();
  PairFunction f = PairFunction::zero();
  if (descriptor == "table") {
    if (!stored["function"].contains("table") || !stored["function"]["table"].is_array()) {
      throw validation_error("table-backed function is missing its table");
    }
    std::vector<std::vector<Rational>> entries;
    for (const auto& row : stored["function"]["table"]) {
      std::vector<Rational> out_row;
      for (const auto& cell : row) {
        if (!cell.is_string()) throw validation_error("table entries must be rational strings");
        out_row.push_back(parse_rational(cell.get<std::string>()));
      }
      entries.push_back(std::move(out_row));
    }
    f = PairFunction::from_table(std::move(entries));
  } else {
    if (stored["function"].contains("table")) {
      throw validation_error("builtin function must not carry an inline table");
    }
    f = builtin(descriptor);
  }
  if (!stored.contains("points")) throw validation_error("missing points");
  PointList points = points_from_json(stored["points"]);

  Representation rep(std::move(f));
  for (auto& p : points) rep.add_point(std::move(p));

  OrderedJson derived = representation_json(rep);
  if (!stored.contains("g_rows") || !stored.contains("h_rows") || !stored.contains("cutoffs")) {
    throw validation_error("missing g_rows, h_rows, or cutoffs");
  }
  compare_row_lists(stored["g_rows"], derived["g_rows"], "g_rows");
  compare_row_lists(stored["h_rows"], derived["h_rows"], "h_rows");
  if (stored["cutoffs"] != derived["cutoffs"]) {
    throw validation_error("cutoffs differ from the reconstruction (construction determinism violated)");
  }
  if (stored != derived) {
    throw validation_error("representation carries unrecognized or reordered content");
  }

  // The reconstruction must also stand on its own: the sum identities up
  // to every stored cutoff and the support discipline.
  std::size_t max_cutoff = 0;
  for (std::size_t i = 0; i < rep.point_count(); ++i) {
    for (std::size_t j = 0; j < rep.point_count(); ++j) {
      max_cutoff = std::max(max_cutoff, rep.pair_cutoff(i, j));
    }
  }
  const VerifyReport verify = rep.verify_all(max_cutoff);
  if (!verify.ok) {
    for (const auto& c : verify.certificates) {
      if (!c.ok) {
        throw validation_error("pair (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                               ") fails verification: " + c.failure);
      }
    }
  }
  const SReport s = rep.check_S(1);
  if (!s.ok) {
    throw validation_error("support discipline violated: " + s.issues.front().detail);
  }
  return rep;
}

Representation load_representation(const std::filesystem::path& in_path) {
  return representation_from_json(read_text_file(in_path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw validation_error("failed writing '" + path.string() + "'");
}

}  // namespace davies
