#include "telescope/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "telescope/error.hpp"

namespace telescope::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what, {{"path", where}});
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

std::size_t count(const json& j, const std::string& where) {
  long v = integer(j, where);
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

json to_json(const BigRational& q) { return q.str(); }

BigRational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return BigRational::parse(j.get<std::string>());
    } catch (const Error&) {
      fail(where, "malformed rational '" + j.get<std::string>() + "'");
    }
  }
  if (j.is_number_integer()) return BigRational(j.get<long>());
  fail(where, "expected a rational string such as \"3/4\"");
}

// ---------------------------------------------------------------- groups

json to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"mult", g.table()}, {"labels", g.labels()}};
}

GroupPtr group_from_json(const json& j) {
  const std::string where = "group";
  if (j.is_null()) return FiniteGroup::trivial();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "trivial") return FiniteGroup::trivial();
    if (s.rfind("Z", 0) == 0 || s.rfind("C", 0) == 0) {
      try {
        return FiniteGroup::cyclic(static_cast<std::size_t>(std::stoul(s.substr(1))));
      } catch (const std::logic_error&) {
      }
    }
    if (s.rfind("S", 0) == 0) {
      try {
        return FiniteGroup::symmetric(static_cast<std::size_t>(std::stoul(s.substr(1))));
      } catch (const std::logic_error&) {
      }
    }
    fail(where, "unknown group name '" + s + "'");
  }
  const json& mult = field(j, "mult", where);
  if (!mult.is_array()) fail(where + ".mult", "expected an array of rows");
  FiniteGroup::Table table;
  for (std::size_t r = 0; r < mult.size(); ++r) {
    if (!mult[r].is_array()) fail(where + ".mult[" + std::to_string(r) + "]", "expected an array");
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < mult[r].size(); ++c)
      row.push_back(count(mult[r][c], where + ".mult[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    table.push_back(std::move(row));
  }
  if (j.contains("order") && count(j["order"], where + ".order") != table.size())
    throw Error(ErrorCode::BadTable, "order does not match the table size",
                {{"order", j["order"]}, {"rows", table.size()}});
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) fail(where + ".labels", "expected an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) fail(where + ".labels", "expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return FiniteGroup::from_table(std::move(table), std::move(labels));
}

// ---------------------------------------------------------------- algebra

json to_json(const GroupRingElement& a) {
  json out = json::array();
  for (const auto& c : a.coeffs()) out.push_back(c.str());
  return out;
}

GroupRingElement element_from_json(const json& j, const GroupPtr& group, const std::string& where) {
  if (!j.is_array()) {
    if (group->order() == 1) return GroupRingElement::scalar(group, rational_from_json(j, where));
    fail(where, "expected an array of " + std::to_string(group->order()) + " coefficients");
  }
  if (j.size() != group->order())
    fail(where, "expected " + std::to_string(group->order()) + " coefficients, got " + std::to_string(j.size()));
  std::vector<BigRational> coeffs;
  for (std::size_t g = 0; g < j.size(); ++g) coeffs.push_back(rational_from_json(j[g], where + "[" + std::to_string(g) + "]"));
  return GroupRingElement(group, std::move(coeffs));
}

json to_json(const GroupAlgebraMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    entries.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

namespace {

template <class F>
void for_each_entry(const json& j, const std::string& where, std::size_t& rows, std::size_t& cols, F&& f) {
  rows = count(field(j, "rows", where), where + ".rows");
  cols = count(field(j, "cols", where), where + ".cols");
  const json& entries = field(j, "entries", where);
  if (!entries.is_array() || entries.size() != rows) fail(where + ".entries", "expected " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < rows; ++r) {
    if (!entries[r].is_array() || entries[r].size() != cols)
      fail(where + ".entries[" + std::to_string(r) + "]", "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      f(r, c, entries[r][c], where + ".entries[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
}

bool is_laurent_entry(const json& e) { return e.is_array() && (e.empty() || e.front().is_object()); }

}  // namespace

GroupAlgebraMatrix group_matrix_from_json(const json& j, const GroupPtr& group, const std::string& where) {
  std::size_t rows = 0, cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, GroupRingElement>> cells;
  for_each_entry(j, where, rows, cols, [&](std::size_t r, std::size_t c, const json& e, const std::string& w) {
    cells.emplace_back(r, c, element_from_json(e, group, w));
  });
  GroupAlgebraMatrix m(group, rows, cols);
  for (auto& [r, c, e] : cells) m(r, c) = std::move(e);
  return m;
}

json to_json(const LaurentMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      json terms = json::array();
      for (const auto& [d, t] : m.terms())
        if (!t(r, c).is_zero()) terms.push_back({{"deg", d}, {"coeffs", to_json(t(r, c))}});
      row.push_back(terms);
    }
    entries.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

LaurentMatrix laurent_from_json(const json& j, const GroupPtr& group, const std::string& where) {
  std::size_t rows = 0, cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, int, GroupRingElement>> cells;
  for_each_entry(j, where, rows, cols, [&](std::size_t r, std::size_t c, const json& e, const std::string& w) {
    if (!is_laurent_entry(e)) {
      cells.emplace_back(r, c, 0, element_from_json(e, group, w));
      return;
    }
    for (std::size_t t = 0; t < e.size(); ++t) {
      const std::string wt = w + "[" + std::to_string(t) + "]";
      const long deg = integer(field(e[t], "deg", wt), wt + ".deg");
      cells.emplace_back(r, c, static_cast<int>(deg), element_from_json(field(e[t], "coeffs", wt), group, wt + ".coeffs"));
    }
  });
  LaurentMatrix m(group, rows, cols);
  for (auto& [r, c, d, e] : cells) {
    GroupAlgebraMatrix t(group, rows, cols);
    t(r, c) = e;
    m.add_term(d, t);
  }
  return m;
}

// ---------------------------------------------------------------- complexes

json to_json(const ChainComplex& c) {
  json out = {{"ring", to_string(c.ring)}, {"ranks", c.ranks}};
  if (c.group->order() > 1) out["group"] = to_json(*c.group);
  out["degrees"] = c.empty() ? json::array() : json::array({c.d_min, c.d_max()});
  json diffs = json::array();
  for (const auto& d : c.differentials) diffs.push_back(to_json(d));
  out["differentials"] = diffs;
  if (c.ring == RingTag::GaussianGroupRing) {
    json im = json::array();
    for (const auto& d : c.imag) im.push_back(to_json(d));
    out["differentials_imag"] = im;
  }
  return out;
}

ChainComplex complex_from_json(const json& j) {
  const std::string where = "complex";
  if (!j.is_object()) fail(where, "expected an object");
  GroupPtr group = j.contains("group") ? group_from_json(j["group"]) : FiniteGroup::trivial();
  RingTag ring = group->order() == 1 ? RingTag::Rational : RingTag::GroupRing;
  if (j.contains("ring")) {
    if (!j["ring"].is_string()) fail(where + ".ring", "expected a string");
    ring = ring_tag_from_string(j["ring"].get<std::string>());
  }
  const json& ranks_json = field(j, "ranks", where);
  if (!ranks_json.is_array()) fail(where + ".ranks", "expected an array");
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < ranks_json.size(); ++i) ranks.push_back(count(ranks_json[i], where + ".ranks[" + std::to_string(i) + "]"));
  int d_min = 0;
  if (j.contains("degrees")) {
    const json& deg = j["degrees"];
    if (!deg.is_array() || (deg.size() != 2 && !(deg.empty() && ranks.empty())))
      fail(where + ".degrees", "expected [d_min, d_max]");
    if (deg.size() == 2) {
      d_min = static_cast<int>(integer(deg[0], where + ".degrees[0]"));
      const long d_max = integer(deg[1], where + ".degrees[1]");
      if (d_max - d_min + 1 != static_cast<long>(ranks.size()))
        throw Error(ErrorCode::DimensionMismatch, "degree range does not match the number of ranks",
                    {{"degrees", deg}, {"ranks", ranks.size()}});
    }
  }
  auto read_list = [&](const char* key) {
    std::vector<LaurentMatrix> out;
    if (!j.contains(key)) return out;
    const json& list = j[key];
    if (!list.is_array()) fail(where + "." + key, "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      out.push_back(laurent_from_json(list[i], group, where + "." + key + "[" + std::to_string(i) + "]"));
    return out;
  };
  return ChainComplex::make(ring, group, d_min, std::move(ranks), read_list("differentials"), read_list("differentials_imag"));
}

json to_json(const ChainMap& h) {
  json comps = json::object();
  for (const auto& [j, m] : h.components) comps[std::to_string(j)] = to_json(m);
  return {{"complex", to_json(h.source)}, {"map", comps}};
}

namespace {

ChainMap map_from_json(const json& j, const ChainComplex& p, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by degree");
  ChainMap h{p, p, {}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    int degree = 0;
    try {
      degree = std::stoi(it.key());
    } catch (const std::logic_error&) {
      fail(where, "degree key '" + it.key() + "' is not an integer");
    }
    h.components.emplace(degree, laurent_from_json(it.value(), p.group, where + "." + it.key()));
  }
  return h;
}

}  // namespace

SelfMapInput self_map_from_json(const json& j) {
  const ChainComplex p = complex_from_json(field(j, "complex", "input"));
  SelfMapInput in{map_from_json(field(j, "map", "input"), p, "map"), std::nullopt};
  if (j.contains("inverse")) in.inverse = map_from_json(j["inverse"], p, "inverse");
  return in;
}

WallComplex wall_from_json(const json& j) {
  const std::string where = "wall";
  GroupPtr group = j.contains("group") ? group_from_json(j["group"]) : FiniteGroup::cyclic(2);
  GroupRingElement p = element_from_json(field(j, "p", where), group, where + ".p");
  std::optional<BigRational> ell;
  if (j.contains("ell")) ell = rational_from_json(j["ell"], where + ".ell");
  bool transpose = false;
  if (j.contains("transpose")) {
    if (!j["transpose"].is_boolean()) fail(where + ".transpose", "expected a boolean");
    transpose = j["transpose"].get<bool>();
  }
  return transpose ? wall_complex_transpose(p, ell) : wall_complex(p, ell);
}

// ---------------------------------------------------------------- reports

json to_json(const VirtualCharacter& chi) { return chi.strings(); }

json to_json(const HomologyReport& h) {
  json degrees = json::array();
  for (const auto& d : h.degrees) {
    json e = {{"degree", d.degree}, {"dim", d.dim}, {"chain_dim", d.chain_dim}, {"kernel_dim", d.kernel_dim},
              {"image_dim", d.image_dim}};
    if (d.character) e["character"] = to_json(*d.character);
    degrees.push_back(e);
  }
  return {{"ring", to_string(h.ring)}, {"degrees", degrees}, {"vanishes", h.vanishes()}};
}

json to_json(const ContractionCertificate& c) {
  json checks = json::object();
  for (const auto& [name, ok] : c.checks) checks[name] = ok;
  return {{"identity", c.identity},
          {"depth", c.depth},
          {"slack", c.slack},
          {"window", {c.window.first, c.window.second}},
          {"interior", {c.interior.first, c.interior.second}},
          {"overflow_band", {c.overflow_band.first, c.overflow_band.second}},
          {"verified", c.verified},
          {"checks", checks},
          {"k", c.k.str()},
          {"h_norm", c.h_norm},
          {"margin_k", c.margin_k ? json(*c.margin_k) : json(nullptr)},
          {"norm_bound", c.norm_bound},
          {"series_converges", c.series_converges}};
}

json to_json(const NovikovCertificate& c) {
  json out = {{"identity", "novikov"},
              {"side", c.side == NovikovSide::Z ? "z" : "z^-1"},
              {"depth", c.depth},
              {"remainder_exponent", c.remainder_exponent},
              {"verified", c.verified},
              {"remainder_zero", c.remainder_zero},
              {"series", to_json(c.series)}};
  if (c.factorization_verified) out["factorization_verified"] = *c.factorization_verified;
  return out;
}

json to_json(const GeometricInverse& g) {
  return {{"depth", g.depth},
          {"verified", g.verified},
          {"remainder_zero", g.remainder_zero},
          {"series", to_json(g.series)},
          {"remainder", to_json(g.remainder)}};
}

json to_json(const WallEulerReport& w) {
  json out = {{"depth", w.depth},
              {"chi_equivariant", to_json(w.character)},
              {"chi_equivariant_next_depth", to_json(w.character_next)},
              {"stable", w.stable},
              {"injective", w.injective},
              {"reduced_nonzero", !w.reduced_zero},
              {"matches_expected", w.matches_image_of_p}};
  if (w.image_of_p) out["image_of_p"] = to_json(*w.image_of_p);
  return out;
}

json to_json(const TransposeInverse& t) {
  return {{"depth", t.depth},
          {"inverse", to_json(t.inverse)},
          {"remainder", to_json(t.remainder)},
          {"exact_identity", t.exact_identity},
          {"window_identity", t.window_identity}};
}

json to_json(const SigmaScanReport& r) {
  json points = json::array();
  for (const auto& p : r.points)
    points.push_back({{"k", p.k}, {"sigma_min", p.sigma_min}, {"relative_change", p.relative_change}, {"stable", p.stable}});
  return {{"depths", r.depths}, {"stability_tolerance", r.stability_tolerance}, {"points", points}};
}

json to_json(const LambdaScanReport& r) {
  json points = json::array();
  for (const auto& p : r.points)
    points.push_back({{"lambda", {p.lambda.real(), p.lambda.imag()}},
                      {"homology_dims", p.homology_dims},
                      {"vanishes", p.vanishes},
                      {"distance_to_singular", finite_or_null(p.distance_to_singular)}});
  json poly = json::array();
  for (const auto& c : r.characteristic_polynomial) poly.push_back(c.str());
  json out = {{"radius", r.radius},
              {"samples", r.samples},
              {"relative_tolerance", r.relative_tolerance},
              {"degrees_from", r.d_min},
              {"characteristic_polynomial", poly},
              {"points", points}};
  if (r.singular_radii) {
    json radii = json::array();
    for (const auto& s : *r.singular_radii)
      radii.push_back({{"radius", s.radius}, {"exact", s.exact ? json(s.exact->str()) : json(nullptr)}});
    out["singular_radii"] = radii;
  }
  return out;
}

json to_json(const IndexReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json depths = json::array();
    for (const auto& d : p.depths)
      depths.push_back({{"depth", d.depth},
                        {"rows", d.rows},
                        {"cols", d.cols},
                        {"kernel", d.kernel},
                        {"cokernel", d.cokernel},
                        {"interior_kernel", d.interior_kernel},
                        {"interior_cokernel", d.interior_cokernel},
                        {"index", d.index},
                        {"overflow", d.overflow}});
    points.push_back({{"k", p.k},
                      {"regime", p.regime},
                      {"depths", depths},
                      {"stable", p.stable},
                      {"stabilized_index", p.stabilized_index ? json(*p.stabilized_index) : json(nullptr)},
                      {"expected", p.expected ? json(*p.expected) : json(nullptr)},
                      {"matches", p.matches ? json(*p.matches) : json(nullptr)}});
  }
  return {{"model", r.model},
          {"chi", r.chi},
          {"chi_lf", r.chi_lf},
          {"threshold", r.threshold},
          {"relative_tolerance", r.relative_tolerance},
          {"exploratory", r.exploratory},
          {"points", points}};
}

std::string sigma_csv(const SigmaScanReport& r) {
  std::ostringstream os;
  os << "k,depth,sigma_min,stable\n";
  for (const auto& p : r.points)
    for (std::size_t i = 0; i < r.depths.size(); ++i)
      os << number(p.k) << ',' << r.depths[i] << ',' << number(p.sigma_min[i]) << ',' << (p.stable ? 1 : 0) << '\n';
  return os.str();
}

std::string lambda_csv(const LambdaScanReport& r) {
  std::ostringstream os;
  os << "sample,re,im,vanishes,distance_to_singular,homology_dims\n";
  for (std::size_t s = 0; s < r.points.size(); ++s) {
    const auto& p = r.points[s];
    os << s << ',' << number(p.lambda.real()) << ',' << number(p.lambda.imag()) << ',' << (p.vanishes ? 1 : 0) << ','
       << number(p.distance_to_singular) << ',';
    for (std::size_t i = 0; i < p.homology_dims.size(); ++i) os << (i ? " " : "") << p.homology_dims[i];
    os << '\n';
  }
  return os.str();
}

std::string index_csv(const IndexReport& r) {
  std::ostringstream os;
  os << "k,regime,depth,kernel,cokernel,interior_kernel,interior_cokernel,index\n";
  for (const auto& p : r.points)
    for (const auto& d : p.depths)
      os << number(p.k) << ',' << p.regime << ',' << d.depth << ',' << d.kernel << ',' << d.cokernel << ','
         << d.interior_kernel << ',' << d.interior_cokernel << ',' << d.index << '\n';
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'", {{"path", path}});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what(), {{"path", path}});
  }
}

}  // namespace telescope::io
