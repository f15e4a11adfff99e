#include "dualitykit/reports.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dualitykit/errors.hpp"

namespace dualitykit {

using nlohmann::json;

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  throw DomainError("unknown output format '" + name + "' (expected json, csv or text)");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> ring_dims(const FusionRing& ring) {
  if (!ring.dims().empty()) return ring.dims();
  return fp_dimensions(ring);
}

}  // namespace

json fusion_ring_json(const FusionRing& ring) {
  json j;
  j["schema"] = kSchemaVersion;
  j["ring"] = ring.name();
  j["labels"] = ring.labels();
  j["unit"] = ring.label(ring.unit());
  json duals = json::array();
  for (int x = 0; x < ring.rank(); ++x) duals.push_back(ring.label(ring.dual(x)));
  j["dual"] = duals;
  j["dims"] = ring_dims(ring);
  if (ring.graded()) {
    j["grades"] = ring.grades();
    j["window"] = ring.window() ? json(*ring.window()) : json(nullptr);
  }
  json rules = json::array();
  for (int x = 0; x < ring.rank(); ++x)
    for (int y = 0; y < ring.rank(); ++y)
      for (int z = 0; z < ring.rank(); ++z)
        if (const int n = ring.N(x, y, z)) rules.push_back(json::array({ring.label(x), ring.label(y), ring.label(z), n}));
  j["rules"] = rules;
  return j;
}

std::string fusion_ring_csv(const FusionRing& ring) {
  std::ostringstream os;
  os << "x,y,z,N\n";
  for (int x = 0; x < ring.rank(); ++x)
    for (int y = 0; y < ring.rank(); ++y)
      for (int z = 0; z < ring.rank(); ++z)
        if (const int n = ring.N(x, y, z))
          os << csv_field(ring.label(x)) << ',' << csv_field(ring.label(y)) << ',' << csv_field(ring.label(z)) << ','
             << n << '\n';
  return os.str();
}

std::string fusion_ring_text(const FusionRing& ring) {
  std::ostringstream os;
  const auto dims = ring_dims(ring);
  os << ring.name() << ": " << ring.rank() << " simples\n";
  for (int x = 0; x < ring.rank(); ++x) {
    os << "  " << ring.label(x) << "  d = " << num(dims[static_cast<std::size_t>(x)]);
    if (ring.graded()) os << "  grade " << ring.grade(x);
    os << '\n';
  }
  for (int x = 0; x < ring.rank(); ++x)
    for (int y = 0; y < ring.rank(); ++y) {
      const auto p = fuse(ring, x, y);
      if (std::holds_alternative<OutOfWindow>(p)) continue;
      os << ring.label(x) << " ⊗ " << ring.label(y) << " = ";
      const auto& terms = std::get<FusionTerms>(p);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " ⊕ ";
        if (terms[i].second > 1) os << terms[i].second;
        os << ring.label(terms[i].first);
      }
      os << '\n';
    }
  return os.str();
}

namespace {

struct CompositionRow {
  int gx, x, gy, y;
  std::vector<std::pair<std::string, double>> terms;
};

std::vector<CompositionRow> composition_rows(const ChannelCatalog& c) {
  std::vector<CompositionRow> rows;
  for (int gx = c.min_grade(); gx <= c.max_grade(); ++gx)
    for (int gy = c.min_grade(); gy <= c.max_grade(); ++gy) {
      if (!c.has_grade(gx + gy)) continue;
      const int nx = static_cast<int>(c.channels(gx).size());
      const int ny = static_cast<int>(c.channels(gy).size());
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
          CompositionRow row{gx, x, gy, y, {}};
          const auto r = c.compose(gx, x, gy, y);
          for (const auto& t : std::get<std::vector<CompositionTerm>>(r))
            row.terms.emplace_back(c.channels(gx + gy).at(static_cast<std::size_t>(t.index)).name, t.weight);
          rows.push_back(std::move(row));
        }
    }
  return rows;
}

}  // namespace

json channel_report_json(const ChannelCatalog& c) {
  json j;
  j["schema"] = kSchemaVersion;
  j["group"] = c.center().group().to_string();
  j["grades"] = json::array();
  json counts = json::array();
  for (int g = c.min_grade(); g <= c.max_grade(); ++g) {
    json grade;
    grade["grade"] = g;
    grade["count"] = c.channels(g).size();
    counts.push_back(c.channels(g).size());
    json chans = json::array();
    for (const auto& ch : c.channels(g)) chans.push_back({{"name", ch.name}, {"qdim", ch.qdim}, {"lambda", ch.lambda}});
    grade["channels"] = chans;
    j["grades"].push_back(grade);
  }
  j["counts"] = counts;
  json comp = json::array();
  for (const auto& row : composition_rows(c)) {
    json terms = json::array();
    for (const auto& [name, w] : row.terms) terms.push_back({{"channel", name}, {"weight", w}});
    comp.push_back({{"x", c.channels(row.gx)[static_cast<std::size_t>(row.x)].name},
                    {"y", c.channels(row.gy)[static_cast<std::size_t>(row.y)].name},
                    {"terms", terms}});
  }
  j["composition"] = comp;
  return j;
}

std::string channel_report_csv(const ChannelCatalog& c) {
  std::ostringstream os;
  os << "grade,index,name,qdim,lambda\n";
  for (int g = c.min_grade(); g <= c.max_grade(); ++g)
    for (const auto& ch : c.channels(g))
      os << g << ',' << ch.index << ',' << csv_field(ch.name) << ',' << num(ch.qdim) << ',' << num(ch.lambda) << '\n';
  return os.str();
}

std::string channel_report_text(const ChannelCatalog& c) {
  std::ostringstream os;
  os << "extreme channels for " << c.center().group().to_string() << '\n';
  for (int g = c.min_grade(); g <= c.max_grade(); ++g) {
    os << "grade " << g << ": " << c.channels(g).size() << " channel(s)";
    for (const auto& ch : c.channels(g)) os << "  " << ch.name << " (qdim " << num(ch.qdim) << ")";
    os << '\n';
  }
  os << "composition\n";
  for (const auto& row : composition_rows(c)) {
    os << "  " << c.channels(row.gx)[static_cast<std::size_t>(row.x)].name << " ∘ "
       << c.channels(row.gy)[static_cast<std::size_t>(row.y)].name << " =";
    for (std::size_t i = 0; i < row.terms.size(); ++i)
      os << (i ? " + " : " ") << num(row.terms[i].second) << " " << row.terms[i].first;
    os << '\n';
  }
  return os.str();
}

json identity_report_json(const IdentityReport& r) {
  json j{{"identity", r.identity}, {"L", r.L},       {"group", r.group},
         {"max_error", r.max_error}, {"fitted_scale", complex_json(r.fitted_scale)}, {"pass", r.pass}};
  if (!r.required) j["required"] = false;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

json verify_report_json(const std::vector<IdentityReport>& reports) {
  json j;
  j["schema"] = kSchemaVersion;
  j["pass"] = all_required_pass(reports);
  j["results"] = json::array();
  for (const auto& r : reports) j["results"].push_back(identity_report_json(r));
  return j;
}

std::string verify_report_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  os << "identity,L,group,max_error,scale_re,scale_im,pass,required,detail\n";
  for (const auto& r : reports)
    os << csv_field(r.identity) << ',' << r.L << ',' << csv_field(r.group) << ',' << num(r.max_error) << ','
       << num(r.fitted_scale.real()) << ',' << num(r.fitted_scale.imag()) << ',' << (r.pass ? "true" : "false") << ','
       << (r.required ? "true" : "false") << ',' << csv_field(r.detail) << '\n';
  return os.str();
}

std::string verify_report_text(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass ? "PASS " : (r.required ? "FAIL " : "---- ")) << r.group << " L=" << r.L << "  " << r.identity
       << "  err=" << num(r.max_error);
    if (r.fitted_scale != cplx(0.0)) os << "  c=" << num(r.fitted_scale.real()) << (r.fitted_scale.imag() < 0 ? "" : "+")
                                        << num(r.fitted_scale.imag()) << "i";
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    os << '\n';
  }
  os << (all_required_pass(reports) ? "all required identities hold\n" : "verification failed\n");
  return os.str();
}

WeakIntegralityReport weak_integrality(const FusionRing& ring, double tol) {
  WeakIntegralityReport r;
  r.ring = ring.name();
  const auto dims = ring_dims(ring);
  r.weakly_integral = true;
  for (int x = 0; x < ring.rank(); ++x) {
    const double d = dims[static_cast<std::size_t>(x)];
    WeakIntegralityEntry e{ring.label(x), d, d * d, std::abs(d * d - std::round(d * d))};
    r.weakly_integral = r.weakly_integral && e.distance <= tol && std::round(d * d) >= 1;
    r.entries.push_back(e);
  }
  return r;
}

json weak_integrality_json(const WeakIntegralityReport& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["ring"] = r.ring;
  j["weakly_integral"] = r.weakly_integral;
  j["simples"] = json::array();
  for (const auto& e : r.entries)
    j["simples"].push_back({{"label", e.label}, {"d", e.dim}, {"d2", e.dim_squared}, {"distance", e.distance}});
  return j;
}

std::string weak_integrality_csv(const WeakIntegralityReport& r) {
  std::ostringstream os;
  os << "label,d,d2,distance\n";
  for (const auto& e : r.entries)
    os << csv_field(e.label) << ',' << num(e.dim) << ',' << num(e.dim_squared) << ',' << num(e.distance) << '\n';
  return os.str();
}

std::string weak_integrality_text(const WeakIntegralityReport& r) {
  std::ostringstream os;
  os << r.ring << '\n';
  for (const auto& e : r.entries)
    os << "  " << e.label << "  d^2 = " << num(e.dim_squared) << "  (off by " << num(e.distance) << ")\n";
  os << (r.weakly_integral ? "weakly integral\n" : "not weakly integral\n");
  return os.str();
}

FusionRing parse_ring_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("ring file: ") + e.what());
  }
  try {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const int r = static_cast<int>(labels.size());
    if (r == 0) throw DomainError("ring file: no labels");
    auto index = [&](const std::string& s) {
      for (int i = 0; i < r; ++i)
        if (labels[static_cast<std::size_t>(i)] == s) return i;
      throw DomainError("ring file: unknown label '" + s + "'");
    };
    const int unit = index(j.value("unit", labels.front()));
    std::vector<int> tensor(static_cast<std::size_t>(r) * r * r, 0);
    for (const auto& rule : j.at("rules")) {
      if (!rule.is_array() || rule.size() != 4) throw DomainError("ring file: rules are [x, y, z, N]");
      const int n = rule[3].get<int>();
      if (n < 0) throw DomainError("ring file: negative multiplicity");
      const auto at = (static_cast<std::size_t>(index(rule[0])) * r + static_cast<std::size_t>(index(rule[1]))) * r +
                      static_cast<std::size_t>(index(rule[2]));
      tensor[at] = n;
    }
    std::vector<int> dual(static_cast<std::size_t>(r), -1);
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < r; ++y)
        if (tensor[(static_cast<std::size_t>(x) * r + static_cast<std::size_t>(y)) * r + static_cast<std::size_t>(unit)] > 0) {
          if (dual[static_cast<std::size_t>(x)] != -1) throw DomainError("ring file: " + labels[static_cast<std::size_t>(x)] + " has two duals");
          dual[static_cast<std::size_t>(x)] = y;
        }
    for (int x = 0; x < r; ++x)
      if (dual[static_cast<std::size_t>(x)] == -1) throw DomainError("ring file: " + labels[static_cast<std::size_t>(x)] + " has no dual");
    return FusionRing(j.value("name", std::string("ring")), labels, unit, dual, tensor);
  } catch (const json::exception& e) {
    throw DomainError(std::string("ring file: ") + e.what());
  }
}

FusionRing load_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open ring file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ring_json(ss.str());
}

std::string golden_key(const IdentityReport& r) { return r.group + "/L=" + std::to_string(r.L) + "/" + r.identity; }

GoldenScales read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open golden file " + path);
  GoldenScales out;
  try {
    const json j = json::parse(in);
    for (const auto& [key, v] : j.at("scales").items()) out[key] = cplx(v.at(0).get<double>(), v.at(1).get<double>());
  } catch (const json::exception& e) {
    throw DomainError("golden file " + path + ": " + e.what());
  }
  return out;
}

void write_golden(const std::string& path, const GoldenScales& scales) {
  json j;
  j["schema"] = kSchemaVersion;
  j["scales"] = json::object();
  for (const auto& [key, v] : scales) j["scales"][key] = complex_json(v);
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write golden file " + path);
  out << j.dump(2) << '\n';
}

}  // namespace dualitykit
