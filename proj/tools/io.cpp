#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gerbekit/error.hpp"

namespace gerbekit::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

std::uint32_t index_in(const json& v, std::size_t bound, const char* what) {
  const auto i = v.get<std::uint32_t>();
  if (i >= bound) fail(ErrorKind::ParseError, std::string(what) + " id " + std::to_string(i) + " out of range");
  return i;
}

std::map<std::string, Elem> name_index(const std::vector<std::string>& names) {
  std::map<std::string, Elem> out;
  for (Elem a = 0; a < names.size(); ++a)
    if (!out.emplace(names[a], a).second) fail(ErrorKind::ParseError, "duplicate element name " + names[a]);
  return out;
}

Elem element(const std::map<std::string, Elem>& index, const json& v) {
  const auto name = v.get<std::string>();
  auto it = index.find(name);
  if (it == index.end()) fail(ErrorKind::ParseError, "unknown element " + name);
  return it->second;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return std::uint64_t{a} << 32 | b; }

using PairTable = std::map<std::uint64_t, std::uint32_t>;

PairTable read_pairs(const json& rows, std::size_t bound, const char* what) {
  PairTable out;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != 3) fail(ErrorKind::ParseError, std::string(what) + " rows are [a, b, ab]");
    out[pair_key(index_in(r[0], bound, what), index_in(r[1], bound, what))] = index_in(r[2], bound, what);
  }
  return out;
}

std::uint32_t lookup(const PairTable& t, std::uint32_t a, std::uint32_t b, const char* what) {
  auto it = t.find(pair_key(a, b));
  if (it == t.end()) {
    fail(ErrorKind::MalformedTable,
         std::string(what) + " has no entry for (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  return it->second;
}

std::vector<std::uint32_t> id_list(const json& v, std::size_t bound, const char* what) {
  std::vector<std::uint32_t> out;
  for (const auto& x : v) out.push_back(index_in(x, bound, what));
  return out;
}

}  // namespace

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Group: return "group";
    case Kind::Groupoid: return "groupoid";
    case Kind::TwoGroupoid: return "two_groupoid";
    case Kind::CrossedModule: return "crossed_module";
    case Kind::Extension: return "extension";
    case Kind::Span: return "span";
    case Kind::NonAbCocycle: return "cocycle";
    case Kind::AbCocycle: return "abelian_cocycle";
  }
  return "?";
}

Kind detect_kind(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::ParseError, "document is not a JSON object");
  if (doc.contains("kind")) {
    const auto k = doc["kind"].get<std::string>();
    for (Kind c : {Kind::Group, Kind::Groupoid, Kind::TwoGroupoid, Kind::CrossedModule, Kind::Extension, Kind::Span,
                   Kind::NonAbCocycle, Kind::AbCocycle})
      if (k == to_string(c)) return c;
    fail(ErrorKind::ParseError, "unknown kind " + k);
  }
  if (doc.contains("elements")) return Kind::Group;
  if (doc.contains("two_arrows")) return Kind::TwoGroupoid;
  if (doc.contains("X") && doc.contains("Gamma")) return Kind::CrossedModule;
  if (doc.contains("tilde")) return Kind::Extension;
  if (doc.contains("apex")) return Kind::Span;
  if (doc.contains("cover")) return doc.contains("lambda") ? Kind::NonAbCocycle : Kind::AbCocycle;
  if (doc.contains("arrows")) return Kind::Groupoid;
  fail(ErrorKind::ParseError, "cannot tell what kind of object this is");
}

json to_json(const FiniteGroup& g) {
  json t = json::array();
  for (Elem a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < g.order(); ++b) row.push_back(g.name(g.mul(a, b)));
    t.push_back(std::move(row));
  }
  return {{"kind", "group"}, {"elements", g.names()}, {"table", std::move(t)}};
}

FiniteGroup group_from_json(const json& doc) {
  return guarded("group", [&] {
    const auto names = doc.at("elements").get<std::vector<std::string>>();
    const auto index = name_index(names);
    const auto& rows = doc.at("table");
    if (rows.size() != names.size()) fail(ErrorKind::MalformedTable, "table has the wrong number of rows");
    std::vector<std::vector<Elem>> table;
    for (const auto& r : rows) {
      std::vector<Elem> row;
      for (const auto& v : r) row.push_back(element(index, v));
      table.push_back(std::move(row));
    }
    return FiniteGroup::from_table(table, names);
  });
}

json to_json(const FiniteGroupoid& g) {
  json arrows = json::array(), compose = json::array(), identities = json::object();
  for (Arr a = 0; a < g.num_arrows(); ++a) {
    arrows.push_back({{"id", a}, {"src", g.src(a)}, {"tgt", g.tgt(a)}, {"name", g.arrow_names[a]}});
    for (Arr b : g.arrows_into(g.src(a))) compose.push_back({a, b, g.comp(a, b)});
  }
  for (Obj o = 0; o < g.num_objects(); ++o) identities[std::to_string(o)] = g.idn(o);
  return {{"kind", "groupoid"},
          {"objects", g.object_names},
          {"arrows", std::move(arrows)},
          {"compose", std::move(compose)},
          {"identities", std::move(identities)}};
}

FiniteGroupoid groupoid_from_json(const json& doc) {
  return guarded("groupoid", [&] {
    const auto objects = doc.at("objects").get<std::vector<std::string>>();
    const auto& arrows = doc.at("arrows");
    const std::size_t n = arrows.size();
    std::vector<Obj> src(n), tgt(n);
    std::vector<std::string> names(n);
    std::vector<bool> seen(n, false);
    for (const auto& a : arrows) {
      const auto id = index_in(a.at("id"), n, "arrow");
      if (seen[id]) fail(ErrorKind::ParseError, "arrow id " + std::to_string(id) + " repeated");
      seen[id] = true;
      src[id] = index_in(a.at("src"), objects.size(), "object");
      tgt[id] = index_in(a.at("tgt"), objects.size(), "object");
      names[id] = a.value("name", "a" + std::to_string(id));
    }
    const auto table = read_pairs(doc.at("compose"), n, "compose");
    auto g = FiniteGroupoid::build(objects.size(), src, tgt,
                                   [&](Arr a, Arr b) { return lookup(table, a, b, "compose"); });
    if (doc.contains("identities")) {
      for (const auto& [k, v] : doc["identities"].items()) {
        const auto o = static_cast<Obj>(std::stoul(k));
        if (o >= objects.size()) fail(ErrorKind::ParseError, "identity for unknown object " + k);
        if (v.get<Arr>() != g.idn(o)) {
          fail(ErrorKind::NoUnit, "declared identity " + v.dump() + " of object " + k + " is not a unit");
        }
      }
    }
    g.object_names = objects;
    g.arrow_names = std::move(names);
    return g;
  });
}

json to_json(const TwoGroupoid& t) {
  json doc = to_json(t.one());
  doc["kind"] = "two_groupoid";
  json cells = json::array(), vc = json::array(), hc = json::array();
  for (Cell c = 0; c < t.num_cells(); ++c) {
    cells.push_back({{"id", c}, {"l", t.l(c)}, {"u", t.u(c)}, {"name", t.cell_names()[c]}});
    for (Cell a : t.vert().arrows_into(t.l(c))) vc.push_back({c, a, t.vm(c, a)});
    for (Cell b : t.horiz().arrows_into(t.s(c))) hc.push_back({c, b, t.hm(c, b)});
  }
  doc["two_arrows"] = std::move(cells);
  doc["vcompose"] = std::move(vc);
  doc["hcompose"] = std::move(hc);
  return doc;
}

TwoGroupoid two_groupoid_from_json(const json& doc) {
  return guarded("2-groupoid", [&] {
    auto one = groupoid_from_json(doc);
    const auto& cells = doc.at("two_arrows");
    const std::size_t n = cells.size();
    std::vector<Arr> l(n), u(n);
    std::vector<std::string> names(n);
    for (const auto& c : cells) {
      const auto id = index_in(c.at("id"), n, "2-arrow");
      l[id] = index_in(c.at("l"), one.num_arrows(), "arrow");
      u[id] = index_in(c.at("u"), one.num_arrows(), "arrow");
      names[id] = c.value("name", "c" + std::to_string(id));
    }
    const auto vt = read_pairs(doc.at("vcompose"), n, "vcompose");
    const auto ht = read_pairs(doc.at("hcompose"), n, "hcompose");
    auto t = TwoGroupoid::build(
        std::move(one), l, u, [&](Cell b, Cell a) { return lookup(vt, b, a, "vcompose"); },
        [&](Cell a, Cell b) { return lookup(ht, a, b, "hcompose"); });
    t.cell_names() = std::move(names);
    return t;
  });
}

json to_json(const GroupoidMorphism& f) { return {{"objects", f.f0}, {"arrows", f.f1}}; }

GroupoidMorphism groupoid_morphism_from_json(const json& doc) {
  return guarded("morphism", [&] {
    return GroupoidMorphism{doc.at("objects").get<std::vector<Obj>>(), doc.at("arrows").get<std::vector<Arr>>()};
  });
}

json to_json(const TwoMorphism& f) { return {{"objects", f.f0}, {"arrows", f.f1}, {"cells", f.f2}}; }

TwoMorphism two_morphism_from_json(const json& doc) {
  return guarded("2-morphism", [&] {
    return TwoMorphism{doc.at("objects").get<std::vector<Obj>>(), doc.at("arrows").get<std::vector<Arr>>(),
                       doc.at("cells").get<std::vector<Cell>>()};
  });
}

json to_json(const CrossedModuleGpd& cm) {
  json action = json::array();
  for (Arr x = 0; x < cm.X.num_arrows(); ++x)
    for (Arr g = 0; g < cm.gamma.num_arrows(); ++g)
      if (cm.act(x, g) != kNone) action.push_back({x, g, cm.act(x, g)});
  return {{"kind", "crossed_module"},
          {"X", to_json(cm.X)},
          {"Gamma", to_json(cm.gamma)},
          {"rho", to_json(cm.rho)},
          {"action", std::move(action)}};
}

CrossedModuleGpd crossed_module_from_json(const json& doc) {
  return guarded("crossed module", [&] {
    CrossedModuleGpd cm;
    cm.X = groupoid_from_json(doc.at("X"));
    cm.gamma = groupoid_from_json(doc.at("Gamma"));
    cm.rho = groupoid_morphism_from_json(doc.at("rho"));
    const auto nx = cm.X.num_arrows(), ng = cm.gamma.num_arrows();
    cm.action.assign(nx * ng, kNone);
    for (const auto& r : doc.at("action")) {
      const auto x = index_in(r.at(0), nx, "X arrow");
      const auto g = index_in(r.at(1), ng, "Γ arrow");
      cm.action[x * ng + g] = index_in(r.at(2), nx, "X arrow");
    }
    cm.validate();
    return cm;
  });
}

json to_json(const GExtension& e) {
  return {{"kind", "extension"},        {"M", e.tilde.object_names}, {"G", to_json(e.G)},
          {"tilde", to_json(e.tilde)}, {"base", to_json(e.base)},  {"i", to_json(e.i)},
          {"phi", to_json(e.phi)}};
}

GExtension extension_from_json(const json& doc) {
  return guarded("extension", [&] {
    auto G = group_from_json(doc.at("G"));
    auto tilde = groupoid_from_json(doc.at("tilde"));
    auto base = groupoid_from_json(doc.at("base"));
    const auto m = doc.at("M").get<std::vector<std::string>>();
    if (m.size() != tilde.num_objects()) fail(ErrorKind::ParseError, "M does not match the objects of tilde");
    tilde.object_names = m;
    return make_extension(std::move(G), std::move(tilde), std::move(base), groupoid_morphism_from_json(doc.at("i")),
                          groupoid_morphism_from_json(doc.at("phi")));
  });
}

json to_json(const Span& s, const FiniteGroup* structure_group) {
  json doc = {{"kind", "span"},           {"base", to_json(*s.base)},   {"apex", to_json(*s.apex)},
              {"target", to_json(*s.target)}, {"left", to_json(s.left)}, {"right", to_json(s.right)}};
  if (structure_group) doc["structure_group"] = to_json(*structure_group);
  return doc;
}

SpanDoc span_from_json(const json& doc) {
  return guarded("span", [&] {
    SpanDoc out;
    auto base = std::make_shared<const TwoGroupoid>(two_groupoid_from_json(doc.at("base")));
    auto apex = std::make_shared<const TwoGroupoid>(two_groupoid_from_json(doc.at("apex")));
    auto target = std::make_shared<const TwoGroupoid>(two_groupoid_from_json(doc.at("target")));
    out.span = make_span(base, apex, target, two_morphism_from_json(doc.at("left")),
                         two_morphism_from_json(doc.at("right")));
    if (doc.contains("structure_group")) out.structure_group = group_from_json(doc["structure_group"]);
    return out;
  });
}

namespace {

json cover_json(const Cover& cover, const FiniteGroup& G, const std::map<Key4, Elem>& g) {
  std::vector<std::string> space;
  for (std::size_t x = 0; x < cover.space_size; ++x) space.push_back(std::to_string(x));
  json gs = json::array();
  for (const auto& [k, v] : g) gs.push_back({{"i", k[0]}, {"j", k[1]}, {"k", k[2]}, {"x", k[3]}, {"value", G.name(v)}});
  return {{"space", space}, {"cover", cover.opens}, {"group", to_json(G)}, {"g", std::move(gs)}};
}

}  // namespace

json to_json(const Cover& cover, const NonAbCocycle& c) {
  json doc = cover_json(cover, c.G, c.g);
  doc["kind"] = "cocycle";
  json lam = json::array();
  for (const auto& [k, table] : c.lambda) {
    json aut = json::array();
    for (Elem v : table) aut.push_back(c.G.name(v));
    lam.push_back({{"i", k[0]}, {"j", k[1]}, {"x", k[2]}, {"aut", std::move(aut)}});
  }
  doc["lambda"] = std::move(lam);
  return doc;
}

json to_json(const Cover& cover, const AbCocycle& c) {
  json doc = cover_json(cover, c.A, c.g);
  doc["kind"] = "abelian_cocycle";
  return doc;
}

CocycleDoc cocycle_from_json(const json& doc) {
  return guarded("cocycle", [&] {
    CocycleDoc out;
    out.space = doc.at("space").get<std::vector<std::string>>();
    out.cover = make_cover(out.space.size(), doc.at("cover").get<std::vector<std::vector<std::uint32_t>>>());
    const auto G = group_from_json(doc.at("group"));
    const auto index = name_index(G.names());
    std::map<Key4, Elem> g;
    for (const auto& r : doc.at("g")) {
      g[{r.at("i").get<std::uint32_t>(), r.at("j").get<std::uint32_t>(), r.at("k").get<std::uint32_t>(),
         r.at("x").get<std::uint32_t>()}] = element(index, r.at("value"));
    }
    if (doc.contains("lambda")) {
      NonAbCocycle c{G, {}, std::move(g)};
      for (const auto& r : doc["lambda"]) {
        std::vector<Elem> table;
        for (const auto& v : r.at("aut")) table.push_back(element(index, v));
        c.lambda[{r.at("i").get<std::uint32_t>(), r.at("j").get<std::uint32_t>(), r.at("x").get<std::uint32_t>()}] =
            std::move(table);
      }
      out.nonab = std::move(c);
    } else {
      out.ab = AbCocycle{G, std::move(g)};
    }
    return out;
  });
}

json to_json(const Cohomology& h) {
  json basis = json::array();
  for (const auto& z : h.basis()) {
    json sparse = json::array();
    for (std::size_t s = 0; s < z.size(); ++s)
      if (z.get(s) != 0) sparse.push_back({s, z.get(s)});
    basis.push_back(std::move(sparse));
  }
  return {{"degree", h.degree()}, {"prime", h.prime()}, {"dimension", h.dimension()}, {"basis", std::move(basis)}};
}

json to_json(const FpMatrix& m) {
  json rows = json::array(), entries = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) {
      row.push_back(m.at(i, j));
      if (m.at(i, j) != 0) entries.push_back({i, j, m.at(i, j)});
    }
    rows.push_back(std::move(row));
  }
  return {{"prime", m.p}, {"rows", m.rows}, {"cols", m.cols}, {"matrix", std::move(rows)}, {"entries", std::move(entries)}};
}

std::string coordinate_text(const FpMatrix& m) {
  std::ostringstream os;
  os << m.rows << " " << m.cols << " " << m.p << "\n";
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) os << i << " " << j << " " << m.at(i, j) << "\n";
  return os.str();
}

TwoGroupoid as_two_groupoid_doc(const json& doc) {
  switch (detect_kind(doc)) {
    case Kind::Group: return as_two_groupoid(group_as_groupoid(group_from_json(doc)));
    case Kind::Groupoid: return as_two_groupoid(groupoid_from_json(doc));
    case Kind::TwoGroupoid: return two_groupoid_from_json(doc);
    case Kind::CrossedModule: return cm_to_two_groupoid(crossed_module_from_json(doc)).two;
    default: fail(ErrorKind::ParseError, "expected a group, groupoid, 2-groupoid or crossed module");
  }
}

std::string canonical(const json& doc) { return doc.dump(); }

std::string content_hash(const json& doc) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical(doc)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, p.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& p, const json& doc) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + p.string());
    out << canonical(doc) << "\n";
  }
  std::filesystem::rename(tmp, p);
}

Workspace::Workspace(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_ / "objects");
}

std::string Workspace::put(const std::string& name, const json& doc) {
  const auto h = content_hash(doc);
  const auto path = root_ / "objects" / (h + ".json");
  if (!std::filesystem::exists(path)) write_file(path, doc);
  std::ofstream log(root_ / "refs", std::ios::app);
  log << name << "\t" << h << "\n";
  return h;
}

std::optional<json> Workspace::get(const std::string& name_or_hash) const {
  auto path = root_ / "objects" / (name_or_hash + ".json");
  if (std::filesystem::exists(path)) return read_file(path);
  std::ifstream log(root_ / "refs");
  std::string line, hash;
  while (std::getline(log, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos && line.substr(0, tab) == name_or_hash) hash = line.substr(tab + 1);
  }
  if (hash.empty()) return std::nullopt;
  return read_file(root_ / "objects" / (hash + ".json"));
}

}  // namespace gerbekit::io
