#include "pipeline.hpp"

#include <functional>

#include "gerbekit/corpus.hpp"
#include "gerbekit/error.hpp"

namespace gerbekit::cli {

namespace {

using Handler = std::function<void(const std::vector<json>&, const Options&, Result&)>;

struct Pipeline {
  std::string name;
  std::string construction;
  std::size_t arity;
  Handler run;
};

json sizes(const TwoGroupoid& t) {
  return {{"objects", t.num_objects()}, {"arrows", t.num_arrows()}, {"cells", t.num_cells()}};
}

json sizes(const GExtension& e) {
  return {{"objects", e.num_objects()},
          {"group_order", e.G.order()},
          {"tilde_arrows", e.tilde.num_arrows()},
          {"base_arrows", e.base.num_arrows()}};
}

json verdict(const Verdict& v) {
  json out = {{"ok", v.ok}};
  if (!v.ok) out["witness"] = v.witness;
  return out;
}

GExtension extension_of(const json& doc) {
  if (io::detect_kind(doc) != io::Kind::Extension) fail(ErrorKind::ParseError, "expected an extension");
  return io::extension_from_json(doc);
}

io::SpanDoc span_of(const json& doc) {
  if (io::detect_kind(doc) != io::Kind::Span) fail(ErrorKind::ParseError, "expected a span");
  return io::span_from_json(doc);
}

io::CocycleDoc cocycle_of(const json& doc) {
  const auto k = io::detect_kind(doc);
  if (k != io::Kind::NonAbCocycle && k != io::Kind::AbCocycle) fail(ErrorKind::ParseError, "expected a cocycle");
  return io::cocycle_from_json(doc);
}

std::vector<std::uint32_t> pick_character(const FiniteGroup& g, const Options& opt) {
  require_prime(opt.prime);
  auto chars = characters(g, opt.prime);
  if (opt.character >= chars.size()) {
    fail(ErrorKind::NotACharacter, "there are only " + std::to_string(chars.size()) + " characters into Z/" +
                                       std::to_string(opt.prime));
  }
  return chars[opt.character];
}

void ext2bundle(const std::vector<json>& in, const Options&, Result& r) {
  const auto e = extension_of(in[0]);
  const auto b = extension_to_bundle(e);
  r.artifacts["bundle"] = io::to_json(b.span, &e.G);
  r.report["apex"] = sizes(*b.span.apex);
  r.report["left_leg_morita"] = verdict(is_morita_2(*b.span.apex, *b.span.base, b.span.left));
}

void bundle2ext(const std::vector<json>& in, const Options&, Result& r) {
  const auto s = span_of(in[0]);
  if (!s.structure_group) fail(ErrorKind::ParseError, "the span does not record its structure group G");
  const auto target = make_aut_target(*s.structure_group);
  const auto be = bundle_to_extension(s.span, *target);
  r.artifacts["extension"] = io::to_json(be.extension);
  r.report["extension"] = sizes(be.extension);
  r.report["base_morita"] = verdict(is_morita_1(be.extension.base, s.span.base->one(), be.to_base));
}

void roundtrip(const std::vector<json>& in, const Options&, Result& r) {
  const auto e = extension_of(in[0]);
  const auto iso = roundtrip_check(e);
  r.report["isomorphic"] = true;
  r.report["tilde_map"] = io::to_json(iso.tilde);
  r.report["base_map"] = io::to_json(iso.base);
}

void central(const std::vector<json>& in, const Options&, Result& r) {
  const auto e = extension_of(in[0]);
  const auto cd = is_central(e);
  r.report["central"] = cd.has_value();
  if (cd) {
    r.report["center_order"] = cd->center.group.order();
    r.report["section"] = cd->sigma.f1;
  }
}

void reduce(const std::vector<json>& in, const Options& opt, Result& r) {
  const auto e = extension_of(in[0]);
  const auto cd = is_central(e);
  if (!cd) fail(ErrorKind::NotCentral, "no section of Γ̃/Z(G) → Γ commutes with G");
  const auto red = central_reduction(e, *cd);
  r.artifacts["reduced_extension"] = io::to_json(red.extension);
  r.artifacts["reduced_bundle"] = io::to_json(red.span);
  r.report["center_order"] = red.extension.G.order();

  // The reduced bundle pushed along Z(G) → Aut(G) against the original bundle.
  const auto b = extension_to_bundle(e, red.target);
  const auto lifted = make_span(red.span.base, red.span.apex, red.target->two, red.span.left,
                                compose(red.inclusion, red.span.right));
  const auto cmp = compare_spans(lifted, b.span, opt.budget);
  r.report["equivalent_to_bundle"] = to_string(cmp.result);
}

void ext_class(const std::vector<json>& in, const Options& opt, Result& r) {
  const auto e = extension_of(in[0]);
  const auto chi = pick_character(e.G, opt);
  const auto c = extension_class(e, chi, opt.prime);
  r.report["prime"] = opt.prime;
  r.report["character"] = chi;
  r.report["coordinates"] = c.coordinates;
  r.report["zero"] = c.is_zero();
}

void nerve(const std::vector<json>& in, const Options& opt, Result& r) {
  const auto t = io::as_two_groupoid_doc(in[0]);
  const auto n = DeltaSet::nerve(t, opt.max_dim);
  n.check_face_identities();
  json levels = json::array();
  for (std::size_t q = 0; q <= n.max_dim(); ++q) levels.push_back(n.size(q));
  r.report["sizes"] = std::move(levels);
  r.report["face_identities"] = true;
}

void cohomology(const std::vector<json>& in, const Options& opt, Result& r) {
  require_prime(opt.prime);
  const auto t = io::as_two_groupoid_doc(in[0]);
  const auto h = nerve_cohomology(t, opt.degree, opt.prime);
  r.report.update(io::to_json(h[opt.degree]));
}

void charmap(const std::vector<json>& in, const Options& opt, Result& r) {
  require_prime(opt.prime);
  const auto s = span_of(in[0]);
  const auto m = characteristic_map(s.span, opt.degree, opt.prime);
  r.report["degree"] = opt.degree;
  r.report.update(io::to_json(m));
  r.texts["charmap.txt"] = io::coordinate_text(m);
}

void cocycle2bundle(const std::vector<json>& in, const Options&, Result& r) {
  const auto c = cocycle_of(in[0]);
  if (!c.nonab) fail(ErrorKind::ParseError, "cocycle2bundle needs a non-abelian cocycle (with lambda)");
  const auto report = validate_nonab(*c.nonab, c.cover);
  r.report["validation"] = {{"tables", verdict(report.tables)},
                            {"identity1", verdict(report.identity1)},
                            {"identity2", verdict(report.identity2)}};
  const auto b = cocycle_to_bundle(*c.nonab, c.cover);
  r.artifacts["bundle"] = io::to_json(b.span, &c.nonab->G);
  r.report["apex"] = sizes(*b.span.apex);
  r.report["left_leg_morita"] = verdict(is_morita_2(*b.span.apex, *b.span.base, b.span.left));
}

void cocycle2ext(const std::vector<json>& in, const Options&, Result& r) {
  const auto c = cocycle_of(in[0]);
  if (c.ab) {
    const auto ce = ab_cocycle_to_central_extension(*c.ab, c.cover);
    r.artifacts["extension"] = io::to_json(ce.extension);
    r.report["extension"] = sizes(ce.extension);
    r.report["central"] = is_central(ce.extension).has_value();
    return;
  }
  const auto b = cocycle_to_bundle(*c.nonab, c.cover);
  const auto be = bundle_to_extension(b.span, *b.target);
  r.artifacts["extension"] = io::to_json(be.extension);
  r.report["extension"] = sizes(be.extension);
}

void whitney(const std::vector<json>& in, const Options&, Result& r) {
  const auto a = span_of(in[0]), b = span_of(in[1]);
  const auto s = whitney_sum(a.span, b.span);
  r.artifacts["bundle"] = io::to_json(s);
  r.report["apex"] = sizes(*s.apex);
  r.report["target"] = sizes(*s.target);
}

void pullback(const std::vector<json>& in, const Options&, Result& r) {
  const auto f = span_of(in[0]), b = span_of(in[1]);
  const auto s = pullback_bundle(f.span, b.span);
  r.artifacts["bundle"] = io::to_json(s, b.structure_group ? &*b.structure_group : nullptr);
  r.report["apex"] = sizes(*s.apex);
}

const std::vector<Pipeline>& pipelines() {
  static const std::vector<Pipeline> all{
      {"ext2bundle", "G-extension to [G → Aut(G)]-bundle", 1, ext2bundle},
      {"bundle2ext", "[G → Aut(G)]-bundle to G-extension", 1, bundle2ext},
      {"roundtrip", "extension → bundle → extension isomorphism", 1, roundtrip},
      {"central", "centrality section search", 1, central},
      {"reduce", "band reduction to [Z(G) → 1]", 1, reduce},
      {"class", "extension class of a central extension", 1, ext_class},
      {"nerve", "geometric nerve of a 2-groupoid", 1, nerve},
      {"cohomology", "nerve cohomology over F_p", 1, cohomology},
      {"charmap", "characteristic map of a bundle", 1, charmap},
      {"cocycle2bundle", "non-abelian 2-cocycle to [G → Aut(G)]-bundle", 1, cocycle2bundle},
      {"cocycle2ext", "Čech 2-cocycle to extension of the Čech groupoid", 1, cocycle2ext},
      {"whitney", "Whitney sum of bundles", 2, whitney},
      {"pullback", "pullback of a bundle along a generalized morphism", 2, pullback},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : pipelines()) out.push_back(p.name);
    return out;
  }();
  return names;
}

Result run_pipeline(const std::string& name, const std::vector<json>& inputs, const Options& opt) {
  for (const auto& p : pipelines()) {
    if (p.name != name) continue;
    if (inputs.size() != p.arity) {
      fail(ErrorKind::ParseError, name + " takes " + std::to_string(p.arity) + " input(s), got " +
                                      std::to_string(inputs.size()));
    }
    Result r;
    r.report = {{"pipeline", name}, {"construction", p.construction}};
    json hashes = json::array();
    for (const auto& in : inputs) hashes.push_back(io::content_hash(in));
    r.report["inputs"] = std::move(hashes);
    p.run(inputs, opt, r);
    json outputs = json::object();
    for (const auto& [k, v] : r.artifacts) outputs[k] = io::content_hash(v);
    r.report["outputs"] = std::move(outputs);
    return r;
  }
  fail(ErrorKind::ParseError, "unknown pipeline " + name);
}

json validate_document(const json& doc) {
  const auto kind = io::detect_kind(doc);
  json out = {{"kind", io::to_string(kind)}};
  switch (kind) {
    case io::Kind::Group:
      out["order"] = io::group_from_json(doc).order();
      break;
    case io::Kind::Groupoid: {
      const auto g = io::groupoid_from_json(doc);
      g.check_axioms();
      out["objects"] = g.num_objects();
      out["arrows"] = g.num_arrows();
      break;
    }
    case io::Kind::TwoGroupoid: {
      const auto t = io::two_groupoid_from_json(doc);
      t.check_axioms();
      out.update(sizes(t));
      break;
    }
    case io::Kind::CrossedModule: {
      const auto cm = io::crossed_module_from_json(doc);
      if (auto v = check_crossed_module_roundtrip(cm); !v) fail(ErrorKind::InvariantViolation, v.witness);
      cm_to_two_groupoid(cm).two.check_axioms();
      break;
    }
    case io::Kind::Extension: {
      const auto e = io::extension_from_json(doc);
      e.tilde.check_axioms();
      out.update(sizes(e));
      break;
    }
    case io::Kind::Span: {
      const auto s = io::span_from_json(doc);
      s.span.apex->check_axioms();
      out["apex"] = sizes(*s.span.apex);
      break;
    }
    case io::Kind::NonAbCocycle: {
      const auto c = io::cocycle_from_json(doc);
      const auto report = validate_nonab(*c.nonab, c.cover);
      if (!report.ok()) fail(ErrorKind::InvalidCocycle, report.summary());
      break;
    }
    case io::Kind::AbCocycle: {
      const auto c = io::cocycle_from_json(doc);
      if (auto v = validate_ab(*c.ab, c.cover); !v) fail(ErrorKind::InvalidCocycle, v.witness);
      break;
    }
  }
  out["valid"] = true;
  return out;
}

json load_input(const std::string& arg) {
  auto after = [&](const std::string& prefix) -> std::optional<std::string> {
    if (arg.rfind(prefix, 0) == 0) return arg.substr(prefix.size());
    return std::nullopt;
  };
  auto number = [](const std::string& s) {
    try {
      return std::stoul(s);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "not a number: " + s);
    }
  };
  if (auto n = after("corpus:")) return io::to_json(corpus::extension(*n));
  if (auto n = after("cyclic:")) return io::to_json(cyclic_group(number(*n)));
  if (auto n = after("symmetric:")) return io::to_json(symmetric_group(number(*n)));
  return io::read_file(arg);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return 2;
    case ErrorKind::CapExceeded:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::DimensionCapExceeded: return 3;
    default: return 1;
  }
}

}  // namespace gerbekit::cli
