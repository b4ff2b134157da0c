// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <iostream>
#include <sstream>
#include <string>

#include "cocycle_fixtures.hpp"
#include "gerbekit/cohomology.hpp"
#include "gerbekit/corpus.hpp"
#include "gerbekit/error.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

using namespace gerbekit;

namespace {

// Wall-clock limits per criterion, seconds.
constexpr double kLimit[] = {5, 10, 30, 30, 20, 5, 20, 20, 30, 60};

struct Outcome {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) notes << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

using Check = std::function<void(Outcome&)>;

TwoGroupoid cm_two(const CrossedModuleGpd& cm) { return cm_to_two_groupoid(cm).two; }

TwoGroupoid group_two(const FiniteGroup& g) { return as_two_groupoid(group_as_groupoid(g)); }

bool invertible(const FpMatrix& m) { return m.rows == m.cols && m.inverse().has_value(); }

// Projections T₁×T₂ → T_k of a product 2-groupoid (pair ids x·|T₂| + y).
TwoMorphism projection(const TwoGroupoid& t1, const TwoGroupoid& t2, int k) {
  TwoMorphism p;
  auto pick = [k](std::size_t id, std::size_t n2) { return static_cast<std::uint32_t>(k == 0 ? id / n2 : id % n2); };
  for (std::size_t i = 0; i < t1.num_objects() * t2.num_objects(); ++i) p.f0.push_back(pick(i, t2.num_objects()));
  for (std::size_t i = 0; i < t1.num_arrows() * t2.num_arrows(); ++i) p.f1.push_back(pick(i, t2.num_arrows()));
  for (std::size_t i = 0; i < t1.num_cells() * t2.num_cells(); ++i) p.f2.push_back(pick(i, t2.num_cells()));
  return p;
}

FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix m(a.p, a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) m.at(i, a.cols + j) = b.at(i, j);
  }
  return m;
}

void crossed_modules(Outcome& out) {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3), s3 = symmetric_group(3);
  const std::vector<std::pair<std::string, CrossedModuleGpd>> cms{
      {"Z/2→1", abelian_crossed_module(z2)},
      {"Z/3→1", abelian_crossed_module(z3)},
      {"Z/2→Aut(Z/2)", aut_crossed_module(z2, automorphism_group(z2))},
      {"S3→Aut(S3)", aut_crossed_module(s3, automorphism_group(s3))},
  };
  for (const auto& [name, cm] : cms) {
    out.require(check_crossed_module_roundtrip(cm).ok, name + " cm→2-groupoid→cm");
    const auto t = cm_two(cm);
    out.require(check_two_groupoid_roundtrip(t).ok, name + " 2-groupoid→cm→2-groupoid");
    try {
      t.check_axioms();
    } catch (const Error& e) {
      out.require(false, name + " interchange: " + e.what());
    }
  }
  out.notes << cms.size() << " crossed modules";
}

void nerves(Outcome& out) {
  std::vector<std::pair<std::string, TwoGroupoid>> corpus{
      {"point", point_two_groupoid()},
      {"Z/2", group_two(cyclic_group(2))},
      {"Z/3", group_two(cyclic_group(3))},
      {"Pair(3)", as_two_groupoid(pair_groupoid(3))},
      {"[Z/2→1]", cm_two(abelian_crossed_module(cyclic_group(2)))},
      {"[Z/3→1]", cm_two(abelian_crossed_module(cyclic_group(3)))},
      {"[Z/2→Aut(Z/2)]", cm_two(aut_crossed_module(cyclic_group(2), automorphism_group(cyclic_group(2))))},
  };
  for (const auto& [name, e] : corpus::extensions()) {
    corpus.emplace_back(name + " base", as_two_groupoid(e.base));
    corpus.emplace_back(name + " bundle apex", *extension_to_bundle(e).span.apex);
    if (auto cd = is_central(e)) corpus.emplace_back(name + " reduced apex", *central_reduction(e, *cd).span.apex);
  }
  // Nerves over the default enumeration cap are checked one dimension lower.
  std::size_t checked = 0, biggest = 0;
  std::vector<std::string> lowered;
  for (const auto& [name, t] : corpus) {
    try {
      std::size_t dim = 4;
      DeltaSet n = [&] {
        try {
          return DeltaSet::nerve(t, 4, kDefaultNerveCap);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CapExceeded) throw;
          dim = 3;
          lowered.push_back(name);
          return DeltaSet::nerve(t, 3, kDefaultNerveCap);
        }
      }();
      n.check_face_identities();
      for (std::uint32_t p : {2u, 3u}) FpComplex c(n, p);
      if (dim == 4) biggest = std::max(biggest, n.size(4));
      ++checked;
    } catch (const Error& e) {
      out.require(false, name + ": " + e.what());
    }
  }
  const auto n3 = DeltaSet::nerve(cm_two(abelian_crossed_module(cyclic_group(2))), 3);
  out.require(n3.size(3) == 8, "|N3[Z/2→1]| = " + std::to_string(n3.size(3)));
  out.notes << checked << " nerves (largest N4 = " << biggest << "), |N3[Z/2→1]| = " << n3.size(3);
  if (!lowered.empty()) {
    out.notes << "; dimension 3 only (N4 over " << kDefaultNerveCap << "):";
    for (const auto& n : lowered) out.notes << " " << n;
  }
}

void cohomology_oracle(Outcome& out) {
  for (auto [order, p] : {std::pair<std::size_t, std::uint32_t>{2, 2}, {3, 3}}) {
    const auto g = cyclic_group(order);
    const auto h = nerve_cohomology(group_two(g), 3, p);
    for (std::size_t q = 0; q <= 3; ++q) {
      const auto oracle = oracle::bar_cohomology_dim(g, q, p);
      out.require(h[q].dimension() == 1 && oracle == 1,
                  "H^" + std::to_string(q) + "(Z/" + std::to_string(order) + ") = " +
                      std::to_string(h[q].dimension()) + ", oracle " + std::to_string(oracle));
    }
  }
  for (std::uint32_t p : {2u, 3u}) {
    const auto pair = nerve_cohomology(as_two_groupoid(pair_groupoid(3)), 3, p);
    const auto pt = nerve_cohomology(point_two_groupoid(), 3, p);
    for (std::size_t q = 0; q <= 3; ++q)
      out.require(pair[q].dimension() == pt[q].dimension(), "Pair(3) vs point in degree " + std::to_string(q));
  }
  out.notes << "Z/2 over F2 and Z/3 over F3 match the bar oracle in degrees 0..3; Pair(3) ~ point";
}

void morita(Outcome& out) {
  std::vector<std::pair<std::string, Span>> legs;
  for (const auto& [name, e] : corpus::extensions()) {
    legs.emplace_back(name + " bundle", extension_to_bundle(e).span);
    if (auto cd = is_central(e)) legs.emplace_back(name + " reduction", central_reduction(e, *cd).span);
  }
  const auto point = make_cover(1, {{0}});
  legs.emplace_back("S3 cocycle", cocycle_to_bundle(fixtures::s3_point_cocycle(point), point).span);
  const auto e5 = make_cover(3, {{0, 1}, {1, 2}});
  legs.emplace_back("Z/3 cocycle on E5", cocycle_to_bundle(fixtures::constant_cocycle(cyclic_group(3), e5), e5).span);
  std::mt19937 rng(5);
  const auto z3 = cyclic_group(3);
  legs.emplace_back("twisted Z/3 cocycle on E5",
                    cocycle_to_bundle(fixtures::twisted_cocycle(z3, automorphism_group(z3), e5, rng), e5).span);

  std::size_t maps = 0;
  for (const auto& [name, s] : legs)
    for (std::uint32_t p : {2u, 3u}) {
      const auto apex = nerve_cohomology(*s.apex, 2, p);
      const auto base = nerve_cohomology(*s.base, 2, p);
      for (std::size_t q = 0; q <= 2; ++q) {
        out.require(invertible(induced_map(apex, base, s.left, q)),
                    name + " degree " + std::to_string(q) + " p=" + std::to_string(p));
        ++maps;
      }
    }
  out.notes << legs.size() << " left legs, " << maps << " induced maps invertible";
}

void round_trips(Outcome& out) {
  const std::vector<std::string> names{"z4_over_z2", "v4_over_z2", "s3_over_z2", "trivial_z3_e5"};
  for (const auto& name : names) {
    const auto e = corpus::extension(name);
    try {
      const auto iso = roundtrip_check(e);
      const auto bundle = extension_to_bundle(e);
      const auto back = bundle_to_extension(bundle.span, *bundle.target).extension;
      out.require(is_morphism(e.tilde, back.tilde, iso.tilde), name + " tilde map is a morphism");
      std::vector<bool> hit(back.tilde.num_arrows(), false);
      for (Arr x : iso.tilde.f1) hit[x] = true;
      out.require(iso.tilde.f1.size() == back.tilde.num_arrows() && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }),
                  name + " tilde map is bijective");
      for (Arr x = 0; x < e.tilde.num_arrows(); ++x)
        out.require(back.phi.f1[iso.tilde.f1[x]] == iso.base.f1[e.phi.f1[x]], name + " commutes with φ");
    } catch (const Error& err) {
      out.require(false, name + ": " + err.what());
    }
  }
  out.notes << names.size() << " extensions, explicit isomorphisms found";
}

void centrality(Outcome& out) {
  for (const auto& name : {"z4_over_z2", "trivial_z2", "trivial_z3_e5"}) {
    const auto e = corpus::extension(name);
    const auto cd = is_central(e);
    out.require(cd.has_value(), std::string(name) + " has a witness");
    if (cd) {
      try {
        validate_central_data(e, *cd);
      } catch (const Error& err) {
        out.require(false, std::string(name) + ": " + err.what());
      }
    }
  }
  out.require(!is_central(corpus::s3_over_z2()).has_value(), "S3 → Z/2 has no central section");
  out.notes << "witnesses for Z/4, trivial Z/2, trivial Z/3 on E5; none for S3";
}

void cc_dd(Outcome& out) {
  auto side = [&](const std::string& name, bool expect_zero) {
    const auto e = corpus::extension(name);
    const auto red = central_reduction(e, *is_central(e));
    const std::uint32_t p = 2;
    const auto chi = std::vector<std::uint32_t>{0, 1};
    const auto m = characteristic_map(red.span, 2, p);
    const auto can = canonical_class(red.extension.G, chi, p);
    const auto lhs = m.apply(can.coordinates);
    const auto rhs = extension_class(e, chi, p).coordinates;
    out.require(lhs == rhs, name + ": charmap·canonical = extension class");
    const bool zero = std::all_of(rhs.begin(), rhs.end(), [](auto v) { return v == 0; });
    out.require(zero == expect_zero, name + (expect_zero ? " class is zero" : " class is nonzero"));
    out.notes << name << " [";
    for (auto v : rhs) out.notes << v;
    out.notes << "] ";
  };
  side("z4_over_z2", false);
  side("v4_over_z2", true);
}

void naturality(Outcome& out) {
  const std::uint32_t p = 2;
  auto reduced = [](const std::string& name) {
    const auto e = corpus::extension(name);
    return central_reduction(e, *is_central(e)).span;
  };
  const auto b4 = reduced("z4_over_z2");
  const auto bv = reduced("v4_over_z2");

  // Pullback along (a) the two-point refinement of Z/2 and (b) Z/4 → Z/2.
  const auto base = b4.base;
  auto refinement = pullback_two_groupoid(*base, std::vector<Obj>{0, 0});
  auto refined = std::make_shared<const TwoGroupoid>(refinement.two);
  const Span f1 = make_span(refined, refined, base, identity_two_morphism(*refined), refinement.projection);
  auto z4 = std::make_shared<const TwoGroupoid>(group_two(cyclic_group(4)));
  TwoMorphism quotient{{0}, {0, 1, 0, 1}, {0, 1, 0, 1}};
  const Span f2 = span_of_morphism(z4, base, quotient);
  for (const auto& [fname, f] : {std::pair<std::string, Span>{"refinement", f1}, {"Z/4 → Z/2", f2}})
    for (const auto& [bname, b] : {std::pair<std::string, Span>{"Z/4 bundle", b4}, {"V4 bundle", bv}}) {
      const auto pulled = pullback_bundle(f, b);
      for (std::size_t q = 1; q <= 2; ++q)
        out.require(characteristic_map(pulled, q, p) == characteristic_map(f, q, p) * characteristic_map(b, q, p),
                    "pullback of " + bname + " along " + fname + " in degree " + std::to_string(q));
    }

  // Whitney sums: charmap(B₁⊕B₂)·pr_k* = charmap(B_k), and [pr₁*|pr₂*] is
  // invertible in degrees 1, 2 for these targets, so this pins the sum down.
  for (const auto& [name, pair] : {std::pair<std::string, std::pair<Span, Span>>{"Z/4⊕Z/4", {b4, b4}},
                                   {"Z/4⊕V4", {b4, bv}}}) {
    const auto& [s1, s2] = pair;
    const auto sum = whitney_sum(s1, s2);
    const auto& t1 = *s1.target;
    const auto& t2 = *s2.target;
    const auto prod = nerve_cohomology(*sum.target, 2, p);
    const auto h1 = nerve_cohomology(t1, 2, p);
    const auto h2 = nerve_cohomology(t2, 2, p);
    for (std::size_t q = 1; q <= 2; ++q) {
      const auto m = characteristic_map(sum, q, p);
      const auto pr1 = induced_map(prod, h1, projection(t1, t2, 0), q);
      const auto pr2 = induced_map(prod, h2, projection(t1, t2, 1), q);
      out.require(m * pr1 == characteristic_map(s1, q, p), name + " first factor, degree " + std::to_string(q));
      out.require(m * pr2 == characteristic_map(s2, q, p), name + " second factor, degree " + std::to_string(q));
      out.require(invertible(hconcat(pr1, pr2)), name + " Künneth in degree " + std::to_string(q));
    }
  }
  out.notes << "pullback naturality on 4 pairs, Whitney sums on 2 pairs, degrees 1..2";
}

void cocycle_validator(Outcome& out) {
  const auto cover = make_cover(1, {{0}, {0}, {0}});
  const auto c = fixtures::s3_point_cocycle(cover);
  out.require(validate_nonab(c, cover).ok(), "S3 cocycle accepted");

  std::mt19937 rng(1234);
  std::size_t rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto bad = c;
    auto it = std::next(bad.g.begin(), static_cast<std::ptrdiff_t>(rng() % bad.g.size()));
    it->second = static_cast<Elem>((it->second + 1 + rng() % 5) % 6);
    const auto r = validate_nonab(bad, cover);
    if (!r.ok() && (!r.identity1.witness.empty() || !r.identity2.witness.empty())) ++rejected;
  }
  out.require(rejected == 100, std::to_string(rejected) + "/100 perturbations rejected");

  const std::vector<FiniteGroup> groups{symmetric_group(3), cyclic_group(3)};
  std::vector<Automorphisms> auts;
  for (const auto& g : groups) auts.push_back(automorphism_group(g));
  const std::vector<Cover> covers{make_cover(1, {{0}, {0}}), make_cover(2, {{0, 1}, {1}})};
  std::size_t valid = 0, invalid = 0, agree = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto gi = static_cast<std::size_t>(trial % 2);
    const auto& cov = covers[static_cast<std::size_t>(trial / 2) % covers.size()];
    auto t = fixtures::twisted_cocycle(groups[gi], auts[gi], cov, rng);
    if (trial % 3 == 1) {
      auto it = std::next(t.g.begin(), static_cast<std::ptrdiff_t>(rng() % t.g.size()));
      it->second = static_cast<Elem>(rng() % groups[gi].order());
    } else if (trial % 3 == 2) {
      auto it = std::next(t.lambda.begin(), static_cast<std::ptrdiff_t>(rng() % t.lambda.size()));
      it->second = auts[gi].maps[rng() % auts[gi].maps.size()];
    }
    const bool accepted = validate_nonab(t, cov).ok();
    bool builds = true;
    try {
      cocycle_apex(t, cech_groupoid(cov.space_size, cov.opens)).check_axioms();
    } catch (const Error&) {
      builds = false;
    }
    agree += accepted == builds;
    ++(accepted ? valid : invalid);
  }
  out.require(agree == 120, std::to_string(agree) + "/120 fuzzed tables agree");
  out.require(valid > 0 && invalid > 0, "fuzz covers both directions");
  out.notes << "100/100 perturbations rejected; validator ⇔ apex axioms on 120 tables (" << valid << " valid, "
            << invalid << " invalid)";
}

std::vector<std::string> full_pipeline() {
  cli::Options opt;
  std::vector<std::string> out;
  auto keep = [&](const cli::Result& r) {
    out.push_back(io::canonical(r.report));
    for (const auto& [k, v] : r.artifacts) out.push_back(io::canonical(v));
    for (const auto& [k, v] : r.texts) out.push_back(v);
  };
  const auto z4 = cli::load_input("corpus:z4_over_z2");
  const auto bundle = cli::run_pipeline("ext2bundle", {z4}, opt);
  keep(bundle);
  keep(cli::run_pipeline("bundle2ext", {bundle.artifacts.at("bundle")}, opt));
  keep(cli::run_pipeline("roundtrip", {z4}, opt));
  keep(cli::run_pipeline("central", {z4}, opt));
  const auto red = cli::run_pipeline("reduce", {z4}, opt);
  keep(red);
  keep(cli::run_pipeline("class", {z4}, opt));
  keep(cli::run_pipeline("charmap", {red.artifacts.at("reduced_bundle")}, opt));
  keep(cli::run_pipeline("cohomology", {cli::load_input("cyclic:2")}, opt));
  keep(cli::run_pipeline("nerve", {cli::load_input("cyclic:3")}, opt));
  keep(cli::run_pipeline("whitney", {red.artifacts.at("reduced_bundle"), red.artifacts.at("reduced_bundle")}, opt));
  const auto cover = make_cover(1, {{0}, {0}});
  const auto cocycle = io::to_json(cover, fixtures::s3_point_cocycle(cover));
  keep(cli::run_pipeline("cocycle2bundle", {cocycle}, opt));
  keep(cli::run_pipeline("cocycle2ext", {cocycle}, opt));
  return out;
}

std::string slurp_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::recursive_directory_iterator(dir))
    if (f.is_regular_file()) files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    all += std::filesystem::relative(f, dir).string() + "\n";
    all.append(std::istreambuf_iterator<char>(in), {});
  }
  return all;
}

void determinism(Outcome& out) {
  const auto a = full_pipeline();
  const auto b = full_pipeline();
  out.require(a == b, "in-process runs differ");

  // Two separate CLI processes writing to fresh workspaces.
  const auto tmp = std::filesystem::temp_directory_path();
  std::string trees[2];
  for (int run = 0; run < 2; ++run) {
    const auto dir = tmp / ("gerbekit_accept_" + std::to_string(run));
    std::filesystem::remove_all(dir);
    for (const std::string step : {"ext2bundle corpus:z4_over_z2", "reduce corpus:z4_over_z2",
                                   "class corpus:z9_over_z3 --prime 3"}) {
      const auto cmd = std::string(GERBEKIT_CLI_PATH) + " run " + step + " --out " + dir.string() + " > /dev/null";
      out.require(std::system(cmd.c_str()) == 0, "CLI step " + step);
    }
    const auto cmd = std::string(GERBEKIT_CLI_PATH) + " run charmap " + (dir / "reduced_bundle.json").string() +
                     " --out " + (dir / "charmap").string() + " > /dev/null";
    out.require(std::system(cmd.c_str()) == 0, "CLI charmap rerun from artifact");
    trees[run] = slurp_dir(dir);
    std::filesystem::remove_all(dir);
  }
  out.require(!trees[0].empty() && trees[0] == trees[1], "CLI workspaces differ");
  out.notes << a.size() << " artifacts/reports identical in-process; CLI workspaces byte-identical ("
            << trees[0].size() << " bytes)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"crossed-module round trips and interchange", crossed_modules},
      {"nerve face identities, δ² = 0, |N3[Z/2→1]| = 8", nerves},
      {"cohomology matches the bar-resolution oracle", cohomology_oracle},
      {"Morita left legs invert cohomology in degrees 0..2", morita},
      {"extension → bundle → extension round trips", round_trips},
      {"centrality witnesses", centrality},
      {"characteristic map of the canonical class = extension class", cc_dd},
      {"naturality under pullback and Whitney sums", naturality},
      {"non-abelian cocycle validator", cocycle_validator},
      {"determinism of canonical artifacts", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < kLimit[i], "time limit");
    failures += !out.ok;
    std::printf("[%s] %2zu %s (%.2fs, limit %.0fs): %s\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                secs, kLimit[i], out.notes.str().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
