#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "hts/basis.hpp"
#include "hts/cli_io.hpp"
#include "hts/dimension.hpp"
#include "hts/error.hpp"
#include "hts/sampling.hpp"

namespace hts {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

std::vector<Coord> parse_list(const std::string& text) {
  std::vector<Coord> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

std::pair<Coord, Coord> parse_point(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 2) throw Error(ErrorCode::SyntaxError, "point \"" + text + "\" is not x,y");
  return {v[0], v[1]};
}

const char* yes(bool b) { return b ? "true" : "false"; }

ExtensionPairing pairing_for(const MeshDocument& doc, const std::string& flag) {
  return flag.empty() ? doc.pairing : parse_pairing(flag);
}

// The mesh conformality vectors live on: the document's mesh, extended unless
// it already is.
TMesh working_mesh(const MeshDocument& doc, ExtensionPairing pairing) {
  TMesh mesh = mesh_of(doc);
  if (mesh.extension_depth() > 0) return mesh;
  return extend(mesh, doc.m, doc.n, ExtensionOptions{pairing, std::nullopt});
}

void print_census(const Census& c, std::ostream& out) {
  out << "V+: " << c.Vplus << '\n';
  out << "E_H: " << c.E_H << '\n';
  out << "E_V: " << c.E_V << '\n';
  out << "delta: " << c.delta << '\n';
  out << "delta_per_level:";
  for (int d : c.delta_per_level) out << ' ' << d;
  out << '\n';
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
};

int cmd_gen(Ctx& c, int m, int n, std::vector<int> size, const std::string& xs, const std::string& ys,
            const std::vector<std::string>& levels, const std::string& pairing, std::optional<unsigned long long> seed,
            int max_levels, const std::string& output) {
  HierSpec spec;
  if (seed) {
    std::mt19937_64 rng(*seed);
    SpecSampler sampler;
    sampler.m = m;
    sampler.n = n;
    sampler.max_levels = max_levels;
    if (!size.empty()) {
      sampler.max_p = size[0];
      sampler.max_q = size[1];
    }
    spec = random_spec(rng, sampler);
  } else {
    if (size.size() != 2) throw Error(ErrorCode::InvalidArgument, "--size p q is required without --seed");
    spec.m = m;
    spec.n = n;
    spec.p = size[0];
    spec.q = size[1];
    if (!xs.empty()) spec.x_coords = parse_list(xs);
    if (!ys.empty()) spec.y_coords = parse_list(ys);
    for (const auto& level : levels) {
      std::vector<Address> row;
      std::istringstream is(level);
      for (std::string a; is >> a;) row.push_back(parse_address(a));
      spec.script.push_back(std::move(row));
    }
  }
  const MeshDocument doc = document_of(spec, pairing.empty() ? ExtensionPairing::VerticalM : parse_pairing(pairing));
  mesh_of(doc);
  write_output(output, serialize(doc), c.out);
  return 0;
}

int cmd_extend(Ctx& c, const std::string& path, const std::string& pairing, const std::string& output) {
  const MeshDocument doc = parse_mesh(read_file(path));
  const ExtensionPairing p = pairing_for(doc, pairing);
  const TMesh ext = extend(mesh_of(doc), doc.m, doc.n, ExtensionOptions{p, std::nullopt});
  write_output(output, serialize(document_of(ext, doc.m, doc.n, p)), c.out);
  return 0;
}

int cmd_dim(Ctx& c, const std::string& path, bool formula_only, bool oracle_only, const std::string& pairing,
            bool timings) {
  if (formula_only && oracle_only) throw Error(ErrorCode::InvalidArgument, "--formula-only and --oracle-only conflict");
  const MeshDocument doc = parse_mesh(read_file(path));
  DimensionOptions opts;
  opts.formula = !oracle_only;
  opts.conformality = !formula_only;
  opts.cellwise = !formula_only;
  opts.extension.pairing = pairing_for(doc, pairing);
  const DimensionReport r = doc.hierarchical() ? dim_spline_space(hierarchy_of(doc), opts)
                                               : dim_spline_space(mesh_of(doc), doc.m, doc.n, opts);
  auto& out = c.out;
  out << "m: " << r.m << '\n';
  out << "n: " << r.n << '\n';
  out << "pairing: " << to_string(r.pairing) << '\n';
  out << "in_class: " << yes(r.in_class) << '\n';
  if (r.census) print_census(*r.census, out);
  auto value = [&](const char* key, const std::optional<long long>& v) {
    if (v) out << key << ": " << *v << '\n';
  };
  value("formula", r.formula);
  value("conformality", r.conformality);
  value("cellwise", r.cellwise);
  out << "agree: " << yes(r.agree()) << '\n';
  if (timings) {
    out << "formula_ms: " << r.formula_ms << '\n';
    out << "conformality_ms: " << r.conformality_ms << '\n';
    out << "cellwise_ms: " << r.cellwise_ms << '\n';
  }
  const long long shown = r.formula ? *r.formula : r.conformality ? *r.conformality : *r.cellwise;
  const int paths = !!r.formula + !!r.conformality + !!r.cellwise;
  if (r.agree()) {
    out << "# dim = " << shown << " (" << paths << (paths == 1 ? " path)" : " paths agree)") << '\n';
    return 0;
  }
  out << "# dimension paths disagree\n";
  return 1;
}

int cmd_basis(Ctx& c, const std::string& path, const std::string& output, const std::string& tie,
              const std::string& policy, const std::string& pairing, bool list) {
  const MeshDocument doc = parse_mesh(read_file(path));
  if (tie != "least" && tie != "greatest") throw Error(ErrorCode::InvalidArgument, "--tie must be least or greatest");
  const Hierarchy h = hierarchy_of(doc);
  const ExtensionPairing p = pairing_for(doc, pairing);
  const TMesh ext = extend(h.mesh, doc.m, doc.n, ExtensionOptions{p, std::nullopt});
  const Census cen = census(ext, h.forest);
  const long long expected = dim_formula(cen, doc.m, doc.n);
  const auto order = order_ledges(ext, h.forest, doc.m, doc.n, tie == "least" ? TieBreak::Least : TieBreak::Greatest,
                                  parse_trivial_policy(policy));
  std::vector<BasisFn> fns;
  try {
    fns = construct_basis(order);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnhandledConfiguration) throw;
    c.err << "error: " << e.what() << '\n';
    return 1;
  }
  const auto rep = verify_basis(fns, ext, doc.m, doc.n, expected);
  if (!output.empty()) write_output(output, serialize(document_of(fns, doc.m, doc.n)), c.out);

  auto& out = c.out;
  std::vector<long long> per_level;
  long long corrected = 0;
  for (const auto& f : fns) {
    if (f.level >= static_cast<int>(per_level.size())) per_level.resize(f.level + 1);
    ++per_level[f.level];
    corrected += f.corrected;
  }
  out << "functions: " << rep.count << '\n';
  out << "per_level:";
  for (long long v : per_level) out << ' ' << v;
  out << '\n';
  out << "corrected: " << corrected << '\n';
  out << "expected: " << rep.expected << '\n';
  out << "count_ok: " << yes(rep.count_ok()) << '\n';
  out << "independent: " << yes(rep.independent()) << " (rank " << rep.rank << ")\n";
  out << "conformal: " << yes(rep.conformal()) << '\n';
  out << "span_ok: " << yes(rep.span_ok()) << " (nullspace " << rep.nullspace << ")\n";
  if (list) {
    for (std::size_t i = 0; i < fns.size(); ++i) out << "fn " << i << ": " << describe(fns[i]) << '\n';
  }
  out << (rep.all() ? "# basis verified\n" : "# basis check failed\n");
  return rep.all() ? 0 : 1;
}

int cmd_eval(Ctx& c, const std::string& mesh_path, const std::string& vec_path, const std::vector<std::string>& at,
             std::optional<int> index, const std::string& pairing) {
  const MeshDocument doc = parse_mesh(read_file(mesh_path));
  const VectorDocument vd = parse_vectors(read_file(vec_path));
  const TMesh mesh = working_mesh(doc, pairing_for(doc, pairing));
  std::vector<std::pair<Coord, Coord>> points;
  for (const auto& s : at) points.push_back(parse_point(s));
  if (index && (*index < 0 || *index >= static_cast<int>(vd.vectors.size()))) {
    throw Error(ErrorCode::InvalidArgument, "no vector " + std::to_string(*index));
  }
  int status = 0;
  for (std::size_t i = 0; i < vd.vectors.size(); ++i) {
    if (index && *index != static_cast<int>(i)) continue;
    const ConformalityVector cv = to_vector(mesh, vd.vectors[i].factors);
    const SplineFn f{&mesh, cv, doc.m, doc.n};
    if (!in_W(mesh, cv, doc.m, doc.n)) {
      c.out << "vector " << i << ": not conformal\n";
      status = 1;
      continue;
    }
    for (const auto& [x, y] : points) {
      c.out << "vector " << i << " at " << to_string(x) << ',' << to_string(y) << ": "
            << to_string(eval_spline(f, x, y, false)) << '\n';
    }
  }
  return status;
}

int cmd_check(Ctx& c, const std::string& mesh_path, const std::string& vec_path, const std::string& pairing) {
  const MeshDocument doc = parse_mesh(read_file(mesh_path));
  const TMesh mesh = mesh_of(doc);
  const auto vc = vertex_census(mesh);
  auto& out = c.out;
  out << "kind: " << (doc.hierarchical() ? "hierarchy" : "segments") << '\n';
  out << "vertices: " << mesh.vertices().size() << '\n';
  out << "crossing: " << vc.crossing << '\n';
  out << "t_vertices: " << vc.tvertex << '\n';
  out << "boundary_vertices: " << vc.boundary << '\n';
  out << "edges: " << mesh.edges().size() << '\n';
  out << "ledges: " << mesh.ledges().size() << '\n';
  out << "cells: " << mesh.cells().size() << '\n';
  out << "extension_depth: " << mesh.extension_depth() << '\n';
  if (doc.hierarchical()) {
    const auto counts = isolated_counts(hierarchy_of(doc).forest);
    out << "isolated:";
    for (int v : counts.per_level) out << ' ' << v;
    out << '\n';
  }
  int status = 0;
  if (!vec_path.empty()) {
    const VectorDocument vd = parse_vectors(read_file(vec_path));
    if (vd.m != doc.m || vd.n != doc.n) throw Error(ErrorCode::SemanticError, "vector and mesh degrees differ");
    const TMesh work = working_mesh(doc, pairing_for(doc, pairing));
    std::size_t bad = 0;
    for (std::size_t i = 0; i < vd.vectors.size(); ++i) {
      bool ok = true;
      try {
        ok = in_W(work, to_vector(work, vd.vectors[i].factors), doc.m, doc.n);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        ++bad;
        out << "vector " << i << ": not conformal\n";
      }
    }
    out << "vectors: " << vd.vectors.size() << '\n';
    out << "conformal: " << vd.vectors.size() - bad << '\n';
    status = bad ? 1 : 0;
  }
  out << (status == 0 ? "# ok\n" : "# check failed\n");
  return status;
}

int cmd_render(Ctx& c, const std::string& path, const std::string& output, bool levels, bool extended, bool order,
               const std::string& vec_path, std::optional<int> index, const std::string& pairing) {
  const MeshDocument doc = parse_mesh(read_file(path));
  const ExtensionPairing p = pairing_for(doc, pairing);
  RenderOptions opts;
  opts.color_levels = levels;
  TMesh mesh = (extended || order || !vec_path.empty()) ? working_mesh(doc, p) : mesh_of(doc);
  if (order) {
    const Hierarchy h = hierarchy_of(doc);
    const auto seq = order_ledges(mesh, h.forest, doc.m, doc.n);
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
      if (seq.steps[i].level > 0) opts.labels.emplace_back(seq.steps[i].ledge, std::to_string(i + 1));
    }
  }
  if (!vec_path.empty()) {
    const VectorDocument vd = parse_vectors(read_file(vec_path));
    for (std::size_t i = 0; i < vd.vectors.size(); ++i) {
      if (index && *index != static_cast<int>(i)) continue;
      const auto& fs = vd.vectors[i].factors;
      if (fs.empty()) continue;
      Rect r{fs.begin()->first.first, fs.begin()->first.first, fs.begin()->first.second, fs.begin()->first.second};
      for (const auto& [pt, k] : fs) {
        r.x0 = std::min(r.x0, pt.first);
        r.x1 = std::max(r.x1, pt.first);
        r.y0 = std::min(r.y0, pt.second);
        r.y1 = std::max(r.y1, pt.second);
      }
      opts.supports.push_back(r);
    }
  }
  write_output(output, render_svg(mesh, opts), c.out);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spline spaces over hierarchical T-meshes", "hts"};
  app.require_subcommand(1);
  Ctx ctx{out, err};
  int status = 0;

  std::string pairing, output;
  auto add_pairing = [&](CLI::App* sub) {
    sub->add_option("--extension-pairing", pairing, "vertical-m or literal (default: from the mesh file)");
  };

  int m = 3, n = 3, max_levels = 3;
  std::vector<int> degree, size;
  std::string xs, ys;
  std::vector<std::string> levels;
  std::optional<unsigned long long> seed;
  auto* gen = app.add_subcommand("gen", "write a hierarchical mesh document");
  gen->add_option("--degree", degree, "bidegree m n")->expected(2);
  gen->add_option("--size", size, "level-0 cell counts p q (upper bounds with --seed)")->expected(2);
  gen->add_option("--x", xs, "comma-separated x line coordinates");
  gen->add_option("--y", ys, "comma-separated y line coordinates");
  gen->add_option("--level", levels, "space-separated block addresses, once per level in order");
  gen->add_option("--pairing", pairing, "extension pairing recorded in the document");
  gen->add_option("--seed", seed, "draw a random refinement instead");
  gen->add_option("--max-levels", max_levels, "refinement levels for --seed");
  gen->add_option("-o,--output", output, "output file (default stdout)");

  std::string mesh_path, vec_path;
  auto* ext = app.add_subcommand("extend", "write the extended mesh as a segments document");
  ext->add_option("mesh", mesh_path)->required();
  ext->add_option("-o,--output", output);
  add_pairing(ext);

  bool formula_only = false, oracle_only = false, timings = false;
  auto* dim = app.add_subcommand("dim", "dimension by the closed form and both rank oracles");
  dim->add_option("mesh", mesh_path)->required();
  dim->add_flag("--formula-only", formula_only);
  dim->add_flag("--oracle-only", oracle_only);
  dim->add_flag("--timings", timings, "also print wall-clock times");
  add_pairing(dim);

  std::string tie = "least", policy = "trivial-first";
  bool list = false;
  auto* basis = app.add_subcommand("basis", "construct and verify the basis");
  basis->add_option("mesh", mesh_path)->required();
  basis->add_option("-o,--output", output, "write the conformality vectors here");
  basis->add_option("--tie", tie, "least or greatest");
  basis->add_option("--policy", policy, "trivial-first or phased");
  basis->add_flag("--list", list, "describe every function");
  add_pairing(basis);

  std::vector<std::string> at;
  std::optional<int> index;
  auto* eval = app.add_subcommand("eval", "evaluate splines given by conformality vectors");
  eval->add_option("mesh", mesh_path)->required();
  eval->add_option("vectors", vec_path)->required();
  eval->add_option("--at", at, "point x,y (repeatable)")->required();
  eval->add_option("--index", index, "only this vector");
  add_pairing(eval);

  auto* check = app.add_subcommand("check", "validate a mesh and optionally a vector file");
  check->add_option("mesh", mesh_path)->required();
  check->add_option("--vectors", vec_path);
  add_pairing(check);

  bool color = false, extended = false, order = false;
  auto* render = app.add_subcommand("render", "SVG drawing of a mesh");
  render->add_option("mesh", mesh_path)->required();
  render->add_option("-o,--output", output);
  render->add_flag("--levels", color, "color lines by level");
  render->add_flag("--extended", extended, "draw the extended mesh");
  render->add_flag("--order", order, "label refined l-edges with their removal position");
  render->add_option("--support", vec_path, "shade the supports of these vectors");
  render->add_option("--index", index, "only this vector");
  add_pairing(render);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!degree.empty()) {
      m = degree[0];
      n = degree[1];
    }
    if (*gen) status = cmd_gen(ctx, m, n, size, xs, ys, levels, pairing, seed, max_levels, output);
    if (*ext) status = cmd_extend(ctx, mesh_path, pairing, output);
    if (*dim) status = cmd_dim(ctx, mesh_path, formula_only, oracle_only, pairing, timings);
    if (*basis) status = cmd_basis(ctx, mesh_path, output, tie, policy, pairing, list);
    if (*eval) status = cmd_eval(ctx, mesh_path, vec_path, at, index, pairing);
    if (*check) status = cmd_check(ctx, mesh_path, vec_path, pairing);
    if (*render) status = cmd_render(ctx, mesh_path, output, color, extended, order, vec_path, index, pairing);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}

}  // namespace hts
