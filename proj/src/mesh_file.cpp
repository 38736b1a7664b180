#include <charconv>
#include <sstream>

#include "hts/cli_io.hpp"
#include "hts/error.hpp"

namespace hts {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string w; is >> w;) line.words.push_back(std::move(w));
    if (!line.words.empty()) out.push_back(std::move(line));
    start = end + 1;
  }
  return out;
}

[[noreturn]] void syntax(const Line& line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line.number) + ": " + what);
}

int to_int(const Line& line, const std::string& word) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) syntax(line, "expected an integer, got \"" + word + "\"");
  return value;
}

Rational to_rational(const Line& line, const std::string& word) {
  try {
    return parse_rational(word);
  } catch (const Error& e) {
    syntax(line, e.what());
  }
}

void expect_words(const Line& line, std::size_t lo, std::size_t hi) {
  if (line.words.size() < lo || line.words.size() > hi) {
    syntax(line, "wrong number of fields for \"" + line.words[0] + "\"");
  }
}

void check_header(const std::vector<Line>& lines, std::string_view magic) {
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "line 1: empty document");
  const Line& h = lines.front();
  if (h.words.size() != 2 || h.words[0] != magic) syntax(h, "expected \"" + std::string(magic) + " 1\"");
  if (h.words[1] != "1") syntax(h, "unsupported format version " + h.words[1]);
}

// Index one past the "end" line; everything after it must be empty.
std::size_t body_end(const std::vector<Line>& lines) {
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].words[0] == "end") {
      if (lines[i].words.size() != 1) syntax(lines[i], "\"end\" takes no fields");
      if (i + 1 != lines.size()) syntax(lines[i + 1], "text after \"end\"");
      return i;
    }
  }
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lines.back().number) + ": missing \"end\"");
}

std::string_view provenance_name(LineProvenance p) {
  switch (p) {
    case LineProvenance::Original: return "original";
    case LineProvenance::BoundaryCopy: return "copy";
    case LineProvenance::Extension: return "extension";
  }
  return "original";
}

LineProvenance parse_provenance(const Line& line, const std::string& word) {
  if (word == "original") return LineProvenance::Original;
  if (word == "copy") return LineProvenance::BoundaryCopy;
  if (word == "extension") return LineProvenance::Extension;
  syntax(line, "unknown provenance \"" + word + "\"");
}

template <class F>
auto semantic(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::SemanticError) throw;
    throw Error(ErrorCode::SemanticError, e.what());
  }
}

}  // namespace

MeshDocument parse_mesh(std::string_view text) {
  const auto lines = tokenize(text);
  check_header(lines, "hts-mesh");
  const std::size_t end = body_end(lines);
  MeshDocument doc;
  std::optional<std::string> kind;
  HierSpec spec;
  bool have_size = false, have_degree = false;
  for (std::size_t i = 1; i < end; ++i) {
    const Line& line = lines[i];
    const std::string& key = line.words[0];
    if (key == "degree") {
      expect_words(line, 3, 3);
      doc.m = to_int(line, line.words[1]);
      doc.n = to_int(line, line.words[2]);
      have_degree = true;
    } else if (key == "pairing") {
      expect_words(line, 2, 2);
      try {
        doc.pairing = parse_pairing(line.words[1]);
      } catch (const Error& e) {
        syntax(line, e.what());
      }
    } else if (key == "kind") {
      expect_words(line, 2, 2);
      if (line.words[1] != "hierarchy" && line.words[1] != "segments") syntax(line, "unknown kind " + line.words[1]);
      kind = line.words[1];
    } else if (key == "size") {
      expect_words(line, 3, 3);
      spec.p = to_int(line, line.words[1]);
      spec.q = to_int(line, line.words[2]);
      have_size = true;
    } else if (key == "x" || key == "y") {
      std::vector<Coord> v;
      for (std::size_t w = 1; w < line.words.size(); ++w) v.push_back(to_rational(line, line.words[w]));
      (key == "x" ? spec.x_coords : spec.y_coords) = std::move(v);
    } else if (key == "level") {
      expect_words(line, 2, std::string::npos);
      const int k = to_int(line, line.words[1]);
      if (k != static_cast<int>(spec.script.size())) {
        throw Error(ErrorCode::SemanticError, "line " + std::to_string(line.number) + ": expected level " +
                                                  std::to_string(spec.script.size()));
      }
      std::vector<Address> row;
      for (std::size_t w = 2; w < line.words.size(); ++w) {
        try {
          row.push_back(parse_address(line.words[w]));
        } catch (const Error& e) {
          syntax(line, e.what());
        }
      }
      spec.script.push_back(std::move(row));
    } else if (key == "extension") {
      expect_words(line, 2, 2);
      doc.extension_depth = to_int(line, line.words[1]);
    } else if (key == "h" || key == "v") {
      expect_words(line, 4, 6);
      const Coord fixed = to_rational(line, line.words[1]);
      const Coord lo = to_rational(line, line.words[2]);
      const Coord hi = to_rational(line, line.words[3]);
      std::optional<int> level;
      if (line.words.size() > 4 && line.words[4] != "-") level = to_int(line, line.words[4]);
      Segment s = key == "h" ? Segment::horizontal(fixed, lo, hi, level) : Segment::vertical(fixed, lo, hi, level);
      if (line.words.size() > 5) s.provenance = parse_provenance(line, line.words[5]);
      doc.segments.push_back(std::move(s));
    } else {
      syntax(line, "unknown keyword \"" + key + "\"");
    }
  }
  if (!have_degree) throw Error(ErrorCode::SyntaxError, "line 1: missing \"degree\"");
  if (!kind) throw Error(ErrorCode::SyntaxError, "line 1: missing \"kind\"");
  if (*kind == "hierarchy") {
    if (!have_size) throw Error(ErrorCode::SyntaxError, "line 1: hierarchy without \"size\"");
    if (!doc.segments.empty()) throw Error(ErrorCode::SemanticError, "segments in a hierarchy document");
    spec.m = doc.m;
    spec.n = doc.n;
    doc.spec = std::move(spec);
  } else if (have_size || !spec.script.empty()) {
    throw Error(ErrorCode::SemanticError, "hierarchy fields in a segments document");
  }
  mesh_of(doc);
  return doc;
}

std::string serialize(const MeshDocument& doc) {
  std::ostringstream os;
  os << "hts-mesh 1\n";
  os << "degree " << doc.m << ' ' << doc.n << '\n';
  os << "pairing " << to_string(doc.pairing) << '\n';
  if (doc.spec) {
    const HierSpec& s = *doc.spec;
    os << "kind hierarchy\n";
    os << "size " << s.p << ' ' << s.q << '\n';
    auto coords = [&](const char* key, const std::optional<std::vector<Coord>>& v) {
      if (!v) return;
      os << key;
      for (const auto& c : *v) os << ' ' << to_string(c);
      os << '\n';
    };
    coords("x", s.x_coords);
    coords("y", s.y_coords);
    for (std::size_t k = 0; k < s.script.size(); ++k) {
      os << "level " << k;
      for (const auto& a : s.script[k]) os << ' ' << to_string(a);
      os << '\n';
    }
  } else {
    os << "kind segments\n";
    os << "extension " << doc.extension_depth << '\n';
    for (const auto& seg : doc.segments) {
      os << (seg.orientation == Orientation::Horizontal ? 'h' : 'v') << ' ' << to_string(seg.fixed) << ' '
         << to_string(seg.lo) << ' ' << to_string(seg.hi) << ' '
         << (seg.level ? std::to_string(*seg.level) : std::string("-")) << ' ' << provenance_name(seg.provenance)
         << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

MeshDocument document_of(const HierSpec& spec, ExtensionPairing pairing) {
  MeshDocument doc;
  doc.m = spec.m;
  doc.n = spec.n;
  doc.pairing = pairing;
  doc.spec = spec;
  return doc;
}

MeshDocument document_of(const TMesh& mesh, int m, int n, ExtensionPairing pairing) {
  MeshDocument doc;
  doc.m = m;
  doc.n = n;
  doc.pairing = pairing;
  doc.segments = mesh.segments();
  doc.extension_depth = mesh.extension_depth();
  return doc;
}

TMesh mesh_of(const MeshDocument& doc) {
  return semantic([&] {
    if (doc.spec) return generate(*doc.spec).mesh;
    return build_tmesh(doc.segments, doc.extension_depth);
  });
}

Hierarchy hierarchy_of(const MeshDocument& doc) {
  if (!doc.spec) throw Error(ErrorCode::NotInClass, "document lists segments, not a refinement script");
  return semantic([&] { return generate(*doc.spec); });
}

VectorDocument parse_vectors(std::string_view text) {
  const auto lines = tokenize(text);
  check_header(lines, "hts-vectors");
  const std::size_t end = body_end(lines);
  VectorDocument doc;
  std::optional<int> count;
  for (std::size_t i = 1; i < end; ++i) {
    const Line& line = lines[i];
    const std::string& key = line.words[0];
    if (key == "degree") {
      expect_words(line, 3, 3);
      doc.m = to_int(line, line.words[1]);
      doc.n = to_int(line, line.words[2]);
    } else if (key == "count") {
      expect_words(line, 2, 2);
      count = to_int(line, line.words[1]);
    } else if (key == "vector") {
      if (line.words.size() % 2 != 0) syntax(line, "vector line needs an index and key/value pairs");
      if (to_int(line, line.words[1]) != static_cast<int>(doc.vectors.size())) syntax(line, "vector index out of order");
      VectorRecord r;
      for (std::size_t w = 2; w + 1 < line.words.size(); w += 2) r.info[line.words[w]] = line.words[w + 1];
      doc.vectors.push_back(std::move(r));
    } else if (key == "k") {
      expect_words(line, 4, 4);
      if (doc.vectors.empty()) syntax(line, "factor before the first vector line");
      const auto pt = std::make_pair(to_rational(line, line.words[1]), to_rational(line, line.words[2]));
      if (!doc.vectors.back().factors.emplace(pt, to_rational(line, line.words[3])).second) {
        syntax(line, "repeated point");
      }
    } else {
      syntax(line, "unknown keyword \"" + key + "\"");
    }
  }
  if (count && *count != static_cast<int>(doc.vectors.size())) {
    throw Error(ErrorCode::SemanticError, "count says " + std::to_string(*count) + " vectors, found " +
                                              std::to_string(doc.vectors.size()));
  }
  return doc;
}

std::string serialize(const VectorDocument& doc) {
  std::ostringstream os;
  os << "hts-vectors 1\n";
  os << "degree " << doc.m << ' ' << doc.n << '\n';
  os << "count " << doc.vectors.size() << '\n';
  for (std::size_t i = 0; i < doc.vectors.size(); ++i) {
    os << "vector " << i;
    for (const auto& [k, v] : doc.vectors[i].info) os << ' ' << k << ' ' << v;
    os << '\n';
    for (const auto& [pt, k] : doc.vectors[i].factors) {
      os << "k " << to_string(pt.first) << ' ' << to_string(pt.second) << ' ' << to_string(k) << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

VectorDocument document_of(const std::vector<BasisFn>& fns, int m, int n) {
  VectorDocument doc;
  doc.m = m;
  doc.n = n;
  for (const auto& fn : fns) {
    VectorRecord r;
    r.factors = fn.factors;
    r.info["step"] = std::to_string(fn.step);
    r.info["level"] = std::to_string(fn.level);
    r.info["label"] = std::string(to_string(fn.label));
    r.info["window"] = std::to_string(fn.window);
    r.info["alpha"] = std::to_string(fn.alpha);
    r.info["corrected"] = fn.corrected ? "1" : "0";
    doc.vectors.push_back(std::move(r));
  }
  return doc;
}

}  // namespace hts
