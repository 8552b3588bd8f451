#include "rigiditykit/text_io.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace rk {

namespace {

struct Token {
  std::string text;
  int col;
};

struct Line {
  int no;
  std::vector<Token> toks;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  int no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++no;
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l{no, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      size_t s = i;
      while (i < raw.size() && !isspace(static_cast<unsigned char>(raw[i]))) ++i;
      l.toks.push_back({std::string(raw.substr(s, i - s)), static_cast<int>(s) + 1});
    }
    if (!l.toks.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

int to_int(const Token& t, int line, int lo, int hi, const char* what) {
  int v = 0;
  if (t.text.empty()) throw ParseError(std::string("expected ") + what, line, t.col);
  for (char c : t.text) {
    if (!isdigit(static_cast<unsigned char>(c))) throw ParseError(std::string("expected ") + what, line, t.col);
    v = v * 10 + (c - '0');
    if (v > 100000) throw ParseError(std::string(what) + " out of range", line, t.col);
  }
  if (v < lo || v > hi) throw ParseError(std::string(what) + " out of range", line, t.col);
  return v;
}

// key=value header fields after the two leading words
std::map<std::string, Token> header_fields(const Line& l, const char* magic) {
  if (l.toks.size() < 2 || l.toks[0].text != magic) throw ParseError(std::string("expected '") + magic + " v1' header", l.no, 1);
  if (l.toks[1].text != "v1") throw ParseError("unsupported version " + l.toks[1].text, l.no, l.toks[1].col);
  std::map<std::string, Token> f;
  for (size_t i = 2; i < l.toks.size(); ++i) {
    const Token& t = l.toks[i];
    size_t eq = t.text.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value", l.no, t.col);
    std::string key = t.text.substr(0, eq);
    if (f.count(key)) throw ParseError("duplicate field " + key, l.no, t.col);
    f[key] = Token{t.text.substr(eq + 1), t.col + static_cast<int>(eq) + 1};
  }
  return f;
}

const Token& field(const std::map<std::string, Token>& f, const std::string& key, int line) {
  auto it = f.find(key);
  if (it == f.end()) throw ParseError("missing field " + key, line, 1);
  return it->second;
}

std::string tuple_str(const Idx* I, int m) {
  std::string s;
  for (int k = 0; k < m; ++k) {
    if (k) s += ' ';
    s += std::to_string(I[k] + 1);
  }
  return s;
}

void write_entries(std::ostringstream& os, const SymTensor& t, const std::string& prefix) {
  const IndexSet& is = t.indices();
  for (size_t r = 0; r < t.size(); ++r) {
    if (t[r].is_zero()) continue;
    os << prefix << tuple_str(is.at(r), t.degree());
    if (t.degree() > 0) os << ' ';
    os << "= " << t[r].str() << '\n';
  }
}

// parses "i1 .. im = value" starting at token k into t
void read_entry(const Line& l, size_t k, SymTensor& t, std::set<size_t>& seen) {
  int m = t.degree(), n = t.dim();
  std::vector<int> idx;
  while (k < l.toks.size() && l.toks[k].text != "=") {
    idx.push_back(to_int(l.toks[k], l.no, 1, n, "index") - 1);
    ++k;
  }
  if (k >= l.toks.size()) throw ParseError("expected '='", l.no, l.toks.back().col);
  if (static_cast<int>(idx.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " tensor indices, got " + std::to_string(idx.size()), l.no,
                     l.toks[0].col);
  if (k + 2 != l.toks.size()) throw ParseError("expected a single value after '='", l.no, l.toks[k].col);
  const Token& v = l.toks[k + 1];
  Scalar s = Scalar::parse(v.text, l.no, v.col);
  std::vector<Idx> sorted(idx.begin(), idx.end());
  small_sort(sorted.data(), m);
  size_t r = rank_sorted(sorted.data(), m);
  if (!seen.insert(r).second) throw ParseError("duplicate entry", l.no, l.toks[0].col);
  t[r] = s;
}

std::vector<int> tuple_of(size_t f, int n, int j) {
  std::vector<int> a(j);
  for (int k = j - 1; k >= 0; --k) {
    a[k] = static_cast<int>(f % n);
    f /= n;
  }
  return a;
}

}  // namespace

std::string write_tensor(const SymTensor& t) {
  std::ostringstream os;
  os << "symtensor v1 dim=" << t.dim() << " degree=" << t.degree() << '\n';
  write_entries(os, t, "");
  return os.str();
}

SymTensor read_tensor(std::string_view text) {
  std::vector<Line> lines = lex(text);
  if (lines.empty()) throw ParseError("empty tensor file", 1, 1);
  auto f = header_fields(lines[0], "symtensor");
  int n = to_int(field(f, "dim", lines[0].no), lines[0].no, 1, 255, "dim");
  int m = to_int(field(f, "degree", lines[0].no), lines[0].no, 0, 16, "degree");
  SymTensor t(n, m);
  std::set<size_t> seen;
  for (size_t i = 1; i < lines.size(); ++i) read_entry(lines[i], 0, t, seen);
  return t;
}

std::string write_jet(const TensorJet& t) {
  const Geometry& g = t.geometry();
  std::ostringstream os;
  os << "jet v1 geometry=" << kind_name(g.tag()) << " n=" << g.n() << " degree=" << t.degree() << " order=" << t.order()
     << '\n';
  int n = g.n();
  for (int j = 0; j <= t.order(); ++j) {
    os << "level " << j << '\n';
    const auto& lv = t.level(j);
    for (size_t f = 0; f < lv.size(); ++f) {
      std::vector<int> a = tuple_of(f, n, j);
      std::string prefix;
      for (int x : a) prefix += std::to_string(x + 1) + ' ';
      prefix += "; ";
      write_entries(os, lv[f], prefix);
    }
  }
  return os.str();
}

LoadedJet read_jet(std::string_view text) {
  std::vector<Line> lines = lex(text);
  if (lines.empty()) throw ParseError("empty jet file", 1, 1);
  const Line& h = lines[0];
  auto f = header_fields(h, "jet");
  const Token& gk = field(f, "geometry", h.no);
  Kind kind;
  try {
    kind = parse_kind(gk.text);
  } catch (const DomainError&) {
    throw ParseError("unknown geometry '" + gk.text + "'", h.no, gk.col);
  }
  int n = to_int(field(f, "n", h.no), h.no, 1, 255, "n");
  int m = to_int(field(f, "degree", h.no), h.no, 0, 16, "degree");
  int order = to_int(field(f, "order", h.no), h.no, 0, 8, "order");
  GeometryKind gkind{kind, n};
  validate(gkind);
  LoadedJet out;
  out.geometry = std::make_shared<const Geometry>(gkind);
  out.jet = std::make_unique<TensorJet>(*out.geometry, m, order);
  TensorJet& t = *out.jet;
  int level = -1;
  std::map<size_t, std::set<size_t>> seen_entries;
  std::set<int> levels_seen;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.toks[0].text == "level") {
      if (l.toks.size() != 2) throw ParseError("expected 'level <j>'", l.no, l.toks[0].col);
      int j = to_int(l.toks[1], l.no, 0, 1000, "level");
      if (j > order)
        throw ValidationError("line " + std::to_string(l.no) + ": level " + std::to_string(j) +
                              " exceeds the declared order " + std::to_string(order));
      if (!levels_seen.insert(j).second) throw ParseError("level repeated", l.no, l.toks[1].col);
      level = j;
      seen_entries.clear();
      continue;
    }
    if (level < 0) throw ParseError("entry before any 'level' line", l.no, l.toks[0].col);
    size_t k = 0;
    std::vector<int> a;
    while (k < l.toks.size() && l.toks[k].text != ";") {
      a.push_back(to_int(l.toks[k], l.no, 1, n, "derivative index") - 1);
      ++k;
    }
    if (k >= l.toks.size()) throw ParseError("expected ';'", l.no, l.toks.back().col);
    if (static_cast<int>(a.size()) != level)
      throw ParseError("level " + std::to_string(level) + " entry needs " + std::to_string(level) +
                           " derivative indices, got " + std::to_string(a.size()),
                       l.no, l.toks[0].col);
    size_t fl = 0;
    for (int x : a) fl = fl * n + x;
    read_entry(l, k + 1, t.level(level)[fl], seen_entries[fl]);
  }
  if (!is_canonical(t))
    throw ValidationError("jet of order " + std::to_string(order) + " is not in Ricci canonical form");
  return out;
}

nlohmann::ordered_json tensor_to_json(const SymTensor& t) {
  nlohmann::ordered_json j;
  j["type"] = "tensor";
  j["version"] = 1;
  j["n"] = t.dim();
  j["degree"] = t.degree();
  nlohmann::ordered_json e = nlohmann::ordered_json::array();
  const IndexSet& is = t.indices();
  for (size_t r = 0; r < t.size(); ++r) {
    if (t[r].is_zero()) continue;
    std::vector<int> idx;
    for (int k = 0; k < t.degree(); ++k) idx.push_back(is.at(r)[k] + 1);
    e.push_back({{"index", idx}, {"value", t[r].str()}});
  }
  j["entries"] = e;
  return j;
}

namespace {

void json_entries(const nlohmann::ordered_json& arr, SymTensor& t) {
  std::set<size_t> seen;
  int k = 0;
  for (const auto& e : arr) {
    ++k;
    std::vector<int> idx = e.at("index").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != t.degree()) throw ParseError("entry has the wrong number of indices", k, 1);
    std::vector<Idx> s;
    for (int x : idx) {
      if (x < 1 || x > t.dim()) throw ParseError("index out of range", k, 1);
      s.push_back(static_cast<Idx>(x - 1));
    }
    small_sort(s.data(), t.degree());
    size_t r = rank_sorted(s.data(), t.degree());
    if (!seen.insert(r).second) throw ParseError("duplicate entry", k, 1);
    t[r] = Scalar::parse(e.at("value").get<std::string>(), k, 1);
  }
}

}  // namespace

SymTensor tensor_from_json(const nlohmann::ordered_json& j) {
  if (j.value("type", "") != "tensor" || j.value("version", 0) != 1) throw ParseError("not a v1 tensor object", 1, 1);
  SymTensor t(j.at("n").get<int>(), j.at("degree").get<int>());
  json_entries(j.at("entries"), t);
  return t;
}

nlohmann::ordered_json jet_to_json(const TensorJet& t) {
  const Geometry& g = t.geometry();
  nlohmann::ordered_json j;
  j["type"] = "jet";
  j["version"] = 1;
  j["geometry"] = kind_name(g.tag());
  j["n"] = g.n();
  j["degree"] = t.degree();
  j["order"] = t.order();
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (int l = 0; l <= t.order(); ++l) {
    nlohmann::ordered_json lv = nlohmann::ordered_json::array();
    const auto& ts = t.level(l);
    for (size_t f = 0; f < ts.size(); ++f) {
      if (ts[f].is_zero()) continue;
      nlohmann::ordered_json e = tensor_to_json(ts[f]);
      std::vector<int> a = tuple_of(f, g.n(), l);
      for (int& x : a) ++x;
      lv.push_back({{"derivative", a}, {"entries", e["entries"]}});
    }
    levels.push_back(lv);
  }
  j["levels"] = levels;
  return j;
}

LoadedJet jet_from_json(const nlohmann::ordered_json& j) {
  if (j.value("type", "") != "jet" || j.value("version", 0) != 1) throw ParseError("not a v1 jet object", 1, 1);
  GeometryKind gk{parse_kind(j.at("geometry").get<std::string>()), j.at("n").get<int>()};
  validate(gk);
  int order = j.at("order").get<int>();
  const auto& levels = j.at("levels");
  if (static_cast<int>(levels.size()) != order + 1)
    throw ValidationError("jet declares order " + std::to_string(order) + " but carries " +
                          std::to_string(levels.size()) + " levels");
  LoadedJet out;
  out.geometry = std::make_shared<const Geometry>(gk);
  out.jet = std::make_unique<TensorJet>(*out.geometry, j.at("degree").get<int>(), order);
  int n = gk.n;
  for (int l = 0; l <= order; ++l)
    for (const auto& e : levels[l]) {
      std::vector<int> a = e.at("derivative").get<std::vector<int>>();
      if (static_cast<int>(a.size()) != l) throw ValidationError("level " + std::to_string(l) + " entry has a wrong derivative tuple");
      size_t fl = 0;
      for (int x : a) {
        if (x < 1 || x > n) throw ValidationError("derivative index out of range");
        fl = fl * n + (x - 1);
      }
      json_entries(e.at("entries"), out.jet->level(l)[fl]);
    }
  if (!is_canonical(*out.jet))
    throw ValidationError("jet of order " + std::to_string(order) + " is not in Ricci canonical form");
  return out;
}

FileFormat parse_format(const std::string& s) {
  if (s == "tensor") return FileFormat::Tensor;
  if (s == "jet") return FileFormat::Jet;
  if (s == "json") return FileFormat::Json;
  throw std::invalid_argument("unknown format '" + s + "'");
}

std::string convert(std::string_view text, FileFormat to) {
  size_t p = text.find_first_not_of(" \t\r\n");
  if (p == std::string_view::npos) throw ParseError("empty input", 1, 1);
  std::optional<SymTensor> tensor;
  LoadedJet jet;
  if (text[p] == '{') {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid json: ") + e.what(), 1, 1);
    }
    std::string type = j.value("type", "");
    if (type == "tensor") tensor = tensor_from_json(j);
    else if (type == "jet") jet = jet_from_json(j);
    else throw ParseError("json object has no known \"type\"", 1, 1);
  } else if (text.substr(p, 9) == "symtensor") {
    tensor = read_tensor(text);
  } else if (text.substr(p, 3) == "jet") {
    jet = read_jet(text);
  } else {
    throw ParseError("cannot tell the input format", 1, 1);
  }
  switch (to) {
    case FileFormat::Json:
      return (tensor ? tensor_to_json(*tensor) : jet_to_json(*jet.jet)).dump(2) + "\n";
    case FileFormat::Tensor:
      if (!tensor) throw std::invalid_argument("a jet cannot be written as a tensor file");
      return write_tensor(*tensor);
    case FileFormat::Jet:
      if (!jet.jet) throw std::invalid_argument("a tensor cannot be written as a jet file");
      return write_jet(*jet.jet);
  }
  return {};
}

}  // namespace rk
