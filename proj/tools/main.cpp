// rigiditykit command line: verification suites, file conversion and the single-purpose reports
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rigiditykit/suites.hpp"
#include "rigiditykit/text_io.hpp"

using namespace rk;

namespace {

int default_n(Kind k) {
  switch (k) {
    case Kind::Real: return 4;
    case Kind::Complex: return 4;
    case Kind::Quaternion: return 8;
    case Kind::Octonion: return 16;
  }
  return 4;
}

GeometryKind geometry_of(const std::string& name, int n) {
  Kind k;
  try {
    k = parse_kind(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  GeometryKind g{k, n > 0 ? n : default_n(k)};
  if (!admissible(g))
    throw UsageError("inadmissible dimension n=" + std::to_string(g.n) + " for " + kind_name(k) + " geometry");
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Vec parse_vec(const std::string& s, int n) {
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  int col = 1;
  while (std::getline(ss, tok, ',')) {
    v.push_back(Scalar::parse(tok, 0, col));
    col += static_cast<int>(tok.size()) + 1;
  }
  if (static_cast<int>(v.size()) != n)
    throw UsageError("covector '" + s + "' has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  if (is_zero(v)) throw UsageError("covector must be nonzero");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the rank-one symmetric space identities"};
  app.require_subcommand(1);

  SuiteOptions so;
  std::string geometry = "complex", out;
  int n = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write its JSON report");
  verify->add_option("suite", so.suite, "suite name")->required();
  verify->add_option("--geometry", geometry, "real, complex, quaternion or octonion");
  verify->add_option("--n", n, "real dimension (default: smallest admissible)");
  verify->add_option("--seed", so.seed, "random seed");
  verify->add_option("--jet-order", so.jet_order, "order of the random jets");
  verify->add_option("--samples", so.samples, "samples per check (default: per suite)");
  verify->add_option("--out", out, "report path (default: stdout)");
  verify->add_flag("--timing", so.timing, "record wall time in the report (breaks byte-identical reruns)");

  std::string in_path, to;
  auto* conv = app.add_subcommand("convert", "convert between tensor, jet and JSON files");
  conv->add_option("path", in_path, "input file")->required();
  conv->add_option("--to", to, "tensor, jet or json")->required();
  conv->add_option("--out", out, "output path (default: stdout)");

  std::string q_form = "displayed", report_path;
  auto* qa = app.add_subcommand("q-apply", "apply Q to a jet file");
  qa->add_option("path", in_path, "jet file (text or JSON)")->required();
  qa->add_option("--form", q_form, "displayed or frame");
  qa->add_option("--out", out, "tensor output path (default: stdout)");
  qa->add_option("--report", report_path, "identity report path");

  std::vector<std::string> xis;
  uint64_t seed = 1;
  int samples = 10;
  auto* sym = app.add_subcommand("symbol", "principal symbol samples as JSON");
  sym->add_option("--geometry", geometry, "geometry kind");
  sym->add_option("--n", n, "real dimension");
  sym->add_option("--xi", xis, "explicit covector, comma separated rationals (repeatable)");
  sym->add_option("--seed", seed, "seed for the generated covectors");
  sym->add_option("--samples", samples, "number of generated covectors when no --xi is given");
  sym->add_option("--out", out, "output path");

  auto* weit = app.add_subcommand("weitzenbock", "curvature term table for each model");
  weit->add_option("--seed", seed, "seed for the test tensors");
  weit->add_option("--out", out, "output path");

  int n_max = 0;
  auto* coer = app.add_subcommand("coercivity", "constant ledger as JSON");
  coer->add_option("--geometry", geometry, "real or complex");
  coer->add_option("--n", n, "dimension (or the first of a range)");
  coer->add_option("--n-max", n_max, "last dimension of a range");
  coer->add_option("--seed", seed, "seed for probing the real Q coefficients");
  coer->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      so.geometry = geometry_of(geometry, n);
      SuiteReport r = run_suite(so);
      emit(dump(r.to_json()), out);
      if (!out.empty())
        std::cerr << r.suite << ": " << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks pass\n";
      return r.all_pass() ? 0 : 1;
    }
    if (*conv) {
      emit(convert(slurp(in_path), parse_format(to)), out);
      return 0;
    }
    if (*qa) {
      std::string text = slurp(in_path);
      LoadedJet lj = text.rfind("{", 0) == 0 ? jet_from_json(Json::parse(text)) : read_jet(text);
      QForm form;
      if (q_form == "displayed") form = QForm::Displayed;
      else if (q_form == "frame") form = QForm::FrameDerived;
      else throw UsageError("--form must be displayed or frame");
      emit(write_tensor(q_apply(*lj.jet, form)), out);
      Json rep = q_identity_report(*lj.jet);
      if (!report_path.empty()) emit(dump(rep), report_path);
      return rep["all_pass"].get<bool>() ? 0 : 1;
    }
    if (*sym) {
      GeometryKind gk = geometry_of(geometry, n);
      Geometry g(gk);
      std::vector<Vec> list;
      for (const std::string& s : xis) list.push_back(parse_vec(s, gk.n));
      if (list.empty()) {
        Rng r = sample_rng(seed, "cli.symbol.xi", 0);
        list = xi_samples(gk.n, samples, r);
      }
      Json arr = Json::array();
      bool ok = true;
      for (size_t i = 0; i < list.size(); ++i) {
        Rng r = sample_rng(seed, "cli.symbol.s", static_cast<int>(i));
        Json j = symbol_sample_json(g, list[i], r);
        ok = ok && j["verdict"] == "pass";
        arr.push_back(j);
      }
      Json j;
      j["geometry"] = kind_name(gk.tag);
      j["n"] = gk.n;
      j["symbol_form"] = tensor_to_json(symbol_form(g, list[0]));
      j["samples"] = arr;
      emit(dump(j), out);
      return ok ? 0 : 1;
    }
    if (*weit) {
      Json rows = Json::array();
      bool ok = true;
      for (Kind k : {Kind::Real, Kind::Complex, Kind::Quaternion, Kind::Octonion}) {
        Geometry g(GeometryKind{k, default_n(k)});
        Rng r = sample_rng(seed, "cli.weitzenbock", static_cast<int>(k));
        CurvatureRow row = curvature_term_row(g, r);
        Json j = {{"geometry", kind_name(k)}, {"n", g.n()}};
        j.update(curvature_row_json(row));
        ok = ok && row.passed();
        rows.push_back(j);
      }
      emit(dump(Json{{"rows", rows}}), out);
      return ok ? 0 : 1;
    }
    if (*coer) {
      Kind k = parse_kind(geometry);
      if (k != Kind::Real && k != Kind::Complex) throw UsageError("the ledger exists for real and complex geometry only");
      int lo = n > 0 ? n : 4, hi = n_max > 0 ? n_max : lo;
      Json all = Json::array();
      bool ok = true;
      for (int d = lo; d <= hi; ++d) {
        GeometryKind gk{k, d};
        if (!admissible(gk)) {
          if (lo == hi) throw UsageError("inadmissible dimension n=" + std::to_string(d));
          continue;
        }
        ConstantLedger l;
        if (k == Kind::Real) {
          Rng r = sample_rng(seed, "constants.q", 0);
          l = real_case_constants(d, real_q_coefficients(d, r));
        } else {
          l = complex_case_constants(d);
        }
        ok = ok && l.all_pass();
        all.push_back(ledger_json(l));
      }
      emit(dump(lo == hi ? all[0] : Json{{"ledgers", all}}), out);
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    // UsageError, DomainError and bad format names
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
