#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ncx/cli.hpp"
#include "ncx/error.hpp"
#include "ncx/suites.hpp"
#include "ncx/svg.hpp"

namespace ncx::cli {

using io::ojson;
using suites::Check;

namespace {

struct Session {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  std::vector<ojson> records;
  int failed = 0;

  void record(ojson r) { records.push_back(std::move(r)); }

  void add(const std::vector<Check>& cs) {
    for (const auto& c : cs) {
      record(suites::to_json(c));
      const char* tag = c.passed ? "PASS" : "FAIL";
      const char* col = c.passed ? "\x1b[32m" : "\x1b[31m";
      if (cfg.color) err << col << tag << "\x1b[0m";
      else err << tag;
      err << ' ' << c.suite << '/' << c.name;
      if (!c.passed) err << "  max_violation=" << c.max_violation << " tol=" << c.tolerance;
      err << '\n';
      if (!c.passed) ++failed;
    }
  }

  void flush() {
    std::ofstream file;
    std::ostream* os = &out;
    // for plot, --out is the figure itself
    if (!cfg.out.empty() && cfg.command != "plot") {
      file.open(cfg.out, std::ios::binary);
      if (!file) fail(ErrorCode::Parse, "cannot write '" + cfg.out + "'");
      os = &file;
    }
    for (const auto& r : records) *os << r.dump() << '\n';
  }
};

[[noreturn]] void usage(const std::string& what) { fail(ErrorCode::Parse, what); }

const std::string& input(const RunConfig& c, std::size_t i, const std::string& alt, const char* what) {
  if (!alt.empty()) return alt;
  if (i < c.inputs.size()) return c.inputs[i];
  usage(std::string("missing ") + what);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::Parse, "cannot write '" + path + "'");
  f << text;
}

FigureSpec figure(const RunConfig& c, const std::string& title) {
  FigureSpec s;
  s.viewport = c.box;
  s.title = title;
  return s;
}

suites::Options options(const RunConfig& c) { return {c.grid, c.tol, c.seed}; }

const std::vector<QS2> kAlphas{QS2(Rational(1, 2)), QS2(1), QS2(2)};

// ---- subcommands ----

int cmd_check(Session& s) {
  const NCSet e = io::ncset_from(io::read_json_file(input(s.cfg, 0, "", "--in set")));
  const auto cert = is_nearly_convex(e);
  ojson r;
  r["command"] = "check";
  r["set"] = io::to_json(canonicalize(e));
  const ojson c = io::to_json(cert);
  for (const auto& [k, v] : c.items()) r[k] = v;
  s.record(r);
  s.err << "nearly convex: " << (cert.verdict ? "yes" : "no");
  if (cert.witness) s.err << "  witness " << to_string(*cert.witness);
  s.err << '\n';
  return kOk;
}

int cmd_calc(Session& s) {
  const auto& c = s.cfg;
  const std::string op = c.op.empty() ? c.target : c.op;
  auto set_a = [&] { return io::ncset_from(io::read_json_file(input(c, 0, c.a, "--a set"))); };
  auto set_b = [&] { return io::ncset_from(io::read_json_file(input(c, 1, c.b, "--b set"))); };
  auto lin = [&] {
    if (c.map.empty()) usage("--map is required for " + op);
    return io::linmap_from(io::read_json_file(c.map));
  };
  ojson r;
  r["command"] = "calc";
  r["op"] = op;
  if (op == "sum") {
    r["result"] = io::to_json(canonicalize(nc_sum(set_a(), set_b())));
  } else if (op == "intersect") {
    std::vector<NCSet> es{set_a(), set_b()};
    for (std::size_t i = 2; i < c.inputs.size(); ++i) es.push_back(io::ncset_from(io::read_json_file(c.inputs[i])));
    r["result"] = io::to_json(canonicalize(nc_intersect(es)));
  } else if (op == "image") {
    r["result"] = io::to_json(canonicalize(nc_image(set_a(), lin())));
  } else if (op == "preimage") {
    r["result"] = io::to_json(canonicalize(nc_preimage(set_a(), lin())));
  } else if (op == "rec") {
    const NCSet e = set_a();
    r["result"] = io::to_json(rec_classify(e));
    r["bounded"] = is_bounded(e);
  } else if (op == "closure") {
    r["result"] = io::to_json(closure(set_a()));
  } else if (op == "ri") {
    r["result"] = io::to_json(rel_interior(set_a()));
  } else if (op == "decompose") {
    const auto d = decompose(set_a());
    r["result"] = ojson{{"core", io::to_json(d.core)}, {"boundary", io::to_json(canonicalize(d.boundary))}};
  } else if (op == "equal") {
    r["result"] = nc_equal(set_a(), set_b());
  } else if (op == "nearly_equal") {
    r["result"] = nearly_equal(set_a(), set_b());
  } else if (op == "canonical") {
    r["result"] = io::to_json(canonicalize(set_a()));
  } else {
    usage("unknown calc op '" + op + "'");
  }
  s.record(r);
  return kOk;
}

int cmd_fn(Session& s) {
  const auto& c = s.cfg;
  const io::json doc = io::read_json_file(input(c, 0, "", "--in function"));
  const io::json& fdoc = doc.contains("function") ? doc.at("function") : doc;
  const ConvexFn f = io::fn_from(fdoc);
  const std::string op = c.op.empty() ? (c.target.empty() ? "eval" : c.target) : c.op;
  if (op == "dom") {
    s.record(ojson{{"command", "fn"}, {"op", op}, {"result", io::to_json(canonicalize(dom_subdiff(f)))}});
    return kOk;
  }
  std::vector<QS2Vector> pts;
  if (doc.contains("points"))
    for (const auto& p : doc.at("points")) pts.push_back(io::qvec_from(p));
  for (const auto& a : c.at) pts.push_back(io::parse_point(a));
  if (pts.empty()) usage("fn needs points (--at x1,x2 or a \"points\" list)");
  for (const auto& x : pts) {
    ojson r;
    r["command"] = "fn";
    r["op"] = op;
    r["x"] = io::to_json(x);
    if (op == "eval") r["result"] = io::to_json(eval(f, x));
    else if (op == "subdiff") r["result"] = io::to_json(subdiff(f, x));
    else if (op == "conjugate") r["result"] = io::to_json(conjugate_eval(f, x));
    else if (op == "case" && f.kind() == FnKind::Rockafellar) r["result"] = rockafellar_case(f.node().alpha, x);
    else usage("unknown fn op '" + op + "'");
    s.record(r);
  }
  return kOk;
}

int cmd_verify(Session& s) {
  const auto& c = s.cfg;
  const auto o = options(c);
  if (!c.inputs.empty()) {
    const ConvexFn f = io::fn_from(io::read_json_file(c.inputs[0]));
    DVec lo(f.dim(), -4), hi(f.dim(), 4);
    if (c.box && f.dim() == 2) {
      lo = {(*c.box)[0], (*c.box)[1]};
      hi = {(*c.box)[2], (*c.box)[3]};
    }
    s.add(suites::function_checks(f, lo, hi, o));
    return s.failed ? kVerifyFailed : kOk;
  }
  const std::string suite = c.target.empty() ? "all" : c.target;
  const std::map<std::string, std::function<void()>> runs{
      {"rockafellar", [&] { for (const auto& a : kAlphas) s.add(suites::rockafellar_subdiff(a, o)); }},
      {"conjugate", [&] { for (const auto& a : kAlphas) s.add(suites::rockafellar_conjugate(a, o)); }},
      {"structure", [&] { for (const auto& a : kAlphas) s.add(suites::rockafellar_structure(a, o)); }},
      {"halfstrip", [&] { for (long a : {0L, 1L, 2L}) s.add(suites::halfstrip_cases(QS2(a), o)); }},
      {"monotone", [&] { s.add(suites::monotonicity(o)); }},
  };
  if (suite == "all") {
    for (const char* k : {"rockafellar", "halfstrip", "conjugate", "structure", "monotone"}) runs.at(k)();
  } else if (auto it = runs.find(suite); it != runs.end()) {
    it->second();
  } else {
    usage("unknown verify suite '" + suite + "'");
  }
  return s.failed ? kVerifyFailed : kOk;
}

int cmd_reproduce(Session& s) {
  const auto& c = s.cfg;
  const auto o = options(c);
  const std::string t = c.target.empty() ? (c.inputs.empty() ? "" : c.inputs[0]) : c.target;
  NCSet fig;
  if (t == "sec2-sum") {
    s.add(suites::sec2_sum());
    fig = io::ncset_from(s.records.front().at("result"));
  } else if (t == "sec2-intersect") {
    s.add(suites::sec2_intersect());
    fig = suites::golden_set("two_rays");
  } else if (t == "strip-recession") {
    s.add(suites::strip_recession());
    fig = suites::golden_set("strip");
  } else if (t == "rockafellar") {
    for (const auto& a : kAlphas) {
      s.add(suites::rockafellar_subdiff(a, o));
      s.add(suites::rockafellar_conjugate(a, o, 100, 20));
    }
    fig = dom_subdiff(make_rockafellar(QS2(1)));
  } else if (t == "halfstrip") {
    for (long a : {0L, 1L}) s.add(suites::halfstrip_cases(QS2(a), o));
    fig = dom_subdiff(make_halfstrip(QS2(1)));
  } else if (t == "ncpolygon") {
    s.add(suites::ncpolygon());
    fig = io::ncset_from(s.records.front().at("result"));
  } else {
    usage("unknown reproduce target '" + t +
          "' (sec2-sum, sec2-intersect, strip-recession, rockafellar, halfstrip, ncpolygon)");
  }
  std::string path = c.svg;
  if (path.empty()) {
    if (c.out.empty()) path = t + ".svg";
    else path = c.out.substr(0, c.out.rfind('.') == std::string::npos ? c.out.size() : c.out.rfind('.')) + ".svg";
  }
  write_file(path, render_svg(fig, figure(c, t)));
  s.err << "figure written to " << path << '\n';
  return s.failed ? kVerifyFailed : kOk;
}

int cmd_plot(Session& s) {
  const auto& c = s.cfg;
  const std::string in = input(c, 0, "", "--in set or function");
  const io::json doc = io::read_json_file(in);
  const std::string title = in.substr(in.find_last_of('/') == std::string::npos ? 0 : in.find_last_of('/') + 1);
  const std::string svg = doc.contains("kind") ? render_svg(io::fn_from(doc), figure(c, title))
                                               : render_svg(io::ncset_from(doc), figure(c, title));
  if (c.out.empty()) s.out << svg;
  else write_file(c.out, svg);
  return kOk;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CqViolated:
      return kCqViolated;
    case ErrorCode::Internal:
      return kVerifyFailed;
    default:
      return kInputError;
  }
}

std::array<double, 4> parse_box(const std::string& text) {
  std::array<double, 4> b{};
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 4) usage("--box takes xmin,ymin,xmax,ymax");
    b[i++] = to_double(parse_rational(item));
  }
  if (i != 4) usage("--box takes xmin,ymin,xmax,ymax");
  return b;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session s{cfg, out, err, {}, 0};
  int code = kOk;
  try {
    if (cfg.command == "check") code = cmd_check(s);
    else if (cfg.command == "calc") code = cmd_calc(s);
    else if (cfg.command == "fn") code = cmd_fn(s);
    else if (cfg.command == "verify") code = cmd_verify(s);
    else if (cfg.command == "reproduce") code = cmd_reproduce(s);
    else if (cfg.command == "plot") code = cmd_plot(s);
    else usage("unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    s.record(ojson{{"command", cfg.command}, {"error", std::string(code_name(e.code()))}, {"message", e.what()}});
    err << "error: " << e.what() << '\n';
    code = exit_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    s.record(ojson{{"command", cfg.command}, {"error", "PARSE"}, {"message", e.what()}});
    err << "error: PARSE: " << e.what() << '\n';
    code = kInputError;
  }
  if (s.failed) err << s.failed << " check(s) failed\n";
  try {
    s.flush();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return code;
}

int main(int argc, char** argv) {
  CLI::App app{"ncx: nearly convex sets and subdifferentials"};
  RunConfig cfg;
  std::string box;
  app.add_option("command", cfg.command, "check | calc | fn | verify | reproduce | plot")
      ->required()
      ->check(CLI::IsMember({"check", "calc", "fn", "verify", "reproduce", "plot"}));
  app.add_option("target", cfg.target, "reproduce target, verify suite, or calc/fn operation");
  app.add_option("--in", cfg.inputs, "input JSON file (repeatable)");
  app.add_option("--out", cfg.out, "output file (JSON lines, or SVG for plot)");
  app.add_option("--svg", cfg.svg, "figure path for reproduce");
  app.add_option("--a", cfg.a, "first calc operand");
  app.add_option("--b", cfg.b, "second calc operand");
  app.add_option("--map", cfg.map, "linear map for image/preimage");
  app.add_option("--op", cfg.op, "calc: sum|intersect|image|preimage|rec|closure|ri|decompose|equal|nearly_equal|canonical; "
                                 "fn: eval|subdiff|conjugate|dom|case");
  app.add_option("--at", cfg.at, "point for fn, e.g. 1/2,0 (repeatable)");
  app.add_option("--box", box, "viewport or probe box xmin,ymin,xmax,ymax");
  app.add_option("--grid", cfg.grid, "grid refinement level")->check(CLI::Range(0, 6));
  app.add_option("--tol", cfg.tol, "tolerance override");
  app.add_option("--seed", cfg.seed, "random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  const char* env = std::getenv("NCX_COLOR");
  cfg.color = env ? std::string(env) != "0" : isatty(STDERR_FILENO) != 0;
  if (!box.empty()) {
    try {
      cfg.box = parse_box(box);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    }
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace ncx::cli
