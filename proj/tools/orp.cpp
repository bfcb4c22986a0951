// orp: command-line front end. Each subcommand parses its inputs, calls the library and
// prints a report as "key: value" lines, or as JSON with --json.
//
// Exit codes: 0 pass / decided, 1 failure or violation, 2 inconclusive or unsupported,
// 64 unreadable input. `solve` uses 0 / 1 / 2 for TRIVIAL / NONTRIVIAL / INCONCLUSIVE.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orp/io.hpp"
#include "orp/pictures.hpp"
#include "orp/solver.hpp"
#include "orp/triangle.hpp"

using namespace orp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kFail = 1, kUndecided = 2, kUsage = 64;

struct Report {
  Json body = Json::object();
  std::uint64_t digest = 1469598103934665603ull;  // FNV-1a over every input
  int exit = kPass;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void absorb(const std::string& s) {
    for (unsigned char c : s) {
      digest ^= c;
      digest *= 1099511628211ull;
    }
    digest ^= 0xff;
    digest *= 1099511628211ull;
  }
  std::string load(const std::string& path) {
    std::string text = readFile(path);
    absorb(text);
    return text;
  }
  void worst(int code) { exit = std::max(exit, code); }
};

std::string scalar(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  // continuation lines of multi-line values are indented
  for (std::size_t at = s.find('\n'); at != std::string::npos; at = s.find('\n', at + 3)) s.replace(at, 1, "\n  ");
  return s;
}

void printText(std::ostream& out, const std::string& prefix, const Json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      printText(out, key, v);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (const auto& item : v) {
        out << key << ":";
        for (auto f = item.begin(); f != item.end(); ++f)
          out << ' ' << f.key() << '=' << scalar(f.value());
        out << '\n';
      }
    } else if (v.is_array()) {
      out << key << ":";
      for (const auto& item : v) out << ' ' << scalar(item);
      out << '\n';
    } else {
      const std::string text = scalar(v);
      out << key << ":" << (text.find('\n') != std::string::npos ? "\n  " : " ") << text << '\n';
    }
  }
}

Json violationsJson(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back({{"code", v.code}, {"where", v.where}, {"detail", v.detail}});
  return out;
}

Json zonesJson(const std::vector<Zone>& zs, const Picture& p) {
  Json out = Json::array();
  auto endName = [&](int v) { return v == kBoundary ? std::string("boundary") : p.vertices[static_cast<std::size_t>(v)].name; };
  for (std::size_t i = 0; i < zs.size(); ++i) {
    std::string arcs;
    for (int a : zs[i].arcs) arcs += (arcs.empty() ? "" : ",") + p.arcNames[static_cast<std::size_t>(a)];
    out.push_back({{"zone", i},
                   {"omega", zs[i].omega()},
                   {"ends", endName(zs[i].ends[0]) + "," + endName(zs[i].ends[1])},
                   {"arcs", arcs},
                   {"pieces_match", zs[i].piecesMatch}});
  }
  return out;
}

Hypothesis pickHypothesis(const std::string& flag, const GtgDescription& d) {
  if (flag == "A") return Hypothesis::A;
  if (flag == "B") return Hypothesis::B;
  const auto tag = checkHypotheses(d);
  if (!tag) throw Error(ErrorCode::HypothesisFail, "neither hypothesis holds; pass --hyp");
  return tag->which;
}

Json clausesJson(const std::vector<Clause>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back({{"clause", c.name}, {"holds", std::string(decisionName(c.holds))}, {"detail", c.detail}});
  return out;
}

TrianglePresentation presentationFrom(Report& r, int p, int q, int rr, const std::string& pres, const std::string& desc) {
  if (!desc.empty()) return presentationOf(parseDescription(r.load(desc)));
  if (!pres.empty()) {
    r.absorb(pres);
    return parsePresentation(pres);
  }
  r.absorb(std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(rr));
  return triangle(p, q, rr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orp: one-relator products induced by generalised triangle groups"};
  app.require_subcommand(1);
  bool json = false, timings = false;
  int threads = 1;
  app.add_flag("--json", json, "emit JSON");
  app.add_flag("--timings", timings, "include wall-clock timings (not deterministic)");
  app.add_option("--threads", threads, "worker threads for the solver")->check(CLI::PositiveNumber);

  Report r;
  std::function<void()> action;

  // words
  auto* words = app.add_subcommand("words", "combinatorics on words");
  words->require_subcommand(1);
  std::string word, alphabetFile;
  std::size_t gamma = 0, rho = 0;
  auto alphabetWord = [&]() {
    Alphabet alpha = alphabetFile.empty() ? Alphabet{} : parseAlphabet(r.load(alphabetFile));
    r.absorb(word);
    Word w = parseWord(alpha, word, true);
    return std::make_pair(alpha, w);
  };
  for (const char* name : {"period", "fine-wilf", "least-rotation"}) {
    auto* s = words->add_subcommand(name);
    s->add_option("--word", word, "letters, e.g. \"x y x' y'\"")->required();
    s->add_option("--alphabet", alphabetFile, "file of letter/pair declarations");
  }
  words->get_subcommand("fine-wilf")->add_option("--gamma", gamma)->required();
  words->get_subcommand("fine-wilf")->add_option("--rho", rho)->required();
  words->get_subcommand("period")->callback([&] {
    action = [&] {
      auto [alpha, w] = alphabetWord();
      r.body["subcommand"] = "words period";
      r.body["length"] = w.size();
      r.body["periods"] = periods(w);
      r.body["minimal_period"] = minimalPeriod(w);
      r.body["proper_power"] = isProperPower(w);
    };
  });
  words->get_subcommand("fine-wilf")->callback([&] {
    action = [&] {
      auto [alpha, w] = alphabetWord();
      r.body["subcommand"] = "words fine-wilf";
      r.body["gamma_is_period"] = hasPeriod(w, gamma);
      r.body["rho_is_period"] = hasPeriod(w, rho);
      const auto g = fineWilf(w, gamma, rho);
      r.body["gcd_period"] = g ? Json(*g) : Json("n/a");
      if (!g) r.worst(kUndecided);
    };
  });
  words->get_subcommand("least-rotation")->callback([&] {
    action = [&] {
      auto [alpha, w] = alphabetWord();
      const std::size_t j = leastRotation(w);
      r.body["subcommand"] = "words least-rotation";
      r.body["offset"] = j;
      r.body["rotation"] = alpha.format(rotate(w, j));
    };
  });

  // gtg
  auto* gtg = app.add_subcommand("gtg", "descriptions");
  gtg->require_subcommand(1);
  std::string descFile, fpWordText;
  for (const char* name : {"show", "refine", "parse"}) {
    auto* s = gtg->add_subcommand(name);
    s->add_option("--desc", descFile, "description file")->required();
  }
  gtg->get_subcommand("parse")->add_option("--word", fpWordText, "letters such as f1:c f2:c^2")->required();
  gtg->get_subcommand("show")->callback([&] {
    action = [&] {
      const auto d = parseDescription(r.load(descFile));
      const auto hc = hypothesisClauses(d);
      r.body["subcommand"] = "gtg show";
      r.body["description"] = format(d);
      r.body["l"] = d.l();
      r.body["relator"] = d.fp.format(relator(d));
      r.body["label"] = d.fp.format(label(d));
      r.body["hypothesis_A"] = hc.aHolds();
      r.body["hypothesis_B"] = hc.bHolds();
      r.body["clauses_A"] = clausesJson(hc.a);
      r.body["clauses_B"] = clausesJson(hc.b);
      if (!hc.aHolds() && !hc.bHolds()) r.worst(kUndecided);
    };
  });
  gtg->get_subcommand("refine")->callback([&] {
    action = [&] {
      const auto d = parseDescription(r.load(descFile));
      const auto chain = refinementChain(d);
      r.body["subcommand"] = "gtg refine";
      r.body["maximal"] = chain.size() == 1;
      Json steps = Json::array();
      for (const auto& c : chain) {
        const auto m = refinementMeasure(c);
        steps.push_back({{"description", format(c)}, {"l", m.first}, {"syllables", m.second}});
      }
      r.body["chain"] = steps;
    };
  });
  gtg->get_subcommand("parse")->callback([&] {
    action = [&] {
      const auto d = parseDescription(r.load(descFile));
      r.absorb(fpWordText);
      const FpWord w = cyclicReduce(d.fp, normalize(d.fp, parseFpWord(d.fp, fpWordText))).core;
      r.body["subcommand"] = "gtg parse";
      r.body["word"] = d.fp.format(w);
      const auto parse = parseForm(d, w);
      r.body["h_form"] = parse.has_value();
      if (parse) {
        r.body["offset"] = parse->offset;
        r.body["h_word"] = format(syllableWord(parse->exps));
      } else {
        r.worst(kFail);
      }
    };
  });

  // triangle
  auto* tri = app.add_subcommand("triangle", "triangle-group oracles");
  tri->require_subcommand(1);
  int tp = 2, tq = 3, tr = 3;
  std::string presText;
  std::size_t maxCosets = 100000;
  bool dumpTable = false;
  auto* order = tri->add_subcommand("order", "coset enumeration");
  order->add_option("--p", tp);
  order->add_option("--q", tq);
  order->add_option("--r", tr);
  order->add_option("--pres", presText, "\"p=3 q=3 n=2 exps=(1,1)(1,2)\"");
  order->add_option("--desc", descFile, "use the presentation inducing a description");
  order->add_option("--max-cosets", maxCosets);
  order->add_flag("--dump", dumpTable, "print the coset table");
  order->callback([&] {
    action = [&] {
      const auto pres = presentationFrom(r, tp, tq, tr, presText, descFile);
      const auto table = toddCoxeter(pres, maxCosets);
      r.body["subcommand"] = "triangle order";
      r.body["presentation"] = format(pres);
      r.body["status"] = table.complete() ? "COMPLETE" : "EXCEEDED";
      if (table.complete()) {
        r.body["order"] = table.order();
        if (dumpTable) r.body["table"] = dump(table);
      } else {
        r.body["max_cosets"] = maxCosets;
        r.worst(kUndecided);
      }
    };
  });
  auto* rep = tri->add_subcommand("rep", "PSL(2,C) representation with Tr(XY) = 0");
  rep->add_option("--p", tp)->required();
  rep->add_option("--q", tq)->required();
  rep->callback([&] {
    action = [&] {
      r.absorb(std::to_string(tp) + "," + std::to_string(tq));
      const auto m = buildRep(tp, tq);
      auto ord = [](const std::optional<int>& o) { return o ? Json(*o) : Json("none"); };
      r.body["subcommand"] = "triangle rep";
      r.body["t"] = m.t;
      r.body["order_X"] = ord(psl2Order(m.X));
      r.body["order_Y"] = ord(psl2Order(m.Y));
      r.body["order_XY"] = ord(psl2Order(m.X * m.Y));
      r.body["trace_XY"] = std::abs((m.X * m.Y).trace());
    };
  });
  auto* prop = tri->add_subcommand("tuples", "trivial x^a y^b x^c y^d in <x,y | x^p, y^q, (xy)^2>");
  prop->add_option("--p", tp)->required();
  prop->add_option("--q", tq)->required();
  prop->add_option("--max-cosets", maxCosets);
  prop->callback([&] {
    action = [&] {
      r.absorb(std::to_string(tp) + "," + std::to_string(tq));
      const auto table = toddCoxeter(triangle(tp, tq, 2), maxCosets);
      r.body["subcommand"] = "triangle tuples";
      if (!table.complete()) {
        r.body["status"] = "EXCEEDED";
        r.worst(kUndecided);
        return;
      }
      const auto rp = verifyProp1(tp, tq, table);
      r.body["skipped"] = rp.skipped;
      r.body["checked"] = rp.checked;
      Json tr = Json::array(), un = Json::array();
      for (const auto& t : rp.trivial) tr.push_back(Json(t).dump());
      for (const auto& t : rp.unexpected) un.push_back(Json(t).dump());
      r.body["trivial"] = tr;
      r.body["unexpected"] = un;
      if (!rp.unexpected.empty()) r.worst(kFail);
      if (rp.skipped) r.worst(kUndecided);
    };
  });
  auto* spell = tri->add_subcommand("spelling", "no trivial prod x^g y^d of length below k r");
  spell->add_option("--p", tp);
  spell->add_option("--q", tq);
  spell->add_option("--r", tr);
  spell->add_option("--pres", presText);
  spell->add_option("--max-cosets", maxCosets);
  spell->callback([&] {
    action = [&] {
      const auto pres = presentationFrom(r, tp, tq, tr, presText, "");
      const auto table = toddCoxeter(pres, maxCosets);
      r.body["subcommand"] = "triangle spelling";
      r.body["presentation"] = format(pres);
      if (!table.complete()) {
        r.body["status"] = "EXCEEDED";
        r.worst(kUndecided);
        return;
      }
      const auto sp = verifySpelling(pres, table);
      r.body["checked"] = sp.checked;
      r.body["truncated"] = sp.truncated;
      Json bad = Json::array();
      for (const auto& w : sp.trivial) bad.push_back(format(w));
      r.body["counterexamples"] = bad;
      if (!sp.trivial.empty()) r.worst(kFail);
      if (sp.truncated) r.worst(kUndecided);
    };
  });

  // picture
  auto* pic = app.add_subcommand("picture", "pictures and clique-pictures");
  pic->require_subcommand(1);
  std::string picFile, hypFlag;
  int depth = 3;
  for (const char* name : {"validate", "reduce-probe", "zones", "quotient", "audits", "dump"}) {
    auto* s = pic->add_subcommand(name);
    s->add_option("--file", picFile, "picture file")->required();
    s->add_option("--desc", descFile, "description file (defaults to --file)");
  }
  pic->get_subcommand("reduce-probe")->add_option("--depth", depth, "bridge moves to try");
  pic->get_subcommand("audits")->add_option("--hyp", hypFlag, "A or B")->check(CLI::IsMember({"A", "B"}));
  auto loadPicture = [&]() {
    const std::string text = r.load(picFile);
    const auto d = parseDescription(descFile.empty() ? text : r.load(descFile));
    Picture p = parsePicture(text, d.fp);
    return std::make_pair(d, p);
  };
  pic->get_subcommand("validate")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      const auto table = toddCoxeter(presentationOf(d), maxCosets);
      const auto v = validate(p, d, table.complete() ? &table : nullptr);
      r.body["subcommand"] = "picture validate";
      r.body["boundary_label"] = d.fp.format(v.boundaryLabel);
      r.body["violations"] = violationsJson(v.violations);
      r.body["valid"] = v.ok();
      if (!v.ok()) r.worst(kFail);
    };
  });
  pic->get_subcommand("reduce-probe")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      const auto s = findDipole(p, d, depth);
      r.body["subcommand"] = "picture reduce-probe";
      r.body["dipole"] = s.dipole.has_value();
      if (s.dipole) {
        r.body["dipole_vertices"] = p.vertices[static_cast<std::size_t>(s.dipole->u)].name + "," +
                                    p.vertices[static_cast<std::size_t>(s.dipole->v)].name;
        Json moves = Json::array();
        for (auto [x, y] : s.moves) moves.push_back(std::to_string(x) + "<->" + std::to_string(y));
        r.body["moves"] = moves;
      }
      r.body["states"] = s.statesExplored;
      r.body["capped"] = s.capped;
      r.body["reduced"] = !s.dipole && !s.capped;
      if (s.dipole) r.worst(kFail);
      if (!s.dipole && s.capped) r.worst(kUndecided);
    };
  });
  pic->get_subcommand("zones")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      const auto zs = zones(p, d);
      std::size_t total = 0;
      for (const auto& z : zs) total += z.omega();
      r.body["subcommand"] = "picture zones";
      r.body["zone_count"] = zs.size();
      r.body["arc_count"] = p.arcCount();
      r.body["omega_sum"] = total;
      r.body["zones"] = zonesJson(zs, p);
    };
  });
  pic->get_subcommand("quotient")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      const auto cp = cliqueQuotient(p, d);
      r.body["subcommand"] = "picture quotient";
      Json cliques = Json::array();
      for (std::size_t i = 0; i < cp.members.size(); ++i) {
        std::string names;
        for (int v : cp.members[i]) names += (names.empty() ? "" : ",") + p.vertices[static_cast<std::size_t>(v)].name;
        cliques.push_back({{"clique", cp.map.vertices[i].name},
                           {"members", names},
                           {"label", d.fp.format(cp.labels[i])},
                           {"form", static_cast<bool>(cp.formOk[i])}});
      }
      r.body["cliques"] = cliques;
      r.body["map"] = formatPicture(cp.map, d.fp);
    };
  });
  pic->get_subcommand("audits")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      const auto cp = cliqueQuotient(p, d);
      const Hypothesis hyp = pickHypothesis(hypFlag, d);
      const auto c6 = c6Audit(cp);
      const auto zb = zoneBoundAudit(cp, d, hyp);
      r.body["subcommand"] = "picture audits";
      r.body["hypothesis"] = std::string(hypothesisName(hyp));
      r.body["c6"] = c6.holds();
      Json low = Json::array();
      for (auto [v, deg] : c6.lowDegree) low.push_back(cp.map.vertices[static_cast<std::size_t>(v)].name + ":" + std::to_string(deg));
      r.body["low_degree"] = low;
      r.body["zone_bound"] = zb.holds();
      r.body["zone_threshold"] = zb.threshold;
      r.body["flagged_zones"] = zb.flagged;
      if (cp.map.surface == Surface::Disc) {
        const auto cv = curvatureAudit(cp);
        r.body["curvature_lhs"] = cv.lhs;
        r.body["curvature_rhs"] = cv.rhs;
        r.body["curvature"] = cv.holds();
        if (!cv.holds()) r.worst(kFail);
      }
      r.body["od2_hits"] = od2Probe(cp, d).size();
      if (!c6.holds() || !zb.holds()) r.worst(kFail);
    };
  });
  pic->get_subcommand("dump")->callback([&] {
    action = [&] {
      const auto [d, p] = loadPicture();
      r.body["subcommand"] = "picture dump";
      r.body["graph"] = graphDump(p, zones(p, d));
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "bounded word problem");
  SearchBudget budget;
  double seconds = 60;
  std::string certOut, splitText;
  std::size_t probeLen = 0;
  solve->add_option("--desc", descFile, "description file")->required();
  solve->add_option("--word", fpWordText, "letters such as f1:c f2:c^2");
  solve->add_option("--split", splitText, "\"W1 | W2\": check both parts of a split of R^n");
  solve->add_option("--probe", probeLen, "check factor elements and H-words up to this length");
  solve->add_option("--max-cliques", budget.maxCliques);
  solve->add_option("--max-label", budget.maxLabelLength, "0 for the default bound");
  solve->add_option("--max-graphs", budget.maxGraphs);
  solve->add_option("--time", seconds, "seconds");
  solve->add_option("--iso-c", budget.isoperimetricC, "constant C in f(m) = C m^2");
  solve->add_option("--certificate", certOut, "write the certificate picture here");
  solve->add_option("--max-cosets", maxCosets);
  solve->callback([&] {
    action = [&] {
      const auto d = parseDescription(r.load(descFile));
      budget.timeLimit = std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
      r.absorb(fpWordText + "|" + splitText + "|" + std::to_string(probeLen) + "|" + std::to_string(budget.maxCliques) + "|" +
               std::to_string(budget.maxLabelLength) + "|" + std::to_string(budget.maxGraphs) + "|" +
               std::to_string(budget.isoperimetricC));
      const auto o = makeOracles(d, maxCosets);
      r.body["subcommand"] = "solve";
      r.body["threads"] = threads;
      auto solved = [&](const SolveResult& s) {
        Json j = {{"word", d.fp.format(s.reduced)},
                  {"verdict", std::string(verdictName(s.verdict))},
                  {"reason", s.reason},
                  {"rewrites", s.steps.size()},
                  {"words_visited", s.wordsVisited},
                  {"label_bound", s.labelBound}};
        if (!s.cap.empty()) j["cap"] = s.cap;
        if (timings) j["seconds"] = s.seconds;
        return j;
      };
      auto code = [](Verdict v) { return v == Verdict::Trivial ? kPass : v == Verdict::Nontrivial ? kFail : kUndecided; };
      if (!splitText.empty()) {
        const auto bar = splitText.find('|');
        if (bar == std::string::npos) throw Error(ErrorCode::Parse, "--split needs \"W1 | W2\"");
        const auto w = weinbaumCheck(d, parseFpWord(d.fp, splitText.substr(0, bar)), parseFpWord(d.fp, splitText.substr(bar + 1)),
                                     budget, o);
        r.body["first"] = solved(w.first);
        r.body["second"] = solved(w.second);
        r.body["split"] = w.pass() ? "PASS" : w.verdict == Verdict::Trivial ? "FAIL" : "INCONCLUSIVE";
        r.worst(w.pass() ? kPass : w.verdict == Verdict::Trivial ? kFail : kUndecided);
        return;
      }
      if (probeLen > 0) {
        const auto fr = freiheitssatzProbe(d, probeLen, budget, o);
        r.body["checked"] = fr.checked;
        r.body["skipped"] = fr.skipped;
        Json inc = Json::array(), bad = Json::array();
        for (const auto& it : fr.inconclusive) inc.push_back(it.what);
        for (const auto& it : fr.violations) bad.push_back(it.what);
        r.body["inconclusive"] = inc;
        r.body["violations"] = bad;
        r.worst(!fr.violations.empty() ? kFail : !fr.inconclusive.empty() ? kUndecided : kPass);
        return;
      }
      const auto s = boundedWordProblem(d, parseFpWord(d.fp, fpWordText), budget, o);
      r.body["result"] = solved(s);
      if (s.certificate && !certOut.empty()) {
        std::ofstream(certOut) << formatPicture(*s.certificate, d.fp);
        r.body["certificate"] = certOut;
      }
      r.worst(code(s.verdict));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    action();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::Parse:
      case ErrorCode::InvalidDescription:
      case ErrorCode::InvalidPicture:
        std::cerr << "orp: " << e.what() << '\n';
        return kUsage;
      case ErrorCode::HypothesisFail:
      case ErrorCode::NotMaximal:
      case ErrorCode::OracleUnavailable:
      case ErrorCode::UnsupportedOrder:
        r.body["error"] = e.what();
        r.worst(kUndecided);
        break;
      default:
        r.body["error"] = e.what();
        r.worst(kFail);
    }
  }

  std::ostringstream hex;
  hex << std::hex << r.digest;
  r.body["inputs_digest"] = hex.str();
  r.body["exit"] = r.exit;
  if (timings)
    r.body["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - r.t0).count();
  if (json)
    std::cout << r.body.dump(2) << '\n';
  else
    printText(std::cout, "", r.body);
  return r.exit;
}
