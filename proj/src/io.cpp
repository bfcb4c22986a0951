#include "orp/io.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace orp {

namespace {

[[noreturn]] void fail(std::size_t lineNo, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(lineNo) + ": " + msg);
}

long long toInt(std::string_view s, std::size_t lineNo) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(lineNo, "bad integer '" + std::string(s) + "'");
  return v;
}

template <class F>
void forEachLine(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string line = stripLine(raw);
    if (!line.empty()) f(line, lineNo);
  }
}

// "key = value" or "key value"; returns the value part.
std::string valueAfter(const std::string& line, std::string_view key) {
  std::string rest = line.substr(key.size());
  const auto pos = rest.find_first_not_of(" \t");
  if (pos == std::string::npos) return "";
  rest = rest.substr(pos);
  if (!rest.empty() && rest[0] == '=') rest = stripLine(rest.substr(1));
  return rest;
}

bool startsWithKey(const std::string& line, std::string_view key) {
  if (line.compare(0, key.size(), key) != 0) return false;
  return line.size() == key.size() || line[key.size()] == ' ' || line[key.size()] == '\t' || line[key.size()] == '=';
}

const std::set<std::string> kPictureKeys = {"surface", "vertex", "clique", "arc",
                                            "corner", "corners", "boundary", "boundary_label"};

}  // namespace

std::vector<std::string> splitWords(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string stripLine(std::string_view line) {
  // '#' opens a comment only at the start of a token; "e#2" is a picture token
  for (std::size_t i = 0; i < line.size(); ++i)
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
      line = line.substr(0, i);
      break;
    }
  const auto b = line.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = line.find_last_not_of(" \t\r\n");
  return std::string(line.substr(b, e - b + 1));
}

Alphabet parseAlphabet(const std::string& text) {
  Alphabet alpha;
  forEachLine(text, [&](const std::string& line, std::size_t no) {
    const auto t = splitWords(line);
    if (t[0] == "letter") {
      if (t.size() != 4 || t[2] != "order") fail(no, "expected: letter <name> order <k>");
      const long long k = toInt(t[3], no);
      const Order o = k == 0 ? Order::infinite() : Order::finite(static_cast<int>(k));
      if (o.is(2))
        alpha.addSelfInverse(t[1]);
      else
        alpha.addPair(t[1], t[1] + "'", o);
    } else if (t[0] == "pair") {
      if (t.size() != 3 && !(t.size() == 5 && t[3] == "order")) fail(no, "expected: pair <x> <y> [order <k>]");
      const long long k = t.size() == 5 ? toInt(t[4], no) : 0;
      alpha.addPair(t[1], t[2], k == 0 ? Order::infinite() : Order::finite(static_cast<int>(k)));
    }
  });
  return alpha;
}

Word parseWord(Alphabet& alphabet, const std::string& text, bool autoDeclare) {
  Word w;
  for (const auto& tok : splitWords(text)) {
    auto s = alphabet.find(tok);
    if (!s && autoDeclare) {
      const bool primed = tok.size() > 1 && tok.back() == '\'';
      const std::string base = primed ? tok.substr(0, tok.size() - 1) : tok;
      alphabet.addPair(base, base + "'", Order::infinite());
      s = alphabet.find(tok);
    }
    if (!s) throw Error(ErrorCode::Parse, "unknown letter '" + tok + "'");
    w.push_back(*s);
  }
  return w;
}

std::shared_ptr<const FactorGroup> parseFactor(std::string_view body) {
  const auto t = splitWords(body);
  if (t.empty()) throw Error(ErrorCode::Parse, "empty factor declaration");
  if (t[0] == "cyclic") {
    if (t.size() != 2) throw Error(ErrorCode::Parse, "expected: cyclic <order>");
    const long long m = toInt(t[1], 0);
    if (m < 0 || m == 1) throw Error(ErrorCode::Parse, "cyclic order must be 0 (infinite) or >= 2");
    return std::make_shared<CyclicGroup>(m == 0 ? Order::infinite() : Order::finite(static_cast<int>(m)));
  }
  if (t[0] == "perm") {
    if (t.size() < 3) throw Error(ErrorCode::Parse, "expected: perm <degree> <images> ...");
    const int deg = static_cast<int>(toInt(t[1], 0));
    std::vector<PermutationGroup::Perm> gens;
    for (std::size_t i = 2; i < t.size(); ++i) {
      PermutationGroup::Perm g;
      std::istringstream in(t[i]);
      std::string num;
      while (std::getline(in, num, ',')) g.push_back(static_cast<int>(toInt(num, 0)) - 1);
      if (static_cast<int>(g.size()) != deg) throw Error(ErrorCode::Parse, "generator '" + t[i] + "' has wrong degree");
      gens.push_back(std::move(g));
    }
    return std::make_shared<PermutationGroup>(deg, std::move(gens));
  }
  throw Error(ErrorCode::Parse, "unknown factor kind '" + t[0] + "'");
}

FpLetter parseFpLetter(const FreeProduct& fp, std::string_view token) {
  static const std::regex re(R"(f([12]):(\S+))");
  std::cmatch m;
  if (!std::regex_match(token.begin(), token.end(), m, re))
    throw Error(ErrorCode::Parse, "letter must look like f1:<element>, got '" + std::string(token) + "'");
  const int f = m[1].str()[0] - '0';
  return fp.letter(f, fp.factor(f).parse(m[2].str()));
}

FpWord parseFpWord(const FreeProduct& fp, std::string_view text) {
  FpWord w;
  for (const auto& tok : splitWords(text)) {
    if (tok == "1") continue;
    w.push_back(parseFpLetter(fp, tok));
  }
  return w;
}

FreeProduct parseFreeProduct(const std::string& text) {
  std::shared_ptr<const FactorGroup> g[2];
  forEachLine(text, [&](const std::string& line, std::size_t no) {
    const auto t = splitWords(line);
    if (t[0] != "factor") return;
    if (t.size() < 3 || (t[1] != "1" && t[1] != "2")) fail(no, "expected: factor 1|2 <kind> ...");
    try {
      g[t[1][0] - '1'] = parseFactor(line.substr(line.find(t[1]) + 1));
    } catch (const Error& e) {
      fail(no, e.what());
    }
  });
  if (!g[0] || !g[1]) throw Error(ErrorCode::Parse, "both factor 1 and factor 2 must be declared");
  return FreeProduct(g[0], g[1]);
}

GtgDescription parseDescription(const std::string& text) {
  GtgDescription d{parseFreeProduct(text), {}, {}, {}, {}, 0};
  bool haveA = false, haveB = false, haveU = false, haveExps = false, haveN = false;
  forEachLine(text, [&](const std::string& line, std::size_t no) {
    const std::string key = splitWords(line)[0];
    try {
      if (key == "factor" || kPictureKeys.contains(key)) return;
      if (startsWithKey(line, "a")) {
        d.a = parseFpLetter(d.fp, valueAfter(line, "a"));
        haveA = true;
      } else if (startsWithKey(line, "b")) {
        d.b = parseFpLetter(d.fp, valueAfter(line, "b"));
        haveB = true;
      } else if (startsWithKey(line, "U")) {
        d.U = parseFpWord(d.fp, valueAfter(line, "U"));
        haveU = true;
      } else if (startsWithKey(line, "n")) {
        d.n = static_cast<int>(toInt(valueAfter(line, "n"), no));
        haveN = true;
      } else if (startsWithKey(line, "exps")) {
        static const std::regex pair(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
        const std::string v = valueAfter(line, "exps");
        // every non-blank character has to belong to some (alpha,beta)
        std::string leftover = v;
        for (auto it = std::sregex_iterator(v.begin(), v.end(), pair); it != std::sregex_iterator(); ++it)
          d.exps.push_back({toInt((*it)[1].str(), no), toInt((*it)[2].str(), no)});
        leftover = std::regex_replace(leftover, pair, "");
        if (d.exps.empty() || !stripLine(leftover).empty()) fail(no, "exps must be a list of (alpha,beta)");
        haveExps = true;
      } else {
        fail(no, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse && std::string(e.what()).find("line ") != std::string::npos) throw;
      fail(no, e.what());
    }
  });
  if (!haveA || !haveB || !haveU || !haveExps || !haveN)
    throw Error(ErrorCode::Parse, "description needs a, b, U, exps and n");
  validate(d);
  return d;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace orp
