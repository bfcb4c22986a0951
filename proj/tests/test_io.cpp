#include "doctest.h"
#include "orp/io.hpp"
#include "support.hpp"

using namespace orp;
using namespace orp::testing;

TEST_CASE("comments and tokens") {
  CHECK(stripLine("  a = f1:c   # the letter a") == "a = f1:c");
  CHECK(stripLine("# whole line") == "");
  // '#' inside a token is not a comment
  CHECK(stripLine("vertex u sign + rotation e1 e1#2") == "vertex u sign + rotation e1 e1#2");
  CHECK(splitWords(" x  y\tz ") == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("alphabets and words") {
  auto alpha = parseAlphabet("letter t order 2\npair x X order 3\nletter y order 0\n");
  CHECK(alpha.size() == 5);
  const auto t = *alpha.find("t");
  CHECK(alpha.inverse(t) == t);
  CHECK(alpha.inverse(*alpha.find("x")) == *alpha.find("X"));
  CHECK(alpha.order(*alpha.find("X")).is(3));
  CHECK(alpha.inverse(*alpha.find("y")) == *alpha.find("y'"));

  const Word w = parseWord(alpha, "x y' t");
  CHECK(alpha.format(w) == "x y' t");
  CHECK_THROWS_AS(parseWord(alpha, "z"), Error);
  const Word v = parseWord(alpha, "z z'", true);
  CHECK(alpha.inverse(v[0]) == v[1]);
}

TEST_CASE("factors and letters") {
  auto c6 = parseFactor("cyclic 6");
  CHECK(c6->describe() == "cyclic 6");
  auto s3 = parseFactor("perm 3 2,1,3 2,3,1");
  CHECK(s3->elements()->size() == 6);
  CHECK_THROWS_AS(parseFactor("cyclic 1"), Error);
  CHECK_THROWS_AS(parseFactor("perm 3 2,1"), Error);
  CHECK_THROWS_AS(parseFactor("dihedral 4"), Error);

  const FreeProduct fp = parseFreeProduct("factor 1 cyclic 3\nfactor 2 cyclic 4\n");
  CHECK(parseFpLetter(fp, "f2:c^3") == FpLetter{2, 3});
  CHECK(parseFpWord(fp, "1").empty());
  CHECK(parseFpWord(fp, "f1:c f2:c^2").size() == 2);
  CHECK_THROWS_AS(parseFpLetter(fp, "f3:c"), Error);
  CHECK_THROWS_AS(parseFpLetter(fp, "f1:1"), Error);  // identity letters are refused
}

TEST_CASE("descriptions") {
  const auto d = parseDescription(readFile(fixture("c3c3.gtg")));
  CHECK(d.l() == 4);
  CHECK(d.n == 2);
  CHECK(d.exps == std::vector<ExpPair>{{1, 1}});
  CHECK(d.fp.format(relator(d)) == "f1:c f2:c f1:c f2:c^2");

  const std::string body = "factor 1 cyclic 3\nfactor 2 cyclic 3\na f1:c\nb = f1:c\nU = f2:c\nexps (1,1) (2, 1)\nn = 3\n";
  const auto e = parseDescription(body);
  CHECK(e.k() == 2);
  CHECK(e.n == 3);

  auto lineOf = [](const std::string& text) {
    try {
      parseDescription(text);
    } catch (const Error& err) {
      return std::string(err.what());
    }
    return std::string();
  };
  CHECK(lineOf("factor 1 cyclic 3\nfactor 2 cyclic 3\na = f1:c\nq = 2\n").find("line 4") != std::string::npos);
  CHECK(lineOf("factor 1 cyclic 3\nfactor 2 cyclic 3\nexps = (1,1) junk\n").find("line 3") != std::string::npos);
  CHECK_THROWS_AS(parseDescription("factor 1 cyclic 3\nfactor 2 cyclic 3\na = f1:c\n"), Error);
  // U starting in the factor of a is not a description
  CHECK_THROWS_AS(parseDescription("factor 1 cyclic 3\nfactor 2 cyclic 3\na = f1:c\nb = f1:c\nU = f1:c\n"
                                   "exps = (1,1)\nn = 2\n"),
                  Error);
}
