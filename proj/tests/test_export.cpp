#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "helpers.hpp"
#include "rankone/export.hpp"

using namespace rankone;
using namespace fixtures;

namespace {

// ---------------------------------------------------------------------------
// spec files

TEST(SpecFile, ParsesTheWorkedSpec) {
  const SpecFile f = parse_spec(
      "# worked\n"
      "convention corner\n"
      "n1 2\n"
      "level1 1\n"
      "stage 2 : ( 0, 0) (2,2)   # copies\n");
  ASSERT_TRUE(f.is_explicit());
  EXPECT_EQ(f.construction(), worked_spec());
}

TEST(SpecFile, RoundTripsRandomExplicitSpecs) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const SpecFile f{random_spec(rng)};
    const std::string text = print_spec(f);
    const SpecFile g = parse_spec(text);
    EXPECT_EQ(g, f) << text;
    EXPECT_EQ(print_spec(g), text);
  }
}

TEST(SpecFile, RoundTripsGenerators) {
  NoneSpecParams n;
  n.depth = 3;
  n.candidate_cap = 1000000;
  AllGenerator a;
  a.depth = 3;
  a.n1 = 3;
  a.eps = {Q(1, 2), Q(1, 3), parse_rational("0.01")};
  a.alphas = {{Q(2), false}, {Q(3, 5), true}};
  for (const SpecFile& f : {SpecFile{n}, SpecFile{NoneSpecParams{}}, SpecFile{a}, SpecFile{AllGenerator{}}})
    EXPECT_EQ(parse_spec(print_spec(f)), f) << print_spec(f);
}

TEST(SpecFile, GeneratorsMaterialize) {
  const SpecFile none = parse_spec("generator none\ndepth 2\n");
  EXPECT_EQ(none.construction(), build_none({2}).spec);
  const SpecFile all = parse_spec("generator all\ndepth 3\nalpha sqrt:2\neps 1/2 1/4 1/8\n");
  AllSpecParams p;
  p.depth = 3;
  p.alphas = {Direction::tan_sqrt(2)};
  EXPECT_EQ(all.construction(), build_all(p).spec);
}

TEST(SpecFile, MalformedInputIsAParseError) {
  const std::vector<std::string> bad{
      "",
      "convention square\nn1 2\n",
      "convention corner\n",
      "convention corner\nn1 2\nstage 3 : (0,0) (2,2)\n",
      "convention corner\nn1 2\nstage 2 (0,0) (2,2)\n",
      "convention corner\nn1 2\nstage 2 : (0,0) (2;2)\n",
      "convention corner\nn1 two\n",
      "generator some\n",
      "generator none\n",
      "generator none\neps 1/2\ndepth 2\n",
      "generator all\ndepth 2\nalpha sqrt:4\n",
      "generator all\ndepth 3\neps 1/2 1/4\n",
      "convention corner\ngenerator none\n",
      "depth 3\n",
      "frobnicate 1\n",
  };
  for (const auto& text : bad) {
    try {
      parse_spec(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::parse_error) << text << " -> " << e.what();
    }
  }
}

TEST(SpecFile, InvalidPlacementsKeepTheirErrorCode) {
  try {
    parse_spec("convention corner\nn1 2\nstage 2 : (0,0) (1,1)\n");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overlapping_boxes);
  }
}

// ---------------------------------------------------------------------------
// JSON

TEST(ExportJson, WorkedSpecStageTwo) {
  const Construction c(worked_spec());
  const json j = export_build(c, {2});
  EXPECT_EQ(j["schema"], "rankone.build/1");
  ASSERT_EQ(j["stages"].size(), 2u);
  EXPECT_EQ(j["stages"][1]["levels"].size(), 16u);
  EXPECT_EQ(j["stages"][1]["level_length"], "1/2");
  EXPECT_EQ(j["stages"][0]["level_length"], "1/1");
  ASSERT_EQ(j["strong_recurrence"].size(), 1u);
  EXPECT_EQ(j["strong_recurrence"][0]["vectors"], json::parse(R"([["-2","-2"],["2","2"]])"));
  EXPECT_EQ(spec_from_json(j["spec"]), worked_spec());
}

TEST(ExportJson, NoFloatingPointInNumericFields) {
  const Construction c(build_none({3}).spec);
  const std::string text = export_build(c).dump() + to_json(build_none({3})).dump() +
                           to_json(direction_report(c, Q(1, 4), 3)).dump();
  const std::regex number(R"([:\[,]\s*-?[0-9]+\.[0-9])");
  EXPECT_FALSE(std::regex_search(text, number));
}

TEST(ExportJson, LevelMapsAgreeWithTheEngine) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const Construction c(random_spec(rng, 2, 400));
    const json j = export_build(c);
    for (std::size_t i = 1; i <= c.stage_count(); ++i)
      for (const auto& lv : j["stages"][i - 1]["levels"]) {
        const auto iv = c.level_interval(i, vector_from_json(lv["position"]));
        EXPECT_EQ(rational_from_json(lv["lo"]), iv.lo);
        EXPECT_EQ(rational_from_json(lv["hi"]), iv.hi);
      }
  }
}

TEST(ExportJson, DirectionsRoundTrip) {
  for (const Direction& d : {Direction::of(V(3, -2)), Direction::of(V(0, 1)), Direction::tan_sqrt(2),
                             Direction::tan_sqrt(Q(7, 3), true)}) {
    const Direction e = direction_from_json(to_json(d));
    EXPECT_TRUE(e == d) << d.str();
  }
}

// ---------------------------------------------------------------------------
// certificates

TEST(Certificates, EveryBuilderOutputVerifies) {
  const NoneBuild n = build_none({4});
  EXPECT_TRUE(verify_document(json::parse(to_json(n).dump())).ok);

  AllGenerator g;
  g.depth = 4;
  g.alphas = {{Q(2), false}, {Q(5), true}};
  const AllBuild a = build_all(g.params());
  const VerifyResult ra = verify_document(json::parse(to_json(a, g).dump()));
  EXPECT_TRUE(ra.ok) << ra.reason;

  const Construction c(a.spec);
  const IntervalSet target{c.level_interval(1, V(1, -1))};
  const auto cert = greedy_sweepout(c, target, Direction::of(V(1, 0)), Q(1, 10), parse_rational("0.49"));
  ASSERT_TRUE(cert.complete);
  const json doc = json::parse(to_json(cert, c.spec()).dump());
  const VerifyResult rs = verify_document(doc);
  EXPECT_TRUE(rs.ok) << rs.reason;
  const auto back = sweepout_from_json(doc);
  EXPECT_EQ(back.target, cert.target);
  ASSERT_EQ(back.pieces.size(), cert.pieces.size());
  EXPECT_EQ(back.pieces[0].v, cert.pieces[0].v);
}

TEST(Certificates, TamperedDocumentsAreRejected) {
  const Construction c(worked_spec());
  const IntervalSet target{c.level_interval(1, V(0, 0))};
  const auto cert = greedy_sweepout(c, target, Direction::of(V(1, 1)), Q(1, 10), parse_rational("0.49"));
  ASSERT_TRUE(cert.complete);
  const json good = to_json(cert, c.spec());
  ASSERT_TRUE(verify_document(good).ok);

  json j = good;
  j["pieces"][0]["v"] = json::array({"2", "0"});
  EXPECT_FALSE(verify_document(j).ok);
  j = good;
  j["alpha"] = "1/2";
  EXPECT_EQ(verify_document(j).reason.substr(0, 11), "alpha range");
  j = good;
  j["pieces"][0]["image"] = j["pieces"][0]["set"];
  EXPECT_FALSE(verify_document(j).ok);

  json n = to_json(build_none({3}));
  n["stages"][0]["m_star"] = "5/7";
  EXPECT_FALSE(verify_document(n).ok);

  AllGenerator g;
  g.depth = 3;
  g.alphas = {{Q(2), false}};
  json a = to_json(build_all(g.params()), g);
  a["audit"][0]["gap"] = "1/3";
  EXPECT_FALSE(verify_document(a).ok);
}

TEST(Certificates, MalformedDocumentsThrow) {
  for (const char* text : {R"({})", R"({"schema":"rankone.sweepout/1"})", R"({"schema":"rankone.nope/1"})",
                           R"({"schema":"rankone.none/1","spec":{"convention":"corner","n1":2}})"}) {
    try {
      verify_document(json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == Errc::parse_error || e.code() == Errc::unsupported_format) << text;
    }
  }
}

// ---------------------------------------------------------------------------
// CSV and SVG

TEST(ExportCsv, EmptyReportIsHeaderOnly) {
  const Construction c(worked_spec());
  const std::string csv = report_csv(direction_report(c, Q(1, 4), 1));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(csv.substr(0, 8), "w_x,w_y,");
}

TEST(ExportCsv, RowsHoldExactEnclosures) {
  const Construction c(build_none({3}).spec);
  const DirectionReport rep = direction_report(c, Q(1, 4), 3);
  const std::string csv = report_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    ASSERT_EQ(f.size(), 12u);
    const auto& h = rep.hits[rows++];
    EXPECT_EQ(f[0], h.w.x.str());
    if (!h.window) continue;
    const Rational lo_lower{Integer(f[4]), Integer(f[5])}, hi_upper{Integer(f[10]), Integer(f[11])};
    EXPECT_TRUE(h.window->arc.lo.bracket(64)->lo == lo_lower);
    EXPECT_TRUE(h.window->arc.hi.bracket(64)->hi == hi_upper);
  }
  EXPECT_EQ(rows, rep.hits.size());
}

TEST(ExportSvg, NonRecurrentPlacementDiagram) {
  const NoneBuild b = build_none({3});
  const Construction c(b.spec);
  const std::string svg = placement_svg(c, 3);
  // Two copies, one strip per earlier time.
  const auto count = [&](const std::string& tag) {
    std::size_t n = 0;
    for (auto p = svg.find(tag); p != std::string::npos; p = svg.find(tag, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("<title>copy at"), 2u);
  EXPECT_EQ(count("<polygon"), upper_times(c, 3).size());
  // The drawn geometry is the certified one.
  const auto& rec = b.certificate.stages.back();
  EXPECT_EQ(rec.stage, 3u);
  EXPECT_TRUE(rec.below && rec.clear);
  for (const auto& w : upper_times(c, 3))
    EXPECT_FALSE(box_tunnel_intersects(c.stage(3).shape, w, c.stage(3).shape.translated(rec.chosen)));
}

TEST(ExportSvg, DirectionWheel) {
  const Construction c(build_none({3}).spec);
  const std::string svg = report_svg(direction_report(c, Q(1, 4), 3));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("steelblue"), std::string::npos);
}

TEST(ExportFormat, UnknownFormatIsRejected) {
  EXPECT_EQ(parse_format("svg"), Format::svg);
  try {
    parse_format("png");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_format);
  }
}

}  // namespace
