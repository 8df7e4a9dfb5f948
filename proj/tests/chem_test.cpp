#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace psys {
namespace {

using testing::data_path;
using testing::error_code_of;

std::size_t parse_error_line(const std::function<void()>& body) {
  try {
    body();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const AttributeTable& bonds() {
  static const AttributeTable t = chem::load_bond_dataset(data_path("bonds.csv"));
  return t;
}

const chem::GroundTruthFixture& fixture() {
  static const auto f = chem::load_fixture(data_path("tableS1.txt"), data_path("table2.txt"));
  return f;
}

const PeriodicSystem& system() {
  static const PeriodicSystem ps =
      build_periodic_system(bonds(), io::load_classes(data_path("classes.txt"), bonds().elements()));
  return ps;
}

TEST(ReorientTest, MaximumMapsToZero) {
  const std::vector<Decimal> v{Decimal(10), Decimal(30), Decimal(30)};
  EXPECT_EQ(chem::reorient_attribute(v), (std::vector<Decimal>{Decimal(20), Decimal(0), Decimal(0)}));
  EXPECT_EQ(error_code_of([] { chem::reorient_attribute(std::vector<Decimal>{}); }), ErrorCode::empty_input);
}

TEST(ReorientTest, ReversesRankingAndTwiceRestoresIt) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-500, 500);
  for (int round = 0; round < 100; ++round) {
    std::vector<Decimal> v;
    for (int i = 0; i < 12; ++i) v.push_back(Decimal::from_parts(d(rng), 2));
    const auto once = chem::reorient_attribute(v);
    const auto twice = chem::reorient_attribute(once);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        ASSERT_EQ(v[i] < v[j], once[j] < once[i]);
        ASSERT_EQ(v[i] < v[j], twice[i] < twice[j]);
      }
    }
  }
}

TEST(ReorientTest, ReorientedRadiusGivesTheSameOrder) {
  const auto reoriented = chem::reoriented_bond_table(bonds());
  EXPECT_EQ(reoriented.attributes()[1].orientation, Orientation::ascending);
  const auto a = product_order(quotient_by_equivalence(bonds()).table);
  const auto b = product_order(quotient_by_equivalence(reoriented).table);
  EXPECT_TRUE(a == b);
}

TEST(BondDatasetTest, ShippedFile) {
  const auto& t = bonds();
  EXPECT_EQ(t.size(), 94u);
  ASSERT_EQ(t.attribute_count(), 2u);
  EXPECT_EQ(t.attributes()[0].name, "electronegativity");
  EXPECT_EQ(t.attributes()[0].orientation, Orientation::ascending);
  EXPECT_EQ(t.attributes()[1].name, "radius_pm");
  EXPECT_EQ(t.attributes()[1].orientation, Orientation::descending);
  EXPECT_EQ(t.elements().front(), ElementId("H"));
  const auto bk = t.row(t.require_index(ElementId("Bk")));
  const auto cf = t.row(t.require_index(ElementId("Cf")));
  EXPECT_TRUE(std::ranges::equal(bk, cf));
}

TEST(BondDatasetTest, RejectsBadFiles) {
  std::istringstream dup("element,electronegativity,radius_pm\nH,2.2,32\nH,2.2,32\n");
  EXPECT_EQ(error_code_of([&] { chem::parse_bond_records(dup); }), ErrorCode::duplicate_element);
  std::istringstream missing("element,electronegativity\nH,2.2\n");
  EXPECT_EQ(error_code_of([&] { chem::parse_bond_records(missing); }), ErrorCode::missing_column);
  std::istringstream negative("element,electronegativity,radius_pm\nH,2.2,-3\n");
  EXPECT_EQ(error_code_of([&] { chem::parse_bond_records(negative); }), ErrorCode::invalid_argument);
  std::istringstream garbage("element,electronegativity,radius_pm\nH,2.2,32\nLi,abc,133\n");
  EXPECT_EQ(parse_error_line([&] { chem::parse_bond_records(garbage); }), 3u);
}

TEST(BondDatasetTest, MissingFileNamesThePath) {
  try {
    chem::load_bond_dataset("/nonexistent/bonds.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_error);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/bonds.csv"), std::string::npos);
  }
}

TEST(AttributeCsvTest, HeaderSuffixesAndComments) {
  std::istringstream in("# comment\nelement,z:asc,r:desc\na,1,2\nb,2,1\n");
  const auto t = io::parse_attribute_csv(in);
  EXPECT_EQ(t.attributes()[0].orientation, Orientation::ascending);
  EXPECT_EQ(t.attributes()[1].orientation, Orientation::descending);
  std::istringstream bad_header("name,z\na,1\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_attribute_csv(bad_header); }), 1u);
  std::istringstream short_row("element,z,r\na,1\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_attribute_csv(short_row); }), 2u);
  std::istringstream bad_label("element,z\na b,1\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_attribute_csv(bad_label); }), 2u);
}

TEST(ClassesTest, ShippedFile) {
  const auto h = io::load_classes(data_path("classes.txt"), bonds().elements());
  EXPECT_EQ(h.edge_count(), 44u);
  std::size_t singletons = 0, larger = 0;
  for (const auto& e : h.edges()) (e.members.size() == 1 ? singletons : larger)++;
  EXPECT_EQ(singletons, 18u);
  EXPECT_EQ(larger, 26u);
}

TEST(ClassesTest, LineFormat) {
  std::istringstream in("F,Cl,Br,I\n");
  const auto h = io::parse_classes(in);
  ASSERT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(h.edges()[0].members.size(), 4u);
  EXPECT_EQ(h.edges()[0].index, 0);

  std::istringstream empty("H\n\nLi\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_classes(empty); }), 2u);
  std::istringstream twice("H,H\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_classes(twice); }), 1u);
  std::istringstream blank_member("H,,Li\n");
  EXPECT_EQ(parse_error_line([&] { io::parse_classes(blank_member); }), 1u);
  std::istringstream unknown("H,Xx\n");
  EXPECT_EQ(error_code_of([&] { io::parse_classes(unknown, std::vector<ElementId>{ElementId("H")}); }),
            ErrorCode::unknown_element);
}

TEST(OrderListsTest, ShippedFixtureShape) {
  const auto& f = fixture();
  EXPECT_EQ(f.records.size(), 93u);
  for (const auto& [id, rec] : f.records) {
    EXPECT_EQ(rec.down.size() + rec.up.size() + rec.incomparable.size(), 94u) << id;
    EXPECT_TRUE(rec.down.contains(id)) << id;
    EXPECT_TRUE(rec.up.contains(id)) << id;
  }
  const auto& h = f.records.at(ElementId("H"));
  EXPECT_EQ(h.down.size(), 78u);
  EXPECT_EQ(h.incomparable.size(), 15u);
  EXPECT_EQ(f.within_degrees.size(), 26u);
}

TEST(OrderListsTest, ParsesWrappedRecords) {
  std::istringstream in(
      "preamble line\n"
      "Dominated bonds.\n"
      "a :( 2 ): a,\n"
      "  b\n"
      "b :( 1 ): b\n"
      "Dominating bonds.\n"
      "a :( 1 ): a\n"
      "b :( 2 ): a, b\n"
      "Incomparable bonds.\n"
      "a :( 0 ): \n"
      "b :( 0 ):\n");
  const auto r = chem::parse_order_lists(in);
  EXPECT_EQ(r.at(ElementId("a")).down, (ElementSet{ElementId("a"), ElementId("b")}));
  EXPECT_TRUE(r.at(ElementId("b")).incomparable.empty());
}

TEST(OrderListsTest, CountIsAChecksum) {
  std::istringstream in("Dominated bonds.\na :( 3 ): a, b\nDominating bonds.\nIncomparable bonds.\n");
  EXPECT_EQ(parse_error_line([&] { chem::parse_order_lists(in); }), 2u);
  std::istringstream junk("Dominated bonds.\nnot a record\n");
  EXPECT_EQ(parse_error_line([&] { chem::parse_order_lists(junk); }), 2u);
  std::istringstream truncated("Dominated bonds.\na :( 1 ): a\n");
  EXPECT_EQ(error_code_of([&] { chem::parse_order_lists(truncated); }), ErrorCode::parse_error);
}

TEST(PublishedDegreesTest, Parses) {
  std::istringstream in("# header\nGe, Sn, Pb & 1\nAl, Ga, In, Tl & 0.66\n");
  const auto rows = chem::parse_published_degrees(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].members.size(), 4u);
  EXPECT_EQ(rows[1].value, Decimal::parse("0.66"));
  std::istringstream bad("Ge, Sn & x\n");
  EXPECT_EQ(parse_error_line([&] { chem::parse_published_degrees(bad); }), 1u);
}

TEST(PublishedDegreesTest, TruncatedThirds) {
  EXPECT_TRUE(chem::matches_published({2, 3}, Decimal::parse("0.66")));
  EXPECT_TRUE(chem::matches_published({4, 6}, Decimal::parse("0.66")));
  EXPECT_TRUE(chem::matches_published({1, 3}, Decimal::parse("0.33")));
  EXPECT_TRUE(chem::matches_published({3, 6}, Decimal::parse("0.5")));
  EXPECT_TRUE(chem::matches_published({6, 6}, Decimal::parse("1")));
  EXPECT_FALSE(chem::matches_published({5, 6}, Decimal::parse("1")));
  EXPECT_FALSE(chem::matches_published({1, 2}, Decimal::parse("0.66")));
}

TEST(ChemistryOrderTest, PublishedSets) {
  const auto& p = system().order();
  EXPECT_EQ(down_set(p, ElementId("H")).size(), 78u);
  EXPECT_EQ(down_set(p, ElementId("Cs")), (ElementSet{ElementId("Cs")}));
  EXPECT_EQ(up_set(p, ElementId("O")), (ElementSet{ElementId("O")}));
  EXPECT_EQ(up_set(p, ElementId("Rb")).size(), 92u);
  EXPECT_TRUE(incomparables(p, ElementId("Rb")).empty());
  const auto inc = incomparables(p, ElementId("H"));
  EXPECT_EQ(inc.size(), 15u);
  for (const char* x : {"C", "F", "O", "N", "Cl"}) EXPECT_TRUE(inc.contains(ElementId(x))) << x;
  EXPECT_TRUE(is_chain(p, ElementSet{ElementId("F"), ElementId("Cl"), ElementId("Br"), ElementId("I")}));
  EXPECT_FALSE(is_chain(p, ElementSet{ElementId("Am"), ElementId("Bk")}));
  EXPECT_FALSE(is_total_order(p));
}

TEST(ChemistryOrderTest, SpearmanOnShippedData) {
  const double rho = spearman(bonds(), chem::electronegativity, chem::radius);
  EXPECT_NEAR(rho, 0.83, 0.01);
  EXPECT_NEAR(spearman(chem::reoriented_bond_table(bonds()), chem::electronegativity, chem::radius), rho, 1e-12);
}

TEST(InversionsTest, HistoricalPairsAreIncomparable) {
  const auto t = io::load_attribute_csv(data_path("inversions.csv"));
  EXPECT_EQ(t.size(), 8u);
  const auto p = product_order(t);
  auto incomparable = [&](const char* a, const char* b) {
    return !p.comparable(p.require_index(ElementId(a)), p.require_index(ElementId(b)));
  };
  EXPECT_TRUE(incomparable("Ar", "K"));
  EXPECT_TRUE(incomparable("Co", "Ni"));
  EXPECT_TRUE(incomparable("Te", "I"));
  EXPECT_TRUE(p.lt(ElementId("H"), ElementId("Ar")));
  EXPECT_TRUE(is_total_order(product_order(t.select({"Z"}))));
}

TEST(ReportTest, ShippedDataReconciles) {
  const auto r = chem::reproduce_report(bonds(), system(), fixture());
  EXPECT_EQ(r.representatives, 93u);
  EXPECT_EQ(r.stats, (PairStats{4278, 3548, 730}));
  EXPECT_EQ(r.order_records_matched, 93u);
  EXPECT_TRUE(r.order_mismatches.empty());
  EXPECT_EQ(r.degrees.size(), 26u);
  EXPECT_EQ(r.non_singleton_hyperedges, 26u);
  EXPECT_EQ(r.folded.at(ElementId("Cf")), ElementId("Bk"));
  for (const auto& c : r.degrees) EXPECT_TRUE(c.hyperedge.has_value());
}

TEST(ReportTest, PerturbedListFlagsExactlyThatBond) {
  auto f = fixture();
  auto& rec = f.records.at(ElementId("Na"));
  const ElementId moved = *rec.incomparable.begin();
  rec.incomparable.erase(moved);
  rec.down.insert(moved);
  const auto r = chem::reproduce_report(bonds(), system(), f);
  ASSERT_FALSE(r.order_mismatches.empty());
  for (const auto& m : r.order_mismatches) EXPECT_EQ(m.bond, ElementId("Na"));
  EXPECT_EQ(r.order_records_matched, 92u);
  EXPECT_FALSE(r.all_ok());
  std::ostringstream text;
  chem::write_report(text, r);
  EXPECT_NE(text.str().find("MISMATCH order down Na missing=[" + moved.str() + "]"), std::string::npos);
}

TEST(ReportTest, PerturbedDegreeIsFlagged) {
  auto f = fixture();
  f.within_degrees.at(0).value = Decimal::parse("0.5");
  const auto r = chem::reproduce_report(bonds(), system(), f);
  EXPECT_FALSE(r.degrees.at(0).ok);
}

}  // namespace
}  // namespace psys
