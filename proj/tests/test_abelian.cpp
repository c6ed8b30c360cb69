#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "property_suites.hpp"
#include "trimgraph/abelian.hpp"

using namespace trimgraph;

namespace {
IntMatrix from_rows(std::vector<std::vector<int>> rows) {
  IntMatrix m(static_cast<int>(rows.size()),
              rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}
}  // namespace

TEST_CASE("cokernel presentations") {
  FGAbelianGroup g = cokernel(from_rows({{2}}));
  CHECK(g.torsion == IntVec{2});
  CHECK(g.free_rank == 0);
  CHECK(g.to_string() == "Z/2");

  g = cokernel(from_rows({{2, 0}, {0, 3}}));
  CHECK(g.to_string() == "Z/6");

  g = cokernel(IntMatrix(2, 0));
  CHECK(g.is_free());
  CHECK(g.free_rank == 2);
  CHECK(g.to_string() == "Z^2");

  g = cokernel(from_rows({{0, -1, -1}}).transpose());  // one relation in Z^3
  CHECK(g.is_free());
  CHECK(g.free_rank == 2);
}

TEST_CASE("ambient classes are consistent with the relations") {
  // Z^2 / <(2,4)>: the relation class must vanish
  IntMatrix m = from_rows({{2}, {4}});
  FGAbelianGroup g = cokernel(m);
  IntVec rel = g.class_of_ambient_vector(IntVec{2, 4});
  CHECK(g.reduce(rel) == IntVec(g.coord_dim(), Int(0)));
  // ambient representatives invert the class map
  for (int i = 0; i < g.coord_dim(); ++i) {
    IntVec rep = g.ambient_reps.column(i);
    IntVec back = g.class_of_ambient_vector(rep);
    IntVec expect(g.coord_dim(), Int(0));
    expect[i] = 1;
    CHECK(back == expect);
  }
}

TEST_CASE("kernel groups") {
  KernelGroup k = kernel(from_rows({{1, 1, 0}}));
  CHECK(k.group.free_rank == 2);
  CHECK(k.basis.size() == 2);
}

TEST_CASE("hom well-definedness and composition") {
  FGAbelianGroup z2 = cokernel(from_rows({{2}}));
  FGAbelianGroup z = FGAbelianGroup::free(1);
  GroupHom doubles{z, z, from_rows({{2}})};
  CHECK(doubles.well_defined());
  GroupHom bad{z2, z, from_rows({{1}})};
  CHECK(!bad.well_defined());  // 2*1 != 0 in Z
  GroupHom proj{z, z2, from_rows({{1}})};
  CHECK(proj.well_defined());
  GroupHom comp = compose(proj, doubles);
  CHECK(comp.apply(IntVec{1}) == IntVec{0});  // 2 mod 2
}

TEST_CASE("exactness on handcrafted sequences") {
  FGAbelianGroup z = FGAbelianGroup::free(1), z2 = FGAbelianGroup::free(2);
  // Z --(1,0)--> Z^2 --(0,1)--> Z is exact in the middle
  GroupHom f{z, z2, from_rows({{1}, {0}})};
  GroupHom g{z2, z, from_rows({{0, 1}})};
  CHECK(exactness_check(f, g));
  // doubling the generator breaks it (index 2)
  GroupHom f2{z, z2, from_rows({{2}, {0}})};
  CHECK(!exactness_check(f2, g));
  CHECK(is_surjective(g));
  CHECK(!is_surjective(f));
  CHECK(is_injective(f));
}

TEST_CASE("split extensions and generation") {
  FGAbelianGroup z2 = cokernel(from_rows({{2}}));
  FGAbelianGroup x = solve_split_extension(z2, FGAbelianGroup::free(2));
  CHECK(x.free_rank == 2);
  CHECK(x.torsion == IntVec{2});
  CHECK_THROWS_AS(solve_split_extension(FGAbelianGroup::free(1), z2), Error);

  FGAbelianGroup z2f = FGAbelianGroup::free(2);
  CHECK(vectors_generate(z2f, {IntVec{1, 0}, IntVec{1, 1}}));
  CHECK(!vectors_generate(z2f, {IntVec{1, 0}, IntVec{1, 2}}));
}

TEST_CASE("randomized exactness suite with enumeration oracle") {
  auto r = tgtest::suite_exactness(1000);
  INFO(r.detail);
  CHECK(r.ok);
}
