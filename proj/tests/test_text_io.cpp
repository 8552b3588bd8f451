#include <doctest.h>

#include "rigiditykit/hessian.hpp"
#include "rigiditykit/text_io.hpp"

using namespace rk;

TEST_CASE("tensor file round trip, 1-based indices") {
  SymTensor t(4, 2);
  t.set({0, 1}, Scalar(1, 2));
  t.set({3, 3}, Scalar(mpq_class(-2), mpq_class(1, 3)));
  std::string text = write_tensor(t);
  CHECK(text.rfind("symtensor v1 dim=4 degree=2\n", 0) == 0);
  CHECK(text.find("1 2 = 1/2\n") != std::string::npos);
  CHECK(text.find("4 4 = -2/1+1/3i\n") != std::string::npos);
  CHECK(read_tensor(text) == t);
  // text -> json -> text is byte-identical
  std::string json = convert(text, FileFormat::Json);
  CHECK(convert(json, FileFormat::Tensor) == text);
  CHECK(tensor_from_json(tensor_to_json(t)) == t);
}

TEST_CASE("tensor file errors carry positions") {
  try {
    read_tensor("symtensor v1 dim=3 degree=1\n2 = 1/0\n");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("zero denominator") != std::string::npos);
  }
  CHECK_THROWS_AS(read_tensor("symtensor v1 dim=3 degree=1\n4 = 1\n"), ParseError);
  CHECK_THROWS_AS(read_tensor("symtensor v1 dim=3 degree=1\n0 = 1\n"), ParseError);
  CHECK_THROWS_AS(read_tensor("symtensor v1 dim=3 degree=2\n1 = 1\n"), ParseError);
  CHECK_THROWS_AS(read_tensor("symtensor v1 dim=3 degree=1\n1 = 1\n1 = 2\n"), ParseError);
  CHECK_THROWS_AS(read_tensor("tensor v1 dim=3 degree=1\n"), ParseError);
  // comments and blank lines are fine
  CHECK(read_tensor("# x\nsymtensor v1 dim=2 degree=1\n\n2 = 3 # y\n").get({1}) == Scalar(3));
}

TEST_CASE("jet file round trip") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(1);
  TensorJet t = random_jet(g, 2, 2, rng);
  std::string text = write_jet(t);
  LoadedJet back = read_jet(text);
  CHECK(back.geometry->tag() == Kind::Complex);
  CHECK(*back.jet == rebind(t, *back.geometry));
  CHECK(write_jet(*back.jet) == text);
  std::string json = convert(text, FileFormat::Json);
  CHECK(convert(json, FileFormat::Jet) == text);
  LoadedJet fromj = jet_from_json(jet_to_json(t));
  CHECK(write_jet(*fromj.jet) == text);
}

TEST_CASE("jet order mismatch names the order") {
  Geometry g(GeometryKind{Kind::Real, 3});
  Rng rng(2);
  std::string text = write_jet(random_jet(g, 1, 1, rng));
  std::string bad = text;
  bad.replace(bad.find("order=1"), 7, "order=0");
  try {
    read_jet(bad);
    FAIL("no throw");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("order 0") != std::string::npos);
  }
  // a jet that is not in Ricci canonical form is rejected
  Geometry c(GeometryKind{Kind::Complex, 4});
  TensorJet t = random_jet(c, 2, 2, rng);
  t.at({0, 1})[0] += Scalar(1);
  CHECK_THROWS_AS(read_jet(write_jet(t)), ValidationError);
}

TEST_CASE("format detection") {
  CHECK_THROWS_AS(convert("hello", FileFormat::Json), ParseError);
  CHECK_THROWS_AS(convert("", FileFormat::Json), ParseError);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  CHECK_THROWS(convert("symtensor v1 dim=2 degree=1\n", FileFormat::Jet));
}
