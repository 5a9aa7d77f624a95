#include "doctest.h"

#include <algorithm>

#include "clab/gfq.hpp"

using namespace clab;

TEST_CASE("make_field picks the smallest modulus") {
  FieldPtr f5 = make_field(5, 1);
  CHECK(f5->modulus_fp() == std::vector<long>{0, 1});  // X

  FieldPtr f4 = make_field(2, 2);
  CHECK(f4->modulus_fp() == std::vector<long>{1, 1, 1});  // X^2+X+1

  FieldPtr f9 = make_field(3, 2);
  CHECK(f9->modulus_fp() == std::vector<long>{1, 0, 1});  // X^2+1
}

TEST_CASE("make_field rejects bad input") {
  CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_field(2, 25), bound_error);
}

TEST_CASE("basic arithmetic in GF(9) with modulus X^2+1") {
  FieldPtr f9 = make_field(3, 2);
  Fq x = fq_gen(f9);
  CHECK(x * x == fq_of(f9, 2));  // X^2 = -1 = 2
  Fq a(f9, 5);
  CHECK(a + fq_zero(f9) == a);
}

TEST_CASE("inverse in GF(3)") {
  FieldPtr f3 = make_field(3, 1);
  CHECK(inv(fq_of(f3, 2)) == fq_of(f3, 2));
}

TEST_CASE("field axioms exhaustively for q <= 64") {
  for (auto [p, m] : {std::pair<long, int>{2, 1}, {3, 1}, {5, 1}, {7, 1},
                      {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                      {3, 2}, {3, 3}, {5, 2}, {7, 2}, {11, 1}, {61, 1}}) {
    FieldPtr f = make_field(p, m);
    auto elems = all_elements(f);
    // commutativity/associativity/distributivity on all pairs, plus a
    // fixed stride of triples to keep the run fast
    for (const Fq& a : elems)
      for (const Fq& b : elems) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
      }
    size_t stride = elems.size() <= 9 ? 1 : elems.size() / 7;
    for (size_t i = 0; i < elems.size(); i += 1)
      for (size_t j = 0; j < elems.size(); j += stride)
        for (size_t k = 0; k < elems.size(); k += stride) {
          const Fq &a = elems[i], &b = elems[j], &c = elems[k];
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
    for (const Fq& a : elems) {
      if (!a.is_zero()) CHECK(a * inv(a) == fq_one(f));
      CHECK(pow(a, (long long)f->q()) == a);  // a^q = a
    }
  }
}

TEST_CASE("frobenius is a field automorphism") {
  for (auto [p, m] : {std::pair<long, int>{2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
    FieldPtr f = make_field(p, m);
    auto elems = all_elements(f);
    for (const Fq& a : elems)
      for (const Fq& b : elems) {
        CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
        CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
      }
    for (const Fq& a : elems) CHECK(frobenius(a, m) == a);  // Fr^m = id
  }
}

TEST_CASE("frobenius on GF(4)") {
  FieldPtr f4 = make_field(2, 2);
  Fq w = fq_gen(f4);
  CHECK(frobenius(w) == w + fq_one(f4));  // w^2 = w+1
  CHECK(frobenius(fq_one(f4)) == fq_one(f4));
}

TEST_CASE("element orders") {
  FieldPtr f5 = make_field(5, 1);
  CHECK(element_order(fq_of(f5, 2)) == 4);
  CHECK(element_order(fq_one(f5)) == 1);
  FieldPtr f9 = make_field(3, 2);
  CHECK(element_order(fq_gen(f9)) == 4);  // X^2 = 2, X^4 = 1
  for (const Fq& a : all_elements(f9))
    if (!a.is_zero()) CHECK((long long)(f9->q() - 1) % element_order(a) == 0);
}

TEST_CASE("roots of unity") {
  FieldPtr f2 = make_field(2, 1);
  CHECK(roots_of_unity(2, f2).size() == 1);

  FieldPtr f4 = make_field(2, 2);
  auto r3 = roots_of_unity(3, f4);
  CHECK(r3.size() == 3);

  FieldPtr f9 = make_field(3, 2);
  auto r4 = roots_of_unity(4, f9);
  CHECK(r4.size() == 4);
  // {1, 2, X, 2X} with modulus X^2+1
  Fq x = fq_gen(f9);
  for (const Fq& want : {fq_one(f9), fq_of(f9, 2), x, fq_of(f9, 2) * x})
    CHECK(std::count(r4.begin(), r4.end(), want) == 1);
}

TEST_CASE("canonical order is lexicographic on coefficient strings") {
  FieldPtr f4 = make_field(2, 2);
  Fq zero = fq_zero(f4), one = fq_one(f4), w = fq_gen(f4);
  // (0,0) < (0,1) < (1,0) < (1,1) reading constant term first
  CHECK(canonical_less(zero, w));
  CHECK(canonical_less(w, one));
  CHECK(canonical_less(one, one + w));
}

TEST_CASE("extension towers") {
  FieldPtr f3 = make_field(3, 1);
  FieldPtr f9 = extension_field(f3, 2);
  CHECK(f9->q() == 9);
  CHECK(f9->base() == f3);
  // tower over a non-prime base
  FieldPtr f4 = make_field(2, 2);
  FieldPtr f16 = extension_field(f4, 2);
  CHECK(f16->q() == 16);
  CHECK(f16->degree() == 4);
  auto elems = all_elements(f16);
  for (size_t i = 0; i < elems.size(); i += 3)
    for (size_t j = 0; j < elems.size(); j += 3) {
      CHECK(elems[i] * elems[j] == elems[j] * elems[i]);
      if (!elems[i].is_zero()) CHECK(elems[i] * inv(elems[i]) == fq_one(f16));
    }
  // frobenius with intermediate base order fixes the base field image
  Fq c = fq_of(f16, 1);
  CHECK(frobenius(c, 1, f4->q()) == c);
}

TEST_CASE("literals promote inside expressions") {
  FieldPtr f7 = make_field(7, 1);
  Fq a = fq_of(f7, 3);
  CHECK(a + Fq(0) == a);
  CHECK(a * Fq(1) == a);
  CHECK(Fq(2) * a == fq_of(f7, 6));
  CHECK(a - a == Fq(0));
}

TEST_CASE("order and representation edge cases") {
  FieldPtr f5 = make_field(5, 1);
  CHECK(element_order(fq_one(f5)) == 1);
  FieldPtr f2 = make_field(2, 1);
  FieldPtr f4 = extension_field(f2, 2);
  CHECK_THROWS_AS(element_order(fq_zero(f4)), std::invalid_argument);
}
