// Copyright 2026 The kchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "kchar/encodings.hpp"
#include "kchar/utf8.hpp"

using namespace kchar;

namespace {

std::vector<int> ones(const Eigen::VectorXd& v) {
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] == 1.0) idx.push_back(static_cast<int>(i));
    else REQUIRE(v[i] == 0.0);
  return idx;
}

int standalone(char32_t cp) { return static_cast<int>(cp - 0x3131); }

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto p = std::filesystem::temp_directory_path() / ("kchar_test_" + name);
  std::ofstream(p, std::ios::binary) << contents;
  return p;
}

}  // namespace

TEST_SUITE("encodings") {
  TEST_CASE("jamo67") {
    CHECK(encode_jamo67(JamoRequest::third(0)).size() == 67);
    CHECK(ones(encode_jamo67(JamoRequest::third(0))).empty());
    CHECK(ones(encode_jamo67(JamoRequest::first(0))) == std::vector<int>{0});
    CHECK(ones(encode_jamo67(JamoRequest::second(0))) == std::vector<int>{19});
    CHECK(ones(encode_jamo67(JamoRequest::third(1))) == std::vector<int>{40});
    CHECK(ones(encode_jamo67(JamoRequest::third(27))) == std::vector<int>{66});
    CHECK(ones(encode_jamo67(JamoRequest::standalone(standalone(U'ㅋ')))).empty());
    CHECK_THROWS_AS(encode_jamo67(JamoRequest::first(19)), DomainError);
    CHECK_THROWS_AS(encode_jamo67(JamoRequest::second(21)), DomainError);
    CHECK_THROWS_AS(encode_jamo67(JamoRequest::third(28)), DomainError);
    CHECK_THROWS_AS(encode_jamo67(JamoRequest::standalone(51)), DomainError);
  }

  TEST_CASE("jamo118") {
    CHECK(encode_jamo118(JamoRequest::first(0)).size() == 118);
    CHECK(ones(encode_jamo118(JamoRequest::standalone(standalone(U'ㅋ')))) ==
          std::vector<int>{67 + standalone(U'ㅋ')});
    std::set<int> settable;
    for (int k = 0; k < 51; ++k) {
      const auto hot = ones(encode_jamo118(JamoRequest::standalone(k)));
      REQUIRE(hot.size() == 1);
      settable.insert(hot[0]);
    }
    CHECK(settable.size() == 51);
    CHECK(*settable.begin() == 67);
    CHECK(*settable.rbegin() == 117);
  }

  TEST_CASE("jamo67 and jamo118 agree on the first 67 dims for every slot") {
    auto agree = [](const JamoRequest& r) {
      CHECK(encode_jamo118(r).head(67) == encode_jamo67(r));
    };
    for (int i = 0; i < 19; ++i) agree(JamoRequest::first(i));
    for (int i = 0; i < 21; ++i) agree(JamoRequest::second(i));
    for (int i = 0; i < 28; ++i) agree(JamoRequest::third(i));
    for (int i = 0; i < 19; ++i) CHECK(ones(encode_jamo67(JamoRequest::first(i))).size() == 1);
  }

  TEST_CASE("build_char_vocab") {
    auto v = build_char_vocab(std::vector<std::string>{"배고파 배"});
    REQUIRE(v.size() == 3);
    CHECK(v.at(0) == U'배');
    CHECK(v.at(1) == U'고');
    CHECK(v.at(2) == U'파');
    CHECK(build_char_vocab(std::vector<std::string>{""}).size() == 0);
    std::istringstream empty;
    CHECK(build_char_vocab(empty).size() == 0);
    // Standalone letters and other symbols are not part of the vocabulary.
    std::istringstream mixed("ㅋㅋ 굿!! abc\n굿 밤");
    auto m = build_char_vocab(mixed);
    CHECK(m.symbols() == std::vector<char32_t>{U'굿', U'밤'});
  }

  TEST_CASE("vocabulary file round trip") {
    auto v = build_char_vocab(std::vector<std::string>{"간밤에 핫한"});
    const auto path = std::filesystem::temp_directory_path() / "kchar_vocab.txt";
    v.save(path);
    const auto back = CharVocabulary::load(path);
    CHECK(back.symbols() == v.symbols());
    CHECK_THROWS_AS(CharVocabulary::load(temp_file("bad_vocab", "간\nab\n")), LoadError);
    try {
      CharVocabulary::load(temp_file("dup_vocab", "간\n밤\n간\n"));
      FAIL("expected LoadError");
    } catch (const LoadError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("char one-hot") {
    auto v = build_char_vocab(std::vector<std::string>{"배고파"});
    CHECK(ones(encode_char_onehot(v.at(0), v)) == std::vector<int>{0});
    CHECK(ones(encode_char_onehot(U'밤', v)).empty());
    CHECK(ones(encode_char_onehot(U'ㅋ', v)).empty());
    for (char32_t c : {U'배', U'고', U'파', U'간'}) CHECK(encode_char_onehot(c, v).sum() <= 1.0);
  }

  TEST_CASE("dense vector loading") {
    std::istringstream plain("가 0.1 0.2\n간 0.3 0.4\n");
    auto t = load_dense_vectors(plain);
    CHECK(t.width() == 2);
    CHECK(t.size() == 2);
    std::istringstream with_header("2 2\n가 0.1 0.2\n간 0.3 0.4\n");
    auto h = load_dense_vectors(with_header);
    CHECK(h.width() == 2);
    CHECK(h.size() == 2);
    CHECK(*h.find(U'간') == *t.find(U'간'));
    CHECK((*t.find(U'가'))[0] == 0.1);
    CHECK((*t.find(U'간'))[1] == 0.4);

    std::istringstream dup("가 1 2\n가 3 4\n");
    auto d = load_dense_vectors(dup);
    CHECK(d.size() == 1);
    CHECK((*d.find(U'가'))[0] == 3.0);
  }

  TEST_CASE("dense vector load errors name the line") {
    auto line_of = [](const std::string& text) -> std::size_t {
      std::istringstream in(text);
      try {
        load_dense_vectors(in);
      } catch (const LoadError& e) {
        return e.line();
      }
      return 999;
    };
    CHECK(line_of("가 0.1 0.2\n간 0.3\n") == 2);
    CHECK(line_of("2 2\n가 0.1 0.2\n간 0.3 x\n") == 3);
    CHECK(line_of("가 0.1 0.2\n간 0.3 0.4 0.5\n") == 2);
    CHECK(line_of("가\n") == 1);
    std::istringstream short_header("3 2\n가 0.1 0.2\n");
    CHECK_THROWS_AS(load_dense_vectors(short_header), LoadError);
    CHECK_THROWS_AS(load_dense_vectors(std::filesystem::path("/nonexistent/vec.txt")), LoadError);
  }

  TEST_CASE("dense lookup is exact after decimal parsing") {
    const std::string text = "간 0.123456789012345678 -3.5e-7 1e300\n";
    std::istringstream in(text);
    auto t = load_dense_vectors(in);
    const auto& v = *t.find(U'간');
    CHECK(v[0] == 0.123456789012345678);
    CHECK(v[1] == -3.5e-7);
    CHECK(v[2] == 1e300);
    CHECK(encode_char_dense(U'간', t) == v);
    CHECK(encode_char_dense(U'밤', t) == Eigen::VectorXd::Zero(3));
    CHECK(encode_char_dense(U'ㅋ', t) == Eigen::VectorXd::Zero(3));
  }

  TEST_CASE("vocabulary from vector keys keeps only syllables") {
    std::istringstream in("3 2\n가 0 1\n</s> 1 1\n간 1 0\n");
    auto t = load_dense_vectors(in);
    auto v = vocab_from_vectors(t);
    CHECK(v.symbols() == std::vector<char32_t>{U'가', U'간'});
  }

  TEST_CASE("multi-hot examples") {
    CHECK(ones(encode_char_multihot(U'간')) == std::vector<int>{0, 19, 43});
    CHECK(ones(encode_char_multihot(U'가')) == std::vector<int>{0, 19});
    CHECK(ones(encode_char_multihot(U'ㅏ')) == std::vector<int>{19});
    CHECK(ones(encode_char_multihot(U'ㅋ')) == std::vector<int>{15});
    CHECK(ones(encode_char_multihot(U'ㅄ')) == std::vector<int>{40 + 17});
  }

  TEST_CASE("multi-hot sparsity over every representable symbol") {
    for (char32_t cp = 0xAC00; cp <= 0xD7A3; ++cp) {
      const auto v = encode_char_multihot(cp);
      REQUIRE(v.size() == 67);
      const auto hot = ones(v);
      const auto t = decompose(cp);
      REQUIRE(hot.size() == (t.jong ? 3u : 2u));
    }
    for (int k = 0; k < 51; ++k) REQUIRE(ones(encode_char_multihot(standalone_letter(k))).size() == 1);
  }

  TEST_CASE("encoder dimensions") {
    auto vocab = build_char_vocab(std::vector<std::string>{"간밤핫"});
    std::istringstream in("가 0.1 0.2 0.3\n");
    auto table = load_dense_vectors(in);
    CHECK(Encoder::jamo67().dim() == 67);
    CHECK(Encoder::jamo118().dim() == 118);
    CHECK(Encoder::char_onehot(vocab).dim() == 3);
    CHECK(Encoder::char_dense(table).dim() == 3);
    CHECK(Encoder::multihot().dim() == 67);
    CHECK(Encoder::jamo67().expansion() == 3);
    CHECK(Encoder::multihot().expansion() == 1);
    CHECK_THROWS(Encoder::char_onehot(CharVocabulary{}));
    CHECK(parse_scheme("char-dense") == SchemeKind::CharDense);
    CHECK(parse_scheme("dense") == SchemeKind::CharDense);
    CHECK(parse_scheme("iv") == SchemeKind::CharDense);
    CHECK(parse_scheme("v") == SchemeKind::CharMultiHot);
    CHECK_THROWS_AS(parse_scheme("vi"), std::invalid_argument);
  }
}
