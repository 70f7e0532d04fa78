// Copyright 2026 The QMetric Authors.
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

#include "qmetric/porter.hpp"

#include "doctest.h"

using qmetric::porter_stem;

// Expected forms follow the reference implementation's sample vocabulary.
TEST_CASE("porter stemmer, plural and participle suffixes") {
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("ties") == "ti");
  CHECK(porter_stem("caress") == "caress");
  CHECK(porter_stem("cats") == "cat");
  CHECK(porter_stem("feed") == "feed");
  CHECK(porter_stem("agreed") == "agre");  // step 5a strips the final e
  CHECK(porter_stem("plastered") == "plaster");
  CHECK(porter_stem("bled") == "bled");
  CHECK(porter_stem("motoring") == "motor");
  CHECK(porter_stem("sing") == "sing");
  CHECK(porter_stem("conflated") == "conflat");
  CHECK(porter_stem("troubled") == "troubl");
  CHECK(porter_stem("sized") == "size");
  CHECK(porter_stem("hopping") == "hop");
  CHECK(porter_stem("tanned") == "tan");
  CHECK(porter_stem("falling") == "fall");
  CHECK(porter_stem("hissing") == "hiss");
  CHECK(porter_stem("fizzed") == "fizz");
  CHECK(porter_stem("failing") == "fail");
  CHECK(porter_stem("filing") == "file");
}

TEST_CASE("porter stemmer, derivational suffixes") {
  CHECK(porter_stem("happy") == "happi");
  CHECK(porter_stem("sky") == "sky");
  CHECK(porter_stem("relational") == "relat");
  CHECK(porter_stem("conditional") == "condit");
  CHECK(porter_stem("rational") == "ration");
  CHECK(porter_stem("valenci") == "valenc");
  CHECK(porter_stem("digitizer") == "digit");
  CHECK(porter_stem("conformabli") == "conform");
  CHECK(porter_stem("radicalli") == "radic");
  CHECK(porter_stem("differentli") == "differ");
  CHECK(porter_stem("analogousli") == "analog");
  CHECK(porter_stem("vietnamization") == "vietnam");
  CHECK(porter_stem("predication") == "predic");
  CHECK(porter_stem("operator") == "oper");
  CHECK(porter_stem("feudalism") == "feudal");
  CHECK(porter_stem("decisiveness") == "decis");
  CHECK(porter_stem("hopefulness") == "hope");
  CHECK(porter_stem("formaliti") == "formal");
  CHECK(porter_stem("formative") == "form");
  CHECK(porter_stem("formalize") == "formal");
  CHECK(porter_stem("electriciti") == "electr");
  CHECK(porter_stem("electrical") == "electr");
  CHECK(porter_stem("hopeful") == "hope");
  CHECK(porter_stem("goodness") == "good");
  CHECK(porter_stem("adjustable") == "adjust");
  CHECK(porter_stem("defensible") == "defens");
  CHECK(porter_stem("replacement") == "replac");
  CHECK(porter_stem("adoption") == "adopt");
  CHECK(porter_stem("communism") == "commun");
  CHECK(porter_stem("activate") == "activ");
  CHECK(porter_stem("effective") == "effect");
  CHECK(porter_stem("rate") == "rate");
  CHECK(porter_stem("controll") == "control");
  CHECK(porter_stem("roll") == "roll");
}

TEST_CASE("porter stemmer passes short and non-alpha words through") {
  CHECK(porter_stem("be") == "be");
  CHECK(porter_stem("1981") == "1981");
  CHECK(porter_stem("o2") == "o2");
  CHECK(porter_stem("don't") == "don't");
  CHECK(porter_stem("Directed") == "direct");
}

TEST_CASE("stemming relates inflected question words") {
  CHECK(porter_stem("directed") == porter_stem("directing"));
  CHECK(porter_stem("films") == porter_stem("film"));
  CHECK(porter_stem("kills") == porter_stem("killed"));
}
