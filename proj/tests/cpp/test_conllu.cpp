#include <sstream>

#include <doctest.h>

#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"

using namespace lalita;

namespace {

const char* kTwoSentences =
    "# sent_id = a1\n"
    "1\tShe\tshe\tPRON\t_\tCase=Nom|Number=Sing\t2\tnsubj\t_\t_\n"
    "2\tslept\tsleep\tVERB\t_\tMood=Ind|Tense=Past\t0\troot\t_\t_\n"
    "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
    "\n"
    "# sent_id = a2\n"
    "1\tRam\t_\tPROPN\t_\t_\t2\tnsubj\t_\tNER=B-PER\n"
    "2\tread\t_\tVERB\t_\tTense=Past\t0\troot\t_\t_\n"
    "3\tbooks\t_\tNOUN\t_\tNumber=Plur\t2\tobj\t_\t_\n"
    "\n";

} // namespace

TEST_CASE("conllu parses sentences with feats and NER") {
    auto anns = parse_conllu_string(kTwoSentences);
    REQUIRE(anns.size() == 2);

    const auto& a1 = anns[0];
    CHECK(a1.id == "a1");
    REQUIRE(a1.tokens.size() == 3);
    CHECK(a1.tokens[0].form == "She");
    CHECK(a1.tokens[0].upos == "PRON");
    CHECK(a1.tokens[0].head == 2);
    CHECK(a1.tokens[0].deprel == "nsubj");
    REQUIRE(a1.tokens[0].feats.size() == 2);
    CHECK(a1.tokens[0].feats[0] == std::pair<std::string, std::string>{"Case", "Nom"});
    CHECK(a1.tokens[0].feats[1] == std::pair<std::string, std::string>{"Number", "Sing"});
    CHECK(!a1.tokens[0].ner.has_value());
    CHECK(a1.tokens[1].head == 0);
    CHECK(a1.sentence_count_in_doc == 1);
    CHECK(a1.block_sizes == std::vector<std::size_t>{3});

    const auto& a2 = anns[1];
    REQUIRE(a2.tokens[0].ner.has_value());
    CHECK(a2.tokens[0].ner->begin);
    CHECK(a2.tokens[0].ner->category == "PER");
}

TEST_CASE("conllu feats are reported sorted by key") {
    auto anns = parse_conllu_string(
        "# sent_id = s\n"
        "1\tx\t_\tNOUN\t_\tNumber=Sing|Case=Nom|Gender=Fem\t0\troot\t_\t_\n\n");
    REQUIRE(anns.size() == 1);
    const auto& feats = anns[0].tokens[0].feats;
    REQUIRE(feats.size() == 3);
    CHECK(feats[0].first == "Case");
    CHECK(feats[1].first == "Gender");
    CHECK(feats[2].first == "Number");
}

TEST_CASE("conllu merges contiguous blocks sharing a sent_id") {
    auto anns = parse_conllu_string(
        "# sent_id = doc7\n"
        "1\tHe\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tleft\t_\tVERB\t_\tTense=Past\t0\troot\t_\t_\n"
        "\n"
        "# sent_id = doc7\n"
        "1\tShe\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tstayed\t_\tVERB\t_\tTense=Past\t0\troot\t_\t_\n"
        "3\there\t_\tADV\t_\t_\t2\tadvmod\t_\t_\n"
        "\n");
    REQUIRE(anns.size() == 1);
    const auto& a = anns[0];
    CHECK(a.sentence_count_in_doc == 2);
    CHECK(a.block_sizes == std::vector<std::size_t>{2, 3});
    REQUIRE(a.tokens.size() == 5);
    // second block heads are offset past the first block
    CHECK(a.tokens[2].form == "She");
    CHECK(a.tokens[2].head == 4);
    CHECK(a.tokens[3].head == 0); // block-local root stays root
    CHECK(a.tokens[4].head == 4);
}

TEST_CASE("conllu serialization round-trips including multi-block sentences") {
    std::string text =
        "# sent_id = m1\n"
        "1\tGo\t_\tVERB\t_\tMood=Imp\t0\troot\t_\t_\n"
        "\n"
        "# sent_id = m1\n"
        "1\tNow\t_\tADV\t_\t_\t0\troot\t_\t_\n"
        "2\tplease\t_\tINTJ\t_\t_\t1\tadvmod\t_\tNER=B-MISC\n"
        "\n";
    auto anns = parse_conllu_string(text);
    REQUIRE(anns.size() == 1);
    auto out = serialize_conllu_string(anns);
    auto again = parse_conllu_string(out);
    CHECK(again == anns);
    // canonical layout re-splits the blocks
    CHECK(out.find("# sent_id = m1\n1\tGo") != std::string::npos);
    CHECK(out.find("# sent_id = m1\n1\tNow") != std::string::npos);
}

TEST_CASE("conllu rejects malformed input") {
    // wrong column count
    CHECK_THROWS_AS(parse_conllu_string("# sent_id = b\n1\tx\tNOUN\n\n"), DataError);
    // missing sent_id
    CHECK_THROWS_AS(
        parse_conllu_string("1\tx\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"), DataError);
    // non-numeric id column
    CHECK_THROWS_AS(parse_conllu_string(
                        "# sent_id = b\nz\tx\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"),
                    DataError);
    // head out of range
    CHECK_THROWS_AS(parse_conllu_string(
                        "# sent_id = b\n1\tx\t_\tNOUN\t_\t_\t5\troot\t_\t_\n\n"),
                    DataError);
    // invalid UPOS
    CHECK_THROWS_AS(parse_conllu_string(
                        "# sent_id = b\n1\tx\t_\tNOUNS\t_\t_\t0\troot\t_\t_\n\n"),
                    DataError);
    // bad NER tag
    CHECK_THROWS_AS(parse_conllu_string(
                        "# sent_id = b\n1\tx\t_\tNOUN\t_\t_\t0\troot\t_\tNER=B-DOG\n\n"),
                    DataError);
}

TEST_CASE("conllu skips multiword-token and empty-node lines") {
    auto anns = parse_conllu_string(
        "# sent_id = r\n"
        "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tde\t_\tADP\t_\t_\t3\tcase\t_\t_\n"
        "2\tel\t_\tDET\t_\t_\t3\tdet\t_\t_\n"
        "3\tmar\t_\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "3.1\tnull\t_\tNOUN\t_\t_\t_\t_\t_\t_\n"
        "\n");
    REQUIRE(anns.size() == 1);
    CHECK(anns[0].tokens.size() == 3);
    CHECK(anns[0].tokens[2].form == "mar");
}

TEST_CASE("upos inventory is exactly the 17 universal tags") {
    CHECK(kUposTags.size() == 17);
    CHECK(is_valid_upos("NOUN"));
    CHECK(is_valid_upos("SYM"));
    CHECK(!is_valid_upos("N"));
    CHECK(!is_valid_upos(""));
    for (std::size_t i = 1; i < kUposTags.size(); ++i)
        CHECK(kUposTags[i - 1] < kUposTags[i]);
}

TEST_CASE("join_bitext matches ids in bitext order and reports strays") {
    std::vector<BitextPair> pairs{{"p2", "b", "y", {}}, {"p1", "a", "x", {}},
                                  {"p9", "c", "z", {}}};
    auto anns = parse_conllu_string(
        "# sent_id = p1\n1\ta\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = p2\n1\tb\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = p5\n1\tq\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
    auto res = join_bitext(pairs, anns);
    REQUIRE(res.joined.size() == 2);
    CHECK(res.joined[0].first.id == "p2");
    CHECK(res.joined[1].first.id == "p1");
    CHECK(res.joined[0].second.id == "p2");
    CHECK(res.unmatched_pair_ids == std::vector<std::string>{"p9"});
    CHECK(res.unmatched_annotation_ids == std::vector<std::string>{"p5"});
}

TEST_CASE("join_bitext rejects duplicate ids") {
    std::vector<BitextPair> dup{{"d", "a", "x", {}}, {"d", "b", "y", {}}};
    auto anns = parse_conllu_string("# sent_id = d\n1\ta\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
    CHECK_THROWS_AS(join_bitext(dup, anns), DataError);

    std::vector<BitextPair> ok{{"d", "a", "x", {}}};
    auto dup_anns = parse_conllu_string(
        "# sent_id = d\n1\ta\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = q\n1\tb\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = d\n1\tc\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
    CHECK_THROWS_AS(join_bitext(ok, dup_anns), DataError);
}
