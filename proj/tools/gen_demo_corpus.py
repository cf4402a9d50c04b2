#!/usr/bin/env python3
"""Generate the bundled demo corpus (data/demo) and ordering fixtures.

Everything is derived from a fixed seed so the committed files are
reproducible. The corpus is synthetic English->pseudo-Hindi bitext with
dependency-annotated sources, a sidecar neural-LM perplexity column, a few
planted dirty pairs (one batch per hygiene rule), and a back-translated-style
synthetic corpus with avg_logprob quality scores.
"""

import argparse
import hashlib
import random
from pathlib import Path

SEED = 12345

# ---------------------------------------------------------------- vocabulary

DETS = [("the", {"Definite": "Def", "PronType": "Art"}),
        ("a", {"Definite": "Ind", "PronType": "Art"})]
ADJS = ["old", "new", "small", "large", "quiet", "busy", "long", "short", "bright",
        "dark", "early", "late", "local", "famous", "narrow", "wide", "ancient",
        "modern", "simple", "complex", "gentle", "heavy", "light", "warm", "cold"]
NOUNS = ["house", "river", "market", "teacher", "student", "road", "village", "city",
         "train", "letter", "garden", "mountain", "book", "story", "farmer", "doctor",
         "school", "bridge", "forest", "window", "door", "table", "song", "journey",
         "meeting", "harvest", "festival", "library", "station", "valley", "temple",
         "morning", "evening", "winter", "summer", "family", "friend", "child",
         "leader", "worker", "plan", "report", "speech", "question", "answer"]
VERBS_PAST = ["walked", "opened", "closed", "visited", "crossed", "watched", "carried",
              "finished", "started", "repaired", "painted", "planted", "gathered",
              "followed", "reached", "remembered", "described", "explained", "prepared",
              "collected", "returned", "delivered", "announced", "organised", "repeated"]
VERBS_PRES = ["walks", "opens", "closes", "visits", "crosses", "watches", "carries",
              "finishes", "starts", "repairs", "paints", "plants", "gathers",
              "follows", "reaches", "remembers", "describes", "explains", "prepares",
              "collects", "returns", "delivers", "announces", "organises", "repeats"]
ADVS = ["slowly", "quickly", "carefully", "quietly", "often", "rarely", "together",
        "yesterday", "today", "soon", "again", "early", "everywhere", "gently"]
PREPS = ["in", "on", "at", "near", "with", "from", "to", "of", "by", "under", "across",
         "behind", "before", "after"]
CCONJ = ["and", "but", "or"]
SCONJ = ["because", "although", "when", "if", "while"]
PRONOUNS = [("he", {"Case": "Nom", "Gender": "Masc", "Number": "Sing", "Person": "3",
                    "PronType": "Prs"}),
            ("she", {"Case": "Nom", "Gender": "Fem", "Number": "Sing", "Person": "3",
                     "PronType": "Prs"}),
            ("they", {"Case": "Nom", "Number": "Plur", "Person": "3", "PronType": "Prs"}),
            ("we", {"Case": "Nom", "Number": "Plur", "Person": "1", "PronType": "Prs"})]
FIRST_NAMES = ["Ravi", "Meera", "Arjun", "Sita", "Kabir", "Asha", "Vikram", "Lata",
               "Mohan", "Priya"]
LAST_NAMES = ["Sharma", "Verma", "Patel", "Iyer", "Khan", "Das", "Rao", "Joshi"]
PLACES = ["Delhi", "Mumbai", "Pune", "Nagpur", "Jaipur", "Kanpur", "Indore", "Surat"]
ORGS = [["Bharat", "Railways"], ["Central", "Bank"], ["National", "Library"],
        ["Unity", "College"], ["Heritage", "Trust"]]
NUMS = ["two", "three", "four", "five", "seven", "ten", "twelve", "twenty"]

DEVA_SYLLABLES = ["का", "कि", "कु", "खा", "गा", "गी", "चा", "ची", "जा", "जी", "ता",
                  "ती", "तु", "दा", "दी", "ना", "नी", "पा", "पी", "बा", "बी", "मा",
                  "मी", "या", "रा", "री", "ला", "ली", "वा", "शा", "सा", "सी", "हा"]
HI_FUNCTION = {"the": "", "a": "एक", "in": "में", "on": "पर", "at": "पर", "near": "पास",
               "with": "साथ", "from": "से", "to": "को", "of": "का", "by": "द्वारा",
               "under": "नीचे", "across": "पार", "behind": "पीछे", "before": "पहले",
               "after": "बाद", "and": "और", "but": "लेकिन", "or": "या",
               "because": "क्योंकि", "although": "हालांकि", "when": "जब", "if": "अगर",
               "while": "जबकि", "he": "वह", "she": "वह", "they": "वे", "we": "हम",
               ".": "।"}


def hindi_word(word, cache):
    w = word.lower()
    if w in HI_FUNCTION:
        return HI_FUNCTION[w]
    if w not in cache:
        digest = hashlib.md5(w.encode()).digest()
        n = 2 + digest[0] % 3
        cache[w] = "".join(DEVA_SYLLABLES[digest[1 + i] % len(DEVA_SYLLABLES)]
                           for i in range(n))
    return cache[w]


def hindi_sentence(tokens, cache):
    words = [hindi_word(t, cache) for t in tokens]
    return " ".join(w for w in words if w)


# ---------------------------------------------------------------- sentence gen

class Sent:
    def __init__(self):
        self.toks = []  # dicts: form, upos, head (1-based, 0=root), deprel, feats, ner

    def add(self, form, upos, head, deprel, feats=None, ner=None):
        self.toks.append({"form": form, "upos": upos, "head": head, "deprel": deprel,
                          "feats": feats or {}, "ner": ner})
        return len(self.toks)

    def forms(self):
        return [t["form"] for t in self.toks]

    def conllu(self, sent_id):
        out = [f"# sent_id = {sent_id}"]
        for i, t in enumerate(self.toks, 1):
            feats = "|".join(f"{k}={v}" for k, v in sorted(t["feats"].items())) or "_"
            misc = f"NER={t['ner']}" if t["ner"] else "_"
            out.append(f"{i}\t{t['form']}\t_\t{t['upos']}\t_\t{feats}\t{t['head']}"
                       f"\t{t['deprel']}\t_\t{misc}")
        out.append("")
        return "\n".join(out)


def gen_np(s, rng, head, deprel, allow_pp=0):
    in_pp = deprel in ("obl", "nmod")
    kind = rng.choices(["common", "pron", "person", "place", "org", "num"],
                       weights=[52, 0 if in_pp else 14, 12, 9, 6, 7])[0]
    if kind == "pron":
        form, feats = rng.choice(PRONOUNS)
        return s.add(form, "PRON", head, deprel, dict(feats))
    if kind == "person":
        first = rng.choice(FIRST_NAMES)
        idx = s.add(first, "PROPN", head, deprel, {"Number": "Sing"}, "B-PER")
        if rng.random() < 0.6:
            s.add(rng.choice(LAST_NAMES), "PROPN", idx, "flat", {"Number": "Sing"}, "I-PER")
        return idx
    if kind == "place":
        return s.add(rng.choice(PLACES), "PROPN", head, deprel, {"Number": "Sing"}, "B-LOC")
    if kind == "org":
        words = rng.choice(ORGS)
        idx = s.add(words[0], "PROPN", head, deprel, {"Number": "Sing"}, "B-ORG")
        s.add(words[1], "PROPN", idx, "flat", {"Number": "Sing"}, "I-ORG")
        return idx
    if kind == "num":
        nidx = s.add(rng.choice(NUMS), "NUM", 0, "nummod", {"NumType": "Card"})
        plural = rng.choice(NOUNS) + "s"
        idx = s.add(plural, "NOUN", head, deprel, {"Number": "Plur"})
        s.toks[nidx - 1]["head"] = idx
        return idx
    det, det_feats = rng.choice(DETS)
    didx = s.add(det, "DET", 0, "det", dict(det_feats))
    n_adj = rng.choices([0, 1, 2], weights=[55, 35, 10])[0]
    adj_idx = [s.add(rng.choice(ADJS), "ADJ", 0, "amod", {"Degree": "Pos"})
               for _ in range(n_adj)]
    idx = s.add(rng.choice(NOUNS), "NOUN", head, deprel, {"Number": "Sing"})
    s.toks[didx - 1]["head"] = idx
    for a in adj_idx:
        s.toks[a - 1]["head"] = idx
    if allow_pp > 0 and rng.random() < 0.35:
        pidx = s.add(rng.choice(PREPS), "ADP", 0, "case")
        pp = gen_np(s, rng, idx, "nmod", allow_pp - 1)
        s.toks[pidx - 1]["head"] = pp
    return idx


def gen_vp(s, rng, head, deprel, tense):
    use_aux = rng.random() < 0.25
    if use_aux:
        aidx = s.add("had" if tense == "Past" else "has", "AUX", 0, "aux",
                     {"Mood": "Ind", "Number": "Sing", "Person": "3",
                      "Tense": tense if tense == "Past" else "Pres", "VerbForm": "Fin"})
        vidx = s.add(rng.choice(VERBS_PAST), "VERB", head, deprel,
                     {"Tense": "Past", "VerbForm": "Part"})
        s.toks[aidx - 1]["head"] = vidx
        return vidx
    if tense == "Past":
        return s.add(rng.choice(VERBS_PAST), "VERB", head, deprel,
                     {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})
    return s.add(rng.choice(VERBS_PRES), "VERB", head, deprel,
                 {"Mood": "Ind", "Number": "Sing", "Person": "3", "Tense": "Pres",
                  "VerbForm": "Fin"})


def gen_clause(s, rng, head, deprel, size):
    tense = rng.choice(["Past", "Past", "Pres"])
    subj_slot = len(s.toks)
    gen_np(s, rng, 0, "nsubj", allow_pp=1 if size > 1 else 0)
    vidx = gen_vp(s, rng, head, deprel, tense)
    for i in range(subj_slot, len(s.toks)):
        if s.toks[i]["deprel"] == "nsubj":
            s.toks[i]["head"] = vidx
    if rng.random() < 0.75:
        gen_np(s, rng, vidx, "obj", allow_pp=1 if size > 1 else 0)
    for _ in range(rng.choices([0, 1, 2], weights=[45, 40, 15])[0] if size > 0 else 0):
        pidx = s.add(rng.choice(PREPS), "ADP", 0, "case")
        pp = gen_np(s, rng, vidx, "obl", allow_pp=0)
        s.toks[pidx - 1]["head"] = pp
    if rng.random() < 0.3:
        s.add(rng.choice(ADVS), "ADV", vidx, "advmod")
    return vidx


def gen_sentence(rng, size=None):
    s = Sent()
    if size is None:
        size = rng.choices([0, 1, 2, 3], weights=[30, 38, 22, 10])[0]
    root = gen_clause(s, rng, 0, "root", size)
    for _ in range(size // 2 + (1 if size >= 1 and rng.random() < 0.3 else 0)):
        if rng.random() < 0.5:
            cidx = s.add(rng.choice(CCONJ), "CCONJ", 0, "cc")
            v = gen_clause(s, rng, root, "conj", max(size - 1, 0))
            s.toks[cidx - 1]["head"] = v
        else:
            midx = s.add(rng.choice(SCONJ), "SCONJ", 0, "mark")
            v = gen_clause(s, rng, root, "advcl", max(size - 1, 0))
            s.toks[midx - 1]["head"] = v
    if size >= 2 and rng.random() < 0.5:
        midx = s.add("to", "PART", 0, "mark")
        v = s.add(rng.choice(["finish", "start", "open", "close", "visit"]), "VERB",
                  root, "xcomp", {"VerbForm": "Inf"})
        s.toks[midx - 1]["head"] = v
    s.add(".", "PUNCT", root, "punct")
    return s


def nlm_ppl(s, rng):
    n_verbs = sum(1 for t in s.toks if t["upos"] == "VERB")
    base = 8.0 + 2.1 * len(s.toks) + 5.0 * n_verbs + rng.uniform(0.0, 12.0)
    return round(base, 2)


# ---------------------------------------------------------------- fixtures

def ordering_fixtures():
    """Three handcrafted sentences: 3 tokens / 0 verbs, 40 tokens / 2 verbs,
    72 tokens / 6 verbs."""
    fixtures = []

    s = Sent()
    d = s.add("the", "DET", 0, "det", {"Definite": "Def", "PronType": "Art"})
    a = s.add("old", "ADJ", 0, "amod", {"Degree": "Pos"})
    n = s.add("house", "NOUN", 0, "root", {"Number": "Sing"})
    s.toks[d - 1]["head"] = n
    s.toks[a - 1]["head"] = n
    assert len(s.toks) == 3
    fixtures.append(("ord3", s, 16.0))

    def simple_np(s, det, adjs, noun, head, deprel, number="Sing"):
        didx = s.add(det, "DET", 0, "det",
                     {"Definite": "Def" if det == "the" else "Ind", "PronType": "Art"})
        aidx = [s.add(a, "ADJ", 0, "amod", {"Degree": "Pos"}) for a in adjs]
        nidx = s.add(noun, "NOUN", head, deprel, {"Number": number})
        s.toks[didx - 1]["head"] = nidx
        for a in aidx:
            s.toks[a - 1]["head"] = nidx
        return nidx

    def pp(s, prep, det, adjs, noun, head, deprel="obl"):
        pidx = s.add(prep, "ADP", 0, "case")
        nidx = simple_np(s, det, adjs, noun, head, deprel)
        s.toks[pidx - 1]["head"] = nidx
        return nidx

    # 40 tokens, exactly 2 VERB tokens.
    s = Sent()
    subj = simple_np(s, "the", ["old", "quiet"], "teacher", 0, "nsubj")        # 4
    v1 = s.add("carried", "VERB", 0, "root",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 5
    s.toks[subj - 1]["head"] = v1
    obj = simple_np(s, "the", ["heavy", "ancient"], "book", v1, "obj")         # 9
    pp(s, "from", "the", ["small"], "library", v1)                             # 13
    pp(s, "to", "the", ["bright", "warm"], "school", v1)                       # 18
    nm = pp(s, "near", "the", ["narrow"], "bridge", obj, "nmod")               # 22
    pp(s, "across", "the", ["wide"], "river", nm, "nmod")                      # 26
    c = s.add("and", "CCONJ", 0, "cc")                                         # 27
    subj2 = simple_np(s, "the", ["busy"], "student", 0, "nsubj")               # 30
    v2 = s.add("followed", "VERB", v1, "conj",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 31
    s.toks[c - 1]["head"] = v2
    s.toks[subj2 - 1]["head"] = v2
    pp(s, "with", "a", ["gentle"], "song", v2)                                 # 35
    pp(s, "in", "the", ["early"], "morning", v2)                               # 39
    s.add(".", "PUNCT", v1, "punct")                                           # 40
    assert len(s.toks) == 40, len(s.toks)
    assert sum(1 for t in s.toks if t["upos"] == "VERB") == 2
    fixtures.append(("ord40", s, 118.0))

    # 72 tokens, exactly 6 VERB tokens.
    s = Sent()
    subj = simple_np(s, "the", ["famous", "local"], "farmer", 0, "nsubj")      # 4
    v1 = s.add("planted", "VERB", 0, "root",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 5
    s.toks[subj - 1]["head"] = v1
    simple_np(s, "the", ["long", "narrow"], "garden", v1, "obj")               # 9
    pp(s, "near", "the", ["ancient"], "temple", v1)                            # 13
    m = s.add("when", "SCONJ", 0, "mark")                                      # 14
    subj2 = simple_np(s, "the", ["cold"], "winter", 0, "nsubj")                # 17
    v2 = s.add("started", "VERB", v1, "advcl",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 18
    s.toks[m - 1]["head"] = v2
    s.toks[subj2 - 1]["head"] = v2
    pp(s, "in", "the", ["dark"], "valley", v2)                                 # 22
    c = s.add("and", "CCONJ", 0, "cc")                                         # 23
    subj3 = simple_np(s, "the", ["busy"], "worker", 0, "nsubj")                # 26
    v3 = s.add("repaired", "VERB", v1, "conj",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 27
    s.toks[c - 1]["head"] = v3
    s.toks[subj3 - 1]["head"] = v3
    obj3 = simple_np(s, "the", ["old", "heavy"], "bridge", v3, "obj")          # 31
    pp(s, "across", "the", ["quiet"], "river", obj3, "nmod")                   # 35
    m2 = s.add("because", "SCONJ", 0, "mark")                                  # 36
    subj4 = simple_np(s, "the", ["late"], "harvest", 0, "nsubj")               # 39
    v4 = s.add("reached", "VERB", v3, "advcl",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 40
    s.toks[m2 - 1]["head"] = v4
    s.toks[subj4 - 1]["head"] = v4
    simple_np(s, "the", ["large"], "market", v4, "obj")                        # 43
    pp(s, "before", "the", ["warm"], "festival", v4)                           # 47
    c2 = s.add("but", "CCONJ", 0, "cc")                                        # 48
    subj5 = simple_np(s, "the", ["gentle"], "leader", 0, "nsubj")              # 51
    v5 = s.add("explained", "VERB", v1, "conj",
               {"Mood": "Ind", "Tense": "Past", "VerbForm": "Fin"})            # 52
    s.toks[c2 - 1]["head"] = v5
    s.toks[subj5 - 1]["head"] = v5
    obj5 = simple_np(s, "the", ["complex"], "plan", v5, "obj")                 # 55
    pp(s, "of", "the", ["modern"], "journey", obj5, "nmod")                    # 59
    pp(s, "at", "the", ["large"], "meeting", v5)                               # 63
    m3 = s.add("to", "PART", 0, "mark")                                        # 64
    v6 = s.add("finish", "VERB", v5, "xcomp", {"VerbForm": "Inf"})             # 65
    s.toks[m3 - 1]["head"] = v6
    simple_np(s, "the", ["simple"], "report", v6, "obj")                       # 68
    pp(s, "before", "the", ["dark"], "evening", v6)                            # 72
    s.add(".", "PUNCT", v1, "punct")
    assert len(s.toks) == 73, len(s.toks)
    # drop the final period to land exactly on 72 tokens
    s.toks.pop()
    assert len(s.toks) == 72
    assert sum(1 for t in s.toks if t["upos"] == "VERB") == 6
    fixtures.append(("ord72", s, 239.0))
    return fixtures


# ---------------------------------------------------------------- corpora

def make_demo(root):
    rng = random.Random(SEED)
    cache = {}
    bitext, conllu = [], []
    seen_src, seen_tgt = set(), set()

    def emit(pid, s, target=None, ppl=None):
        src = " ".join(s.forms())
        tgt = target if target is not None else hindi_sentence(s.forms(), cache)
        ppl_val = ppl if ppl is not None else nlm_ppl(s, rng)
        bitext.append(f"{pid}\t{src}\t{tgt}\tnlm_ppl={ppl_val}")
        conllu.append(s.conllu(pid))

    def fresh_sentence(min_tokens=0):
        # Sources are unique so the only duplicate/conflict pairs in the demo
        # corpus are the planted ones.
        while True:
            s = gen_sentence(rng)
            src = " ".join(s.forms())
            tgt = hindi_sentence(s.forms(), cache)
            if len(s.toks) >= min_tokens and src not in seen_src and tgt not in seen_tgt:
                seen_src.add(src)
                seen_tgt.add(tgt)
                return s

    n_clean = 986  # 14 planted dirty pairs below bring the total to 1000
    for i in range(n_clean):
        emit(f"d{i + 1:04d}", fresh_sentence())

    # dirty pairs: two exact duplicates
    for i, src_idx in enumerate([10, 250]):
        dup = bitext[src_idx].split("\t")
        pid = f"x_dup{i + 1}"
        bitext.append(f"{pid}\t{dup[1]}\t{dup[2]}\t{dup[3]}")
        src_id = dup[0]
        block = next(c for c in conllu if c.startswith(f"# sent_id = {src_id}\n"))
        conllu.append(block.replace(f"# sent_id = {src_id}", f"# sent_id = {pid}", 1))

    # three roman-heavy targets
    for i in range(3):
        s = fresh_sentence()
        pid = f"x_rom{i + 1}"
        roman_tgt = " ".join(s.forms()[:-1]) + " ठीक"
        emit(pid, s, target=roman_tgt)

    # three length-ratio violations (3-token targets, so sources need > 12)
    for i in range(3):
        s = fresh_sentence(min_tokens=13)
        pid = f"x_ratio{i + 1}"
        emit(pid, s, target="छोटा वाक्य " + DEVA_SYLLABLES[i])

    # one-to-many: one source with two targets, one target with two sources
    s = fresh_sentence()
    emit("x_o2m1a", s)
    emit("x_o2m1b", s, target=hindi_sentence(s.forms(), cache) + " भी")
    s1 = fresh_sentence(min_tokens=6)
    s2 = fresh_sentence(min_tokens=6)
    while not 0.7 <= len(s2.toks) / len(s1.toks) <= 1.4:
        s2 = fresh_sentence(min_tokens=6)
    shared_tgt = hindi_sentence(s1.forms(), cache)
    emit("x_o2m2a", s1, target=shared_tgt)
    emit("x_o2m2b", s2, target=shared_tgt)

    # two multi-sentence sources
    for i in range(2):
        a, b = fresh_sentence(), fresh_sentence()
        pid = f"x_multi{i + 1}"
        src = " ".join(a.forms() + b.forms())
        tgt = hindi_sentence(a.forms(), cache) + " " + hindi_sentence(b.forms(), cache)
        bitext.append(f"{pid}\t{src}\t{tgt}\tnlm_ppl={nlm_ppl(a, rng)}")
        conllu.append(a.conllu(pid))
        conllu.append(b.conllu(pid))

    demo = root / "data" / "demo"
    demo.mkdir(parents=True, exist_ok=True)
    (demo / "bitext.tsv").write_text("\n".join(bitext) + "\n", encoding="utf-8")
    (demo / "source.conllu").write_text("\n".join(conllu), encoding="utf-8")

    # synthetic back-translated-style corpus, skewed long: draw a target
    # length band per pair so every complexity cluster of the fitted demo
    # model has synthetic mass available for deficit fill
    syn_bitext, syn_conllu = [], []
    bands = [(3, 9, 0), (9, 20, 1), (20, 32, 3), (32, 85, 5)]
    for i in range(400):
        lo, hi, sz = rng.choices(bands, weights=[10, 25, 30, 35])[0]
        s = gen_sentence(rng, size=sz)
        tries = 0
        while not (lo <= len(s.toks) < hi) and tries < 12:
            s = gen_sentence(rng, size=sz)
            tries += 1
        pid = f"s{i + 1:04d}"
        lp = round(-abs(rng.gauss(0.45, 0.3)), 3)
        if i == 0:
            lp = -1.0  # boundary: kept
        src = " ".join(s.forms())
        tgt = hindi_sentence(s.forms(), cache)
        syn_bitext.append(f"{pid}\t{src}\t{tgt}\tavg_logprob={lp};nlm_ppl={nlm_ppl(s, rng)}")
        syn_conllu.append(s.conllu(pid))
    (demo / "synthetic_bitext.tsv").write_text("\n".join(syn_bitext) + "\n",
                                               encoding="utf-8")
    (demo / "synthetic_source.conllu").write_text("\n".join(syn_conllu), encoding="utf-8")

    # ordering fixtures
    fx = root / "data" / "fixtures"
    fx.mkdir(parents=True, exist_ok=True)
    lines, blocks = [], []
    for pid, s, ppl in ordering_fixtures():
        src = " ".join(s.forms())
        tgt = hindi_sentence(s.forms(), cache)
        lines.append(f"{pid}\t{src}\t{tgt}\tnlm_ppl={ppl}")
        blocks.append(s.conllu(pid))
    (fx / "ordering.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (fx / "ordering.conllu").write_text("\n".join(blocks), encoding="utf-8")

    tok_counts = sorted(len(b.split("\t")[1].split()) for b in bitext)
    print(f"demo pairs: {len(bitext)}  synthetic: {len(syn_bitext)}")
    print(f"source tokens: min={tok_counts[0]} median={tok_counts[len(tok_counts) // 2]} "
          f"max={tok_counts[-1]}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=str(Path(__file__).resolve().parent.parent))
    args = ap.parse_args()
    make_demo(Path(args.root))


if __name__ == "__main__":
    main()
