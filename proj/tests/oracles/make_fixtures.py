#!/usr/bin/env python3
"""Reference implementations used to freeze expected values under tests/data.

Everything here is written from the rules in the README independently of the
C++ sources: regexes instead of hand-written scanners, Python sets and sums
instead of the library's data structures. Run from the repository root:

    python3 tests/oracles/make_fixtures.py
"""

import math
import random
import re
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:[-'][A-Za-z0-9]+)*")
ABBREVIATIONS = {"Mr", "Mrs", "Ms", "Dr", "Inc", "Corp", "Co", "St", "Jr", "Sr", "U.S", "vs", "etc"}
# Terminator followed by whitespace and an uppercase letter, a digit or the end,
# or a terminator that is the final character.
BOUNDARY_RE = re.compile(r"[.!?](?=\s+(?:[A-Z0-9]|\Z)|\Z)")
GLUED_WORD_RE = re.compile(r"[A-Za-z0-9.'-]*$")


def tokens(text):
    return TOKEN_RE.findall(text)


def sentence_count(text):
    starts = [m.start() for m in TOKEN_RE.finditer(text)]
    cuts = []
    for m in BOUNDARY_RE.finditer(text):
        pos = m.start()
        if text[pos] == ".":
            word = GLUED_WORD_RE.search(text[:pos]).group(0).lstrip(".'-")
            if word in ABBREVIATIONS:
                continue
        cuts.append(pos)
    # A sentence is a maximal run of tokens between consecutive cuts.
    groups = set()
    for s in starts:
        groups.add(sum(1 for c in cuts if c < s))
    return len(groups)


def style_vector(text):
    toks = tokens(text)
    n = len(toks)
    chars = sum(1 for ch in text if not ch.isspace())
    digits = sum(1 for ch in text if ch in "0123456789")
    sents = sentence_count(text)
    row = {"word_count": n}
    row["type_token_ratio"] = len({t.lower() for t in toks}) / n if n else None
    row["avg_word_length"] = sum(len(t) for t in toks) / n if n else None
    row["words_per_sentence"] = n / sents if sents else None
    row["digits_per_kchar"] = 1000.0 * digits / chars if chars else None
    row["long_word_ratio"] = sum(1 for t in toks if len(t) > 6) / n if n else None
    return row, sents


FIELDS = ["word_count", "type_token_ratio", "avg_word_length", "words_per_sentence",
          "digits_per_kchar", "long_word_ratio"]


def fmt(v):
    return "NA" if v is None else repr(float(v)) if not isinstance(v, int) else str(v)


def random_text(rng, vocab, words):
    out = []
    written = 0
    while written < words:
        n = min(rng.randint(3, 25), words - written)
        sent = []
        for i in range(n):
            r = rng.random()
            if r < 0.04:
                w = str(rng.randint(0, 99999))
            elif r < 0.07:
                w = rng.choice(["don't", "type-token", "U.S.", "Mr.", "co-op", "it's"])
            else:
                w = rng.choice(vocab)
            if i == 0 and w[0].isalpha():
                w = w[0].upper() + w[1:]
            sent.append(w)
            if rng.random() < 0.05:
                sent.append(rng.choice([",", ";", "--", "(", ")", "&", "%", "$5"]))
        end = rng.choice([".", ".", ".", "?", "!"])
        out.append(" ".join(sent) + end)
        written += n
    sep = rng.choice([" ", "  ", "\n"])
    return sep.join(out)


def write_style_fixture():
    rng = random.Random(4242)
    vocab = ["".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(rng.randint(1, 12)))
             for _ in range(400)]
    docs = []
    for i in range(50):
        kind = i % 10
        if kind == 0:
            text = ""                         # empty document
        elif kind == 1:
            text = "12.5 % 3,400 -- 77 | 19 20"  # table-like row, no terminator
        else:
            text = random_text(rng, vocab, rng.randint(5, 400))
        docs.append((f"S{i:03d}", text))
    with open(DATA / "style_fixture.sgml", "w") as f:
        for doc_id, text in docs:
            esc = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            f.write(f"<DOC>\n<DOCNO> {doc_id} </DOCNO>\n<TEXT>{esc}</TEXT>\n</DOC>\n")
    with open(DATA / "style_fixture_expected.tsv", "w") as f:
        f.write("doc_id\tsentences\t" + "\t".join(FIELDS) + "\n")
        for doc_id, text in docs:
            row, sents = style_vector(text)
            f.write(doc_id + "\t" + str(sents) + "\t" + "\t".join(fmt(row[k]) for k in FIELDS) + "\n")
    return docs


def write_aggregation_fixture(docs):
    # Category labels for the 50 style documents; means per category excluding
    # undefined values.
    labels = {}
    rng = random.Random(7)
    for doc_id, _ in docs:
        labels[doc_id] = rng.choice(["Relevant", "NonRelevant", "NotJudged"])
    with open(DATA / "style_fixture_qrels.txt", "w") as f:
        for doc_id, _ in docs:
            if labels[doc_id] == "Relevant":
                f.write(f"201 0 {doc_id} 0\n202 0 {doc_id} 1\n")
            elif labels[doc_id] == "NonRelevant":
                f.write(f"203 0 {doc_id} 0\n")
    vectors = {doc_id: style_vector(text)[0] for doc_id, text in docs}
    with open(DATA / "style_fixture_means.tsv", "w") as f:
        f.write("category\tcount\t" + "\t".join(FIELDS) + "\n")
        for cat in ["Relevant", "NonRelevant", "NotJudged"]:
            members = sorted(d for d in vectors if labels[d] == cat)
            cells = []
            for k in FIELDS:
                vals = [vectors[d][k] for d in members if vectors[d][k] is not None]
                cells.append(fmt(math.fsum(vals) / len(vals)) if vals else "NA")
            f.write(f"{cat}\t{len(members)}\t" + "\t".join(cells) + "\n")


def write_tokenizer_fixture():
    text = (
        "The type-token ratio of a 200-word paragraph isn't hard to compute, Mr. Smith said. "
        "It's a measure -- crude, perhaps -- of lexical diversity; editors at the U.S. desk "
        "rarely think about it. Yet the Journal's stock tables (\"closing prices,\" 3.5% yields, "
        "$12,000 lots) drag the number down: columns of digits repeat endlessly. Consider "
        "an editorial: long sentences, rich vocabulary, few numbers! Compare a What's-News "
        "item: one sentence, a name, a verb. Dr. Jones of Acme Inc. disagreed? She argued that "
        "rock-'n'-roll lyrics and 1990s ad copy show similar ratios. Co-authors from St. Louis "
        "replied in 1991 with 12 counter-examples, etc. Nobody was convinced. Prices rose 4-5 "
        "points on Tuesday; analysts (about 30 of them) called it a 'dead-cat bounce'. In short, "
        "the statistic is blunt but cheap -- a trade-off most readers&apos; guides accept. "
        "Long words such as incomprehensibility inflate averages, while short ones like a, an "
        "and the deflate them. Numbers like 1,234,567 split into several tokens under simple "
        "rules. The well-known state-of-the-art methods do better, but they're not needed here. "
        "Ms. Brown's team counted 37 sentences in 4 articles vs. 29 in 3 letters. Finally, "
        "U.S. regulators - not traders - set the rules"
    )
    (DATA / "tokenizer_paragraph.txt").write_text(text)
    (DATA / "tokenizer_paragraph.tokens").write_text("\n".join(tokens(text)) + "\n")


def write_sgml_fixture():
    records = [
        ("WSJ910102-0001", ["Stocks rose sharply in heavy trading."], "<HL> Markets </HL>"),
        ("WSJ910102-0002", ["AT&amp;T said profit rose.", "Analysts were surprised."], "<DD> 01/02/91 </DD>"),
        ("WSJ910102-0003", [""], ""),
        ("WSJ910102-0004", ["Prices: 3 &lt; 4 &gt; 2 and &quot;quoted&quot; &apos;text&apos;."], ""),
        ("WSJ910102-0005", ["Unknown &eacute; entity &#38; stays."], "<SO> Wire </SO>"),
        ("WSJ910102-0006", ["Inline <p>markup</p> is <b>stripped</b>."], ""),
        ("WSJ910102-0007", ["First region.", "Second region.", "Third region."], ""),
        ("WSJ910102-0008", [], "<HL> Only a headline </HL>"),
        ("WSJ910102-0009", ["  Padded\n  text with\nnewlines.  "], ""),
        ("WSJ910102-0010", ["Last record &amp; done."], "<DATELINE> NEW YORK </DATELINE>"),
    ]
    with open(DATA / "sgml_fixture.sgml", "w") as f:
        for doc_id, texts, extra in records:
            f.write("<DOC>\n<DOCNO> " + doc_id + " </DOCNO>\n")
            if extra:
                f.write(extra + "\n")
            for t in texts:
                f.write("<TEXT>\n" + t + "\n</TEXT>\n")
            f.write("</DOC>\n")
    # Ad-hoc extraction straight from the file with regexes.
    raw = (DATA / "sgml_fixture.sgml").read_text()
    out = []
    for rec in re.findall(r"<DOC>(.*?)</DOC>", raw, re.S):
        doc_id = re.search(r"<DOCNO>(.*?)</DOCNO>", rec, re.S).group(1).strip()
        regions = []
        for body in re.findall(r"<TEXT>(.*?)</TEXT>", rec, re.S):
            body = re.sub(r"<[^>]*>", "", body)
            for ent, ch in [("&lt;", "<"), ("&gt;", ">"), ("&quot;", '"'), ("&apos;", "'"), ("&amp;", "&")]:
                body = body.replace(ent, ch)
            regions.append(body.strip())
        text = "\n".join(regions)
        out.append(doc_id + "\t" + text.replace("\\", "\\\\").replace("\n", "\\n"))
    (DATA / "sgml_fixture_expected.tsv").write_text("\n".join(out) + "\n")


def depth_reference(tokens_, w=20, k=6):
    """Gap scores and depths for the block comparison, smoothing width 2, one round."""
    types = [t.lower() for t in tokens_]
    pseudo = [types[i:i + w] for i in range(0, len(types), w)]
    m = len(pseudo)
    raw = []
    for split in range(1, m):
        left = {}
        for ps in pseudo[max(0, split - k):split]:
            for t in ps:
                left[t] = left.get(t, 0) + 1
        right = {}
        for ps in pseudo[split:min(m, split + k)]:
            for t in ps:
                right[t] = right.get(t, 0) + 1
        dot = sum(c * right.get(t, 0) for t, c in left.items())
        nl = sum(c * c for c in left.values())
        nr = sum(c * c for c in right.values())
        raw.append(dot / math.sqrt(nl * nr))
    sm = []
    for i in range(len(raw)):
        window = raw[max(0, i - 1):i + 2]
        sm.append(sum(window) / len(window))
    depth = []
    for i in range(len(sm)):
        l = i
        while l > 0 and sm[l - 1] >= sm[l]:
            l -= 1
        r = i
        while r + 1 < len(sm) and sm[r + 1] >= sm[r]:
            r += 1
        depth.append((sm[l] - sm[i]) + (sm[r] - sm[i]))
    return sm, depth


def write_tiling_fixture():
    rng = random.Random(99)
    letters = "abcdefghijklmnopqrstuvwxyz"
    va = sorted({"".join(rng.choice(letters) for _ in range(6)) for _ in range(60)})[:50]
    vb = sorted({"".join(rng.choice(letters) for _ in range(7)) for _ in range(60)} - set(va))[:50]
    toks = [rng.choice(va) for _ in range(400)] + [rng.choice(vb) for _ in range(400)]
    (DATA / "tiling_two_topics.tokens").write_text("\n".join(toks) + "\n")
    sm, depth = depth_reference(toks)
    with open(DATA / "tiling_two_topics_expected.tsv", "w") as f:
        f.write("gap\tscore\tdepth\n")
        for i, (s, d) in enumerate(zip(sm, depth)):
            f.write(f"{i}\t{s!r}\t{d!r}\n")


def write_pipeline_golden(docs):
    """table1.tsv as the pipeline should print it, and Mann-Whitney U1 / p for
    Relevant vs NonRelevant from scipy (tie-corrected, continuity-corrected)."""
    from scipy.stats import mannwhitneyu

    labels = {}
    for line in (DATA / "style_fixture_qrels.txt").read_text().splitlines():
        _, _, doc_id, rel = line.split()
        labels[doc_id] = "Relevant" if rel == "1" or labels.get(doc_id) == "Relevant" else "NonRelevant"
    vectors = {doc_id: style_vector(text)[0] for doc_id, text in docs}

    def g4(v):
        s = "%.4g" % v
        assert "e" not in s, s
        return s

    table_fields = ["word_count", "type_token_ratio", "avg_word_length", "words_per_sentence"]
    lines = ["Category\tNumber\tWordCount\tTypeTokenRatio\tWordLength\tWordsPerSentence"]
    for cat in ["Relevant", "NonRelevant", "NotJudged"]:
        members = sorted(d for d in vectors if labels.get(d, "NotJudged") == cat)
        cells = [cat, str(len(members))]
        for k in table_fields:
            vals = [vectors[d][k] for d in members if vectors[d][k] is not None]
            cells.append(g4(math.fsum(vals) / len(vals)) if vals else "NA")
        lines.append("\t".join(cells))
    (DATA / "golden_table1.tsv").write_text("\n".join(lines) + "\n")

    with open(DATA / "golden_tests.tsv", "w") as f:
        f.write("field\tn1\tn2\tu1\tp\n")
        for k in table_fields:
            a = [vectors[d][k] for d in sorted(vectors) if labels.get(d) == "Relevant" and vectors[d][k] is not None]
            b = [vectors[d][k] for d in sorted(vectors) if labels.get(d) == "NonRelevant" and vectors[d][k] is not None]
            r = mannwhitneyu(a, b, use_continuity=True, alternative="two-sided", method="asymptotic")
            f.write(f"{k}\t{len(a)}\t{len(b)}\t{float(r.statistic)!r}\t{float(r.pvalue)!r}\n")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    docs = write_style_fixture()
    write_aggregation_fixture(docs)
    write_tokenizer_fixture()
    write_sgml_fixture()
    write_tiling_fixture()
    write_pipeline_golden(docs)
