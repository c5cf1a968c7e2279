from gazner.candidates import identify, label_candidates
from gazner.corpus import GoldSpan, Tweet, project_gold
from gazner.gazetteer import GazetteerEntry, build_index_from_entries
from gazner.normalize import normalize

ENTRIES = [
    GazetteerEntry("m1", "I Do", 2012),
    GazetteerEntry("m2", "Pompeii", 2014),
    GazetteerEntry("m3", "NBA Live 2001 - The Music Videos", 2000),
    GazetteerEntry("m4", "In Heat", 1976),
    GazetteerEntry("m5", "Heat", 1995),
    GazetteerEntry("m6", "The Hobbit: An Unexpected Journey", 2012),
]
INDEX = build_index_from_entries(ENTRIES)


def run(text, gold=()):
    tweet = Tweet("t", text, 2014, tuple(GoldSpan(*g) for g in gold))
    norm = normalize(tweet, INDEX.vocab)
    return tweet, norm, identify(norm, INDEX)


class TestIdentify:
    def test_overgeneration_example(self):
        _, _, cands = run("I do not understand the Pompeii music videos")
        assert [(c.surface, c.match_type) for c in cands] == [
            ("I do", "full"),
            ("Pompeii", "full"),
            ("music videos", "sub"),
        ]

    def test_no_matches(self):
        _, _, cands = run("nothing matchable here at all")
        assert cands == []

    def test_longest_match_shadows_inner_entity(self):
        _, _, cands = run("@user looks like albino in Heat")
        assert [(c.surface, c.match_type) for c in cands] == [("in Heat", "full")]

    def test_hashtag_participates_stripped(self):
        _, _, cands = run("loved the #Hobbit so much")
        assert [c.surface for c in cands] == ["#Hobbit"]
        assert cands[0].match_type == "main"

    def test_spans_disjoint_and_ordered(self):
        _, _, cands = run("I do I do Pompeii Heat Pompeii")
        spans = [c.token_span for c in cands]
        assert spans == sorted(spans)
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2

    def test_determinism(self):
        a = run("I do love Pompeii music videos")[2]
        b = run("I do love Pompeii music videos")[2]
        assert a == b


class TestLabelCandidates:
    def test_exact_match_positive(self):
        tweet, norm, cands = run("Pompeii was great", gold=[(0, 7, "Pompeii")])
        gold_spans = project_gold(tweet, norm)
        labeled = label_candidates(cands, gold_spans)
        assert [l.positive for l in labeled] == [True]

    def test_off_by_one_token_negative(self):
        # gold marks "Heat" but the candidate is the longer "in Heat"
        text = "@user looks like albino in Heat"
        gold_start = text.index("Heat")
        tweet, norm, cands = run(text, gold=[(gold_start, gold_start + 4, "Heat")])
        gold_spans = project_gold(tweet, norm)
        labeled = label_candidates(cands, gold_spans)
        assert [l.positive for l in labeled] == [False]

    def test_no_gold_all_negative(self):
        _, _, cands = run("I do love Pompeii")
        labeled = label_candidates(cands, [])
        assert labeled and all(not l.positive for l in labeled)

    def test_every_candidate_labeled(self):
        _, _, cands = run("I do love Pompeii music videos")
        assert len(label_candidates(cands, [])) == len(cands)


class TestRecallBound:
    def test_indexed_gold_spans_covered_unless_shadowed(self):
        cases = [
            ("Pompeii tonight", [(0, 7, "Pompeii")]),
            ("cannot wait for the #Hobbit premiere", [(16, 27, "Hobbit")]),
            ("I do think music videos rock", [(11, 23, "NBA Live 2001 - The Music Videos")]),
        ]
        for text, gold in cases:
            tweet, norm, cands = run(text, gold=gold)
            gold_spans = project_gold(tweet, norm)
            spans = {c.token_span for c in cands}
            for g in gold_spans:
                assert g in spans, (text, g, spans)
