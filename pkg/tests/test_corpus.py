import itertools

import pytest

from gazner.corpus import (
    DatasetSplit,
    GoldSpan,
    Tweet,
    load_corpus,
    project_gold,
    serialize_record,
    split_by_movie,
    write_corpus,
)
from gazner.errors import ContractViolation, CorpusParseError, ValidationError
from gazner.normalize import normalize


def make_tweet(text, spans=(), tid="t1", year=2014):
    return Tweet(tid, text, year, tuple(GoldSpan(*s) for s in spans))


class TestTweetInvariants:
    def test_degenerate_span_rejected(self):
        with pytest.raises(ValidationError):
            make_tweet("hello world", [(4, 4, "X")])

    def test_out_of_bounds_rejected(self):
        with pytest.raises(ValidationError):
            make_tweet("short", [(0, 99, "X")])

    def test_overlap_rejected(self):
        with pytest.raises(ValidationError):
            make_tweet("watch the Hobbit now", [(6, 16, "Hobbit"), (10, 20, "Hobbit")])

    def test_year_must_be_four_digits(self):
        with pytest.raises(ValidationError):
            make_tweet("hi", year=99)


class TestLoadCorpus:
    def test_round_trip(self, tmp_path):
        tweets = [
            make_tweet("I saw the #Hobbit!", [(6, 17, "Hobbit")], tid="a"),
            make_tweet("nothing here", tid="b"),
            make_tweet("Frozen, and 12 Years a Slave", [(0, 6, "Frozen"), (12, 28, "12 Years a Slave")], tid="c"),
        ]
        path = tmp_path / "corpus.tsv"
        write_corpus(tweets, path)
        loaded = load_corpus(path)
        assert loaded == tweets
        assert [serialize_record(t) for t in loaded] == [
            line for line in path.read_text().splitlines()
        ]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("")
        assert load_corpus(path) == []

    def test_malformed_line_names_line_number(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("a\t2014\tok\t\nbroken line\n")
        with pytest.raises(CorpusParseError, match="line 2"):
            load_corpus(path)

    def test_degenerate_span_is_validation_error(self, tmp_path):
        path = tmp_path / "bad2.tsv"
        path.write_text("a\t2014\tsome text\t3,3,X\n")
        with pytest.raises(ValidationError):
            load_corpus(path)

    def test_title_urlencoding(self, tmp_path):
        t = make_tweet("xy", [(0, 2, "Movie, The: Part;2")])
        path = tmp_path / "enc.tsv"
        write_corpus([t], path)
        assert load_corpus(path)[0].gold[0].canonical_title == "Movie, The: Part;2"


def brute_force_partition(tweets, train_titles, eval_ids):
    """Independent oracle: classify each tweet by definition, one at a time."""
    buckets = {"train": [], "seen": [], "unseen": [], "excluded": []}
    for t in tweets:
        titles = {g.canonical_title for g in t.gold}
        inside = titles & train_titles
        outside = titles - train_titles
        if t.id in eval_ids:
            if outside and inside:
                buckets["excluded"].append(t)
            elif outside:
                buckets["unseen"].append(t)
            else:
                buckets["seen"].append(t)
        else:
            buckets["excluded" if outside else "train"].append(t)
    return buckets


class TestSplitByMovie:
    def make_corpus(self):
        texts = [
            ("e1", "saw Alpha", [(4, 9, "Alpha")]),
            ("e2", "saw Beta", [(4, 8, "Beta")]),
            ("e3", "Alpha and Beta", [(0, 5, "Alpha"), (10, 14, "Beta")]),
            ("e4", "no entities here", []),
            ("e5", "Beta again", [(0, 4, "Beta")]),
            ("e6", "more Alpha", [(5, 10, "Alpha")]),
            ("e7", "Alpha focus", [(0, 5, "Alpha")]),
            ("e8", "Beta focus", [(0, 4, "Beta")]),
            ("e9", "plain chatter", []),
            ("e10", "Alpha encore", [(0, 5, "Alpha")]),
        ]
        return [make_tweet(text, spans, tid=tid) for tid, text, spans in texts]

    def test_matches_brute_force_oracle(self):
        tweets = self.make_corpus()
        train_titles = {"Alpha"}
        for k in range(4):
            for ids in itertools.combinations([t.id for t in tweets], k):
                eval_ids = set(ids)
                split = split_by_movie(tweets, train_titles, eval_ids)
                oracle = brute_force_partition(tweets, train_titles, eval_ids)
                assert list(split.train) == oracle["train"]
                assert list(split.eval_seen) == oracle["seen"]
                assert list(split.eval_unseen) == oracle["unseen"]
                assert list(split.excluded) == oracle["excluded"]

    def test_partition_is_exact(self):
        tweets = self.make_corpus()
        split = split_by_movie(tweets, {"Alpha"}, {"e2", "e3", "e5"})
        combined = list(split.train) + list(split.eval_seen) + list(split.eval_unseen) + list(split.excluded)
        assert sorted(t.id for t in combined) == sorted(t.id for t in tweets)
        assert len(combined) == len(tweets)

    def test_all_titles_trained_means_no_unseen(self):
        tweets = self.make_corpus()
        split = split_by_movie(tweets, {"Alpha", "Beta"}, {"e1", "e5"})
        assert split.eval_unseen == ()

    def test_unseen_titles_never_in_train(self):
        tweets = self.make_corpus()
        split = split_by_movie(tweets, {"Alpha"}, {"e2", "e5", "e8"})
        train_titles_seen = {g.canonical_title for t in split.train for g in t.gold}
        for t in split.eval_unseen:
            assert not (t.titles() & train_titles_seen)

    def test_empty_train_titles_rejected(self):
        with pytest.raises(ContractViolation):
            split_by_movie(self.make_corpus(), set(), set())


class TestProjectGold:
    VOCAB = {"hobbit", "12", "years", "slave"}

    def project(self, text, spans, vocab=None):
        t = make_tweet(text, spans)
        norm = normalize(t, vocab if vocab is not None else self.VOCAB)
        return norm, project_gold(t, norm)

    def test_article_dropped_inside_span(self):
        text = "Can't wait to see the #Hobbit tomorrow!"
        norm, spans = self.project(text, [(18, 29, "Hobbit")])  # "the #Hobbit"
        assert len(spans) == 1
        s, e = spans[0]
        assert [t.surface for t in norm.tokens[s:e]] == ["Hobbit"]

    def test_alignment_oracle_on_multiword_span(self):
        # independent recomputation from the character alignment table
        text = "Finally got 12 Years a Slave on Blu-Ray!"
        norm, spans = self.project(text, [(12, 28, "12 Years a Slave")])
        expected = [
            i
            for i, tok in enumerate(norm.tokens)
            if tok.origin and 12 <= tok.origin[0] and tok.origin[1] <= 28
        ]
        assert spans == [(expected[0], expected[-1] + 1)]
        s, e = spans[0]
        assert [t.surface for t in norm.tokens[s:e]] == ["12", "Years", "Slave"]

    def test_fully_removed_span_projects_to_nothing(self):
        norm, spans = self.project("the !!!", [(0, 7, "The !!!")], vocab=set())
        assert spans == []

    def test_wrong_norm_rejected(self):
        t1 = make_tweet("one text")
        t2 = make_tweet("other text", tid="t2")
        norm2 = normalize(t2, set())
        with pytest.raises(ContractViolation):
            project_gold(t1, norm2)

    def test_projected_spans_ordered_disjoint(self):
        text = "Frozen then the Hobbit after"
        t = make_tweet(text, [(0, 6, "Frozen"), (12, 22, "Hobbit")])
        norm = normalize(t, {"frozen", "hobbit"})
        spans = project_gold(t, norm)
        assert spans == sorted(spans)
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2
