import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gazner.corpus import Tweet
from gazner.errors import ContractViolation
from gazner.normalize import (
    NormalizerConfig,
    Token,
    hashtag_disposition,
    normalize,
    rewrite_social,
    segment_hashtag,
    strip_noise,
    tokenize,
)

TABLE_TEXT = (
    "RT @eurweb The I bus i was on, was on fire and and I saw The Hobbit: 2 "
    "with @JMussehl! and it was so #damngood! #Hobbit #busfire http://t.co/M2nYROTpdS"
)
TABLE_VOCAB = {"hobbit", "2", "damn", "good", "bus", "desolation", "of", "smaug"}


def surfaces(tokens):
    return [t.surface for t in tokens]


class TestTokenize:
    def test_hashtag_kept_atomic(self):
        assert surfaces(tokenize("the #Hobbit!")) == ["the", "#Hobbit", "!"]

    def test_retweet_prefix(self):
        assert surfaces(tokenize("RT @eurweb The I bus")) == ["RT", "@eurweb", "The", "I", "bus"]

    def test_empty(self):
        assert tokenize("") == []

    def test_origins_cover_source(self):
        text = "saw The Hobbit: 2 #damngood http://t.co/x"
        for tok in tokenize(text):
            start, end = tok.origin
            assert text[start:end] == tok.surface

    def test_url_atomic(self):
        toks = tokenize("look http://t.co/M2nYROTpdS now")
        assert surfaces(toks) == ["look", "http://t.co/M2nYROTpdS", "now"]

    def test_word_internal_apostrophe_and_hyphen(self):
        assert surfaces(tokenize("Can't miss Blu-Ray")) == ["Can't", "miss", "Blu-Ray"]

    def test_number_kind(self):
        kinds = [t.kind for t in tokenize("#Hobbit 2")]
        assert kinds == ["hashtag", "number"]


class TestStripNoise:
    def test_url_and_article(self):
        toks = tokenize("the Hobbit http://t.co/M2nYROTpdS")
        assert surfaces(strip_noise(toks)) == ["Hobbit"]

    def test_article_case_insensitive(self):
        assert surfaces(strip_noise(tokenize("The I bus"))) == ["I", "bus"]

    def test_empty(self):
        assert strip_noise([]) == []

    def test_punctuation_tokens_removed(self):
        assert surfaces(strip_noise(tokenize("wow ! , ... #"))) == ["wow"]

    def test_order_preserved(self):
        toks = strip_noise(tokenize("a big an ugly the fight"))
        assert surfaces(toks) == ["big", "ugly", "fight"]


class TestRewriteSocial:
    def test_leading_pair_removed(self):
        toks = rewrite_social(tokenize("RT @eurweb I bus"))
        assert surfaces(toks) == ["I", "bus"]

    def test_mention_replaced(self):
        toks = rewrite_social(tokenize("with @JMussehl"))
        assert surfaces(toks) == ["with", "#USER#"]
        assert toks[1].kind == "user_placeholder"
        assert toks[1].origin is None

    def test_lone_rt_kept(self):
        assert surfaces(rewrite_social(tokenize("RT"))) == ["RT"]


class TestHashtagDisposition:
    def make(self, text):
        return rewrite_social(strip_noise(tokenize(text)))

    def test_table_row(self):
        toks = self.make("and it was so #damngood #Hobbit #busfire")
        i = {t.surface: n for n, t in enumerate(toks)}
        assert hashtag_disposition(toks, i["#damngood"]) == "segment"
        assert hashtag_disposition(toks, i["#Hobbit"]) == "remove"
        assert hashtag_disposition(toks, i["#busfire"]) == "remove"

    def test_mid_sentence_segment(self):
        toks = self.make("Gonna see #DesolationOfSmaug finally")
        assert hashtag_disposition(toks, 2) == "segment"

    def test_trailing_after_clause_removed(self):
        toks = self.make("saw it again yesterday #great")
        assert hashtag_disposition(toks, len(toks) - 1) == "remove"

    def test_out_of_range(self):
        toks = self.make("#tag")
        with pytest.raises(ContractViolation):
            hashtag_disposition(toks, 5)

    def test_not_a_hashtag(self):
        toks = self.make("plain words #tag")
        with pytest.raises(ContractViolation):
            hashtag_disposition(toks, 0)


def brute_force_min_segments(body, vocab):
    """Exhaustive search over all segmentations; None when no cover exists."""
    if not body:
        return 0
    best = None
    for j in range(1, len(body) + 1):
        if body[:j].lower() in vocab:
            rest = brute_force_min_segments(body[j:], vocab)
            if rest is not None and (best is None or rest + 1 < best):
                best = rest + 1
    return best


class TestSegmentHashtag:
    def test_camel_with_vocab(self):
        out = segment_hashtag("#DesolationOfSmaug", {"desolation", "of", "smaug"})
        assert out == ["Desolation", "Of", "Smaug"]

    def test_single(self):
        assert segment_hashtag("#Hobbit", {"hobbit"}) == ["Hobbit"]

    def test_lowercase_pair(self):
        assert segment_hashtag("#damngood", {"damn", "good"}) == ["damn", "good"]

    def test_unsegmentable_single_token(self):
        assert segment_hashtag("#damngood", set()) == ["damngood"]

    def test_camel_fallback_without_vocab(self):
        assert segment_hashtag("#DesolationOfSmaug", set()) == ["Desolation", "Of", "Smaug"]

    def test_requires_hash(self):
        with pytest.raises(ContractViolation):
            segment_hashtag("plain", set())

    def test_leftmost_longest_tie_break(self):
        # both [ab, cd] and [a, bcd] are 2-segment covers; prefer the longer head
        assert segment_hashtag("#abcd", {"ab", "cd", "a", "bcd"}) == ["ab", "cd"]

    @given(
        words=st.lists(st.text(alphabet="abc", min_size=1, max_size=3), min_size=1, max_size=5),
        extra=st.sets(st.text(alphabet="abc", min_size=1, max_size=2), max_size=4),
    )
    @settings(max_examples=200, deadline=None)
    def test_optimality_property(self, words, extra):
        vocab = set(words) | extra
        body = "".join(words)  # guarantees a full cover exists
        got = segment_hashtag("#" + body, vocab)
        assert "".join(got).lower() == body.lower()  # soundness
        assert all(p.lower() in vocab for p in got)
        assert len(got) == brute_force_min_segments(body, vocab)

    @given(st.text(alphabet="abcABC012", min_size=1, max_size=10))
    @settings(max_examples=100, deadline=None)
    def test_soundness_no_cover(self, body):
        got = segment_hashtag("#" + body, set())
        assert "".join(got) == body


class TestNormalize:
    def test_table_trace_exact(self):
        n = normalize(Tweet("t0", TABLE_TEXT, 2013), TABLE_VOCAB)
        assert n.dump_line() == (
            "I bus i was on was on fire and and I saw Hobbit 2 "
            "with #USER# and it was so #damn #good"
        )

    def test_url_only_tweet(self):
        n = normalize(Tweet("t1", "http://t.co/M2nYROTpdS", 2013), set())
        assert n.tokens == ()
        assert n.removed_count == 1

    def test_idempotent_on_surfaces(self):
        first = normalize(Tweet("t0", TABLE_TEXT, 2013), TABLE_VOCAB)
        again = normalize(Tweet("t0", " ".join(first.surfaces()), 2013), TABLE_VOCAB)
        assert again.surfaces() == first.surfaces()

    def test_order_preserved(self):
        n = normalize(Tweet("t2", "saw the #Hobbit with @someone yesterday!", 2013), TABLE_VOCAB)
        origins = [t.origin[0] for t in n.tokens if t.origin]
        assert origins == sorted(origins)

    def test_segmented_pieces_keep_suborigins(self):
        text = "Gonna see #DesolationOfSmaug finally"
        n = normalize(Tweet("t3", text, 2013), TABLE_VOCAB)
        pieces = [t for t in n.tokens if t.kind == "hashtag"]
        assert [t.surface for t in pieces] == ["Desolation", "Of", "Smaug"]
        for t in pieces:
            assert text[t.origin[0] : t.origin[1]] == t.surface

    def test_article_piece_dropped(self):
        n = normalize(
            Tweet("t4", "just saw #12YearsASlave wow", 2013), {"12", "years", "slave"}
        )
        assert [t.surface for t in n.tokens if t.kind == "hashtag"] == ["12", "Years", "Slave"]

    def test_custom_degree_adverbs(self):
        cfg = NormalizerConfig(degree_adverbs=frozenset({"totally"}))
        n = normalize(Tweet("t5", "that was totally #mindblown", 2013), set(), cfg)
        assert n.surfaces() == ["that", "was", "totally", "mindblown"]
