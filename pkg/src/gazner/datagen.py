"""Deterministic demo data: a labeled tweet corpus with its gazetteer,
word vectors, split lists, and ladder spec.

The generator mirrors the statistics of a targeted movie-tweet annotation
effort: 1,096 tweets of which 71.9% carry at least one gold mention,
667/129/115 train/eval1/eval2 entities, eval2 movies disjoint from
training movies, a gazetteer snapshot whose common-word titles make the
candidate stage over-generate (~14% baseline precision), a sloppier
register on eval1 than eval2, and synonym-shifted contexts in the
evaluation sets that embedding supplements can bridge.  Everything is
seeded; the same seed writes byte-identical files.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .candidates import identify
from .corpus import GoldSpan, Tweet, project_gold, write_corpus
from .gazetteer import GazetteerEntry, build_index_from_entries
from .normalize import normalize

# --------------------------------------------------------------------------
# movie inventory
# --------------------------------------------------------------------------

# canonical -> list of gazetteer titles with release years
TRAIN_MOVIES: dict[str, list[tuple[str, int]]] = {
    "Hobbit": [
        ("The Hobbit: An Unexpected Journey", 2012),
        ("The Hobbit: The Desolation of Smaug", 2013),
        ("The Hobbit 2: The Desolation of Smaug", 2013),
    ],
    "Frozen": [("Frozen", 2013)],
    "Gravity": [("Gravity", 2013)],
    "12 Years a Slave": [("12 Years a Slave", 2013)],
    "Son of God": [("Son of God", 2014)],
    "Lord of the Rings": [
        ("The Lord of the Rings: The Fellowship of the Ring", 2001),
        ("The Lord of the Rings: The Return of the King", 2003),
    ],
    "Titanic": [("Titanic", 1997)],
    "American Hustle": [("American Hustle", 2013)],
    "Ride Along": [("Ride Along", 2014)],
    "Man of Steel": [("Man of Steel", 2013)],
    "Nebraska": [("Nebraska", 2013)],
    "Pompeii": [("Pompeii", 2014)],
    "Her": [("Her", 2013)],
    "Anchorman 2": [("Anchorman 2: The Legend Continues", 2013)],
    "Despicable Me 2": [("Despicable Me 2", 2013)],
    "Catching Fire": [("The Hunger Games: Catching Fire", 2013)],
    "Thor The Dark World": [("Thor: The Dark World", 2013)],
    "Wolf of Wall Street": [("The Wolf of Wall Street", 2013)],
    "Saving Mr Banks": [("Saving Mr. Banks", 2013)],
    "Walter Mitty": [("The Secret Life of Walter Mitty", 2013)],
    "Heat": [("Heat", 1995)],
    "August Osage County": [("August: Osage County", 2013)],
    "Grudge Match": [("Grudge Match", 2013)],
    "Veronica Mars": [("Veronica Mars", 2014)],
    "Divergent": [("Divergent", 2014)],
    "Noah": [("Noah", 2014)],
    "Rio 2": [("Rio 2", 2014)],
    "Winter Soldier": [("Captain America: The Winter Soldier", 2014)],
    "Muppets Most Wanted": [("Muppets Most Wanted", 2014)],
    "Rise of an Empire": [("300: Rise of an Empire", 2014)],
    "Mr Peabody and Sherman": [("Mr. Peabody and Sherman", 2014)],
    "Need for Speed": [("Need for Speed", 2014)],
    "Winters Tale": [("Winter's Tale", 2014)],
    "Vampire Academy": [("Vampire Academy", 2014)],
    "That Awkward Moment": [("That Awkward Moment", 2014)],
    "Labor Day": [("Labor Day", 2013)],
    "The Nut Job": [("The Nut Job", 2014)],
    "I Frankenstein": [("I, Frankenstein", 2014)],
    "Devils Due": [("Devil's Due", 2014)],
    "Gloria": [("Gloria", 2013)],
    "Gimme Shelter": [("Gimme Shelter", 2014)],
    "Enders Game": [("Ender's Game", 2013)],
    "Free Birds": [("Free Birds", 2013)],
    "Bad Grandpa": [("Bad Grandpa", 2013)],
    "Delivery Man": [("Delivery Man", 2013)],
    "Out of the Furnace": [("Out of the Furnace", 2013)],
    "Oldboy": [("Oldboy", 2013)],
    "Homefront": [("Homefront", 2013)],
    "Philomena": [("Philomena", 2013)],
}

EVAL2_MOVIES: dict[str, list[tuple[str, int]]] = {
    "Dallas Buyers Club": [("Dallas Buyers Club", 2013)],
    "Non Stop": [("Non Stop", 2014)],
    "Lego Movie": [("The Lego Movie", 2014)],
    "Lone Survivor": [("Lone Survivor", 2013)],
    "Jack Ryan Shadow Recruit": [("Jack Ryan: Shadow Recruit", 2014)],
    "RoboCop": [("RoboCop", 2014)],
    "Endless Love": [("Endless Love", 2014)],
    "Monuments Men": [("The Monuments Men", 2014)],
}

# words the negative fragments use that are themselves gazetteer titles;
# this is what drives candidate over-generation
NOISE_TITLES: list[tuple[str, int]] = [
    ("Tonight", 1987),
    ("The Weekend", 2004),
    ("Home", 2008),
    ("The Game", 1997),
    ("Work", 2003),
    ("Rain", 2001),
    ("Snow", 2004),
    ("Dinner", 1997),
    ("Coffee", 2006),
    ("Morning", 2010),
    ("Monday", 2000),
    ("Traffic", 2000),
    ("Life", 1999),
    ("Love", 1997),
    ("Friends", 1993),
    ("The Bus", 1976),
    ("Heat", 1995),  # also a corpus movie; duplicate titles are allowed
    ("In Heat", 1976),
    ("I Do", 2012),
    ("NBA Live 2001 - The Music Videos", 2000),
    ("Breakfast", 2008),
    ("The Office", 2005),
    ("Winter", 2006),
    ("Summer", 2008),
    ("Class", 1983),
    ("Homework", 1982),
    ("Taxi", 2004),
    ("Pizza", 2005),
    ("Damn Yankees", 1958),
    ("Good Will Hunting", 1997),
    ("Last Night", 2010),
    # contemporary distractors: same release window as the corpus movies, so
    # release-year features cannot separate them
    ("The News", 2013),
    ("Gym", 2013),
    ("Shopping", 2014),
    ("Laundry", 2013),
    ("Payday", 2014),
    ("Good Times", 2013),
    ("Road Trip", 2013),
    ("Game Night", 2014),
    ("Date Night", 2013),
    ("Girls Night Out", 2014),
    ("Brunch", 2014),
    ("Errands", 2013),
    ("Spring Cleaning", 2014),
    ("Night Shift", 2013),
    ("Study Group", 2013),
    ("Block Party", 2014),
    ("Open Mic Night", 2013),
]

# words / phrases usable as strong-looking spurious mentions; multi-token
# entries keep token-count features from separating the classes
CONTEMP_NOISE_SURFACES = [
    "Payday", "Shopping", "Laundry", "Gym", "Brunch", "Errands",
    "Good Times", "Road Trip", "Game Night", "Date Night",
    "Spring Cleaning", "Night Shift", "Study Group", "Block Party",
    "Girls Night Out", "Open Mic Night",
]

# spurious mentions for the strong-context false-positive fragments
HARD_NEG_SURFACES = [
    "Good Times", "Road Trip", "Game Night", "Date Night", "Spring Cleaning",
    "Night Shift", "Study Group", "Block Party", "Girls Night Out", "Open Mic Night",
]

TYPOS = {
    "Hobbit": "Hobbitt",
    "Lord of the Rings": "LOTR",
    "12 Years a Slave": "12Yrs",
    "Wolf of Wall Street": "the wolf on wall street",
    "Lego Movie": "Lego Film",
    "Dallas Buyers Club": "DBC",
    "Non Stop": "NonStop",
}

# --------------------------------------------------------------------------
# context vocabulary: clusters give the embedding table its neighborhoods;
# the *_EVAL variants never occur in training tweets, so only supplement
# features can connect them back to trained weights
# --------------------------------------------------------------------------

CLUSTERS: dict[str, list[str]] = {
    "watch": ["watched", "watching", "watch", "rewatched", "viewed", "streamed"],
    "see": ["see", "saw", "seeing", "catch", "caught"],
    "great": ["amazing", "awesome", "incredible", "brilliant", "phenomenal", "epic"],
    "movie": ["movie", "film", "flick"],
    "soon": ["tomorrow", "tonight", "soon"],
    "work": ["work", "office", "shift"],
    "game": ["game", "match", "playoffs"],
    "food": ["dinner", "lunch", "breakfast", "pizza"],
}

EVAL_SHIFT = {
    "watched": ["viewed", "streamed", "rewatched"],
    "see": ["catch"],
    "saw": ["caught"],
    "amazing": ["brilliant", "phenomenal"],
    "awesome": ["incredible", "epic"],
    "movie": ["film", "flick"],
}

# strong, clearly movie-flavored contexts: only true mentions live here
STRONG_CORES = [
    "just watched {M} with the fam",
    "finally watched {M} yesterday",
    "watched {M} again and again",
    "gonna see {M} tomorrow",
    "going to see {M} with @{U}",
    "saw {M} at the cinema",
    "everyone should see {M} honestly",
    "{M} was amazing",
    "{M} was awesome honestly",
    "ok {M} is the best movie ever",
    "sing songs from {M} all day",
    "watching {M} right now",
    "took the kids to see {M} today",
    "crying because {M} ended",
    "that scene in {M} wrecked me",
    "booked tickets for {M} already",
]

# context-free cores: used verbatim for hard positives AND for negatives,
# so nothing around the slot separates the classes
AMBIG_CORES = [
    "so {M} happened",
    "{M} again i guess",
    "still thinking about {M}",
    "{M} tho",
    "cannot deal with {M} today",
    "all about {M} rn",
    "{M} on my mind",
    "not over {M} yet",
    "{M} felt endless",
    "too much {M} lately",
]

SHADOW_CORES = [
    "looks like albino in {M}",
    "they were out in {M} yesterday",
]

# negative fragments; bracketed vocabulary words are gazetteer noise titles
NEG_FRAGMENTS = [
    ("stuck at work until late", ["work"]),
    ("then home for dinner", ["home", "dinner"]),
    ("coffee first thing", ["coffee"]),
    ("the game was wild", ["game"]),
    ("so much rain today", ["rain"]),
    ("long shift this morning", ["morning"]),
    ("traffic on the way back", ["traffic"]),
    ("what a life", ["life"]),
    ("out with friends", ["friends"]),
    ("pizza for breakfast again", ["pizza", "breakfast"]),
    ("cannot wait for the weekend", ["weekend"]),
    ("found my old homework", ["homework"]),
    ("snow again this winter", ["snow", "winter"]),
    ("the taxi took forever", ["taxi"]),
    ("class was so boring", ["class"]),
    ("monday mood already", ["monday"]),
    ("missed the bus twice", ["bus"]),
    ("laundry day at home", ["laundry", "home"]),
    ("gym then shopping later", ["gym", "shopping"]),
    ("the news was grim", ["news"]),
    ("dinner plans fell through", ["dinner"]),
    ("love this weather", ["love"]),
    ("summer cannot come sooner", ["summer"]),
    ("waiting on payday", ["payday"]),
    ("good times with the crew", ["good times"]),
    ("road trip next week", ["road trip"]),
    ("game night at ours", ["game night"]),
    ("date night plans", ["date night"]),
    ("girls night out later", ["girls night out"]),
    ("brunch ran long", ["brunch"]),
    ("errands all afternoon", ["errands"]),
    ("then #shopping with mom", ["shopping"]),
    ("#gym before anything else", ["gym"]),
]

TRAILING_TAGS = ["#fun", "#lol", "#bored", "#tired", "#blessed", "#mood", "#smh", "#fml"]
USERS = ["mike", "sara", "eurweb", "jess", "tomr", "nina", "dave", "kat"]
URLS = ["http://t.co/M2nYR{:04d}", "http://bit.ly/x{:05d}"]

FILLER_SYLLABLES = ["bra", "vel", "tor", "mun", "zar", "quo", "len", "dri", "pol", "sha",
                    "ket", "rin", "gos", "fal", "nep", "vor", "lum", "tas", "bex", "ond"]


@dataclass
class GenParams:
    seed: int = 7
    n_distractors: int = 10_500
    collection_year: int = 2014
    embedding_dim: int = 32
    # register knobs per split: probability a regular mention keeps proper
    # casing or uses a hashtag form
    caps: dict = field(default_factory=lambda: {"train": 0.62, "eval1": 0.45, "eval2": 0.80})
    hashtag: dict = field(default_factory=lambda: {"train": 0.22, "eval1": 0.25, "eval2": 0.18})
    # style mix of true mentions: hard = ambiguous context + lowercase,
    # shifted = synonym verbs never seen in training (for the supplements)
    hard_pos: dict = field(default_factory=lambda: {"train": 0.26, "eval1": 0.32, "eval2": 0.24})
    shifted_pos: dict = field(default_factory=lambda: {"train": 0.0, "eval1": 0.16, "eval2": 0.16})
    p_shifted_lower: float = 0.5
    neg_caps: dict = field(default_factory=lambda: {"train": 0.10, "eval1": 0.08, "eval2": 0.16})
    # per-tweet rates for deliberately confusing negative material; the
    # lowercase ambiguous negatives must outweigh hard positives in training
    # or the context-free cell tips positive
    p_hard_neg: dict = field(default_factory=lambda: {"train": 0.055, "eval1": 0.075, "eval2": 0.16})
    p_ambig_neg: dict = field(default_factory=lambda: {"train": 0.55, "eval1": 0.55, "eval2": 0.55})
    p_ambig_neg_lower: float = 0.78
    # eval2 has no entity-free tweets (they cannot be "unseen"), so its
    # entity tweets carry more chatter to keep candidate density comparable
    fragments_pos: dict = field(
        default_factory=lambda: {"train": (2, 3), "eval1": (2, 3), "eval2": (5, 7)}
    )
    fragments_neg: tuple = (2, 3)
    p_url: float = 0.74
    p_rt: float = 0.34
    p_mention_deco: float = 0.20
    p_trailing_tags: float = 0.52
    p_bang: float = 0.75
    p_end_punct: float = 0.35
    p_fragment_comma: float = 0.24


# --------------------------------------------------------------------------
# counts
# --------------------------------------------------------------------------

def _tail_counts(names, total, top):
    """Distribute `total` entities over `names` after removing `top` counts."""
    rest = [n for n in names if n not in top]
    remaining = total - sum(top.values())
    base = remaining // len(rest)
    counts = dict(top)
    for i, name in enumerate(rest):
        counts[name] = base + (1 if i < remaining - base * len(rest) else 0)
    assert sum(counts.values()) == total
    return counts


def entity_counts():
    train_top = {"Hobbit": 194, "Frozen": 107, "Gravity": 106, "12 Years a Slave": 96,
                 "Son of God": 14, "Heat": 5}
    train = _tail_counts(list(TRAIN_MOVIES), 667, train_top)
    eval1_movies = [
        "Gravity", "Hobbit", "Frozen", "12 Years a Slave", "Lord of the Rings",
        "American Hustle", "Ride Along", "Titanic", "Her", "Pompeii",
        "Man of Steel", "Nebraska", "Despicable Me 2", "Anchorman 2", "Catching Fire",
        "Heat", "Wolf of Wall Street", "Son of God", "Saving Mr Banks", "Walter Mitty",
    ]
    eval1_top = {"Gravity": 30, "Hobbit": 27, "Frozen": 26, "12 Years a Slave": 17,
                 "Lord of the Rings": 4, "Heat": 2}
    eval1 = _tail_counts(eval1_movies, 129, eval1_top)
    eval2_top = {"Dallas Buyers Club": 41, "Non Stop": 24, "Lego Movie": 21,
                 "Lone Survivor": 20, "Jack Ryan Shadow Recruit": 2}
    eval2 = _tail_counts(list(EVAL2_MOVIES), 115, eval2_top)
    return train, eval1, eval2


# --------------------------------------------------------------------------
# mention forms
# --------------------------------------------------------------------------

def _camel(title: str) -> str:
    words = [w for w in title.replace(":", " ").replace(",", " ").split() if w]
    return "#" + "".join(w[0].upper() + w[1:] for w in words)


def mention_forms(canonical: str, entries: list[tuple[str, int]]) -> dict[str, list[str]]:
    """Candidate-matchable surface forms, keyed plain/hashtag."""
    plain: list[str] = []
    tags: list[str] = []
    for title, _year in entries:
        base = title
        for sep in (":", " - "):
            if sep in title:
                main, sub = title.split(sep, 1)
                main, sub = main.strip(), sub.strip()
                plain.append(main[4:] if main.lower().startswith("the ") else main)
                if len(sub.split()) >= 2:
                    plain.append(sub)
                base = main
        stripped = base[4:] if base.lower().startswith("the ") else base
        plain.append(stripped)
        plain.append("the " + stripped)
        if title == base and title.lower().startswith("the "):
            plain.append(title)  # full form with its article
        elif title != base:
            plain.append(title.replace(" - ", ": "))
        if len(stripped.split()) <= 4:
            tags.append(_camel(stripped))
    uniq = lambda xs: list(dict.fromkeys(xs))
    return {"plain": uniq(plain), "hashtag": uniq(tags)}


# --------------------------------------------------------------------------
# text assembly
# --------------------------------------------------------------------------

class TweetBuilder:
    """Accumulates space-joined chunks while tracking gold spans."""

    def __init__(self):
        self.parts: list[str] = []
        self.length = 0
        self.gold: list[GoldSpan] = []

    def add(self, text: str) -> None:
        if not text:
            return
        if self.parts:
            self.length += 1
        self.parts.append(text)
        self.length += len(text)

    def add_mention(self, surface: str, canonical: str, trailing: str = "") -> None:
        start = self.length + (1 if self.parts else 0)
        self.add(surface + trailing)
        self.gold.append(GoldSpan(start, start + len(surface), canonical))

    def text(self) -> str:
        return " ".join(self.parts)


def _apply_case(fragment: str, capitalize: bool, rng: random.Random) -> str:
    if capitalize and fragment:
        return fragment[0].upper() + fragment[1:]
    return fragment


def _shift_words(text: str, rng: random.Random) -> str:
    out = []
    for w in text.split(" "):
        alts = EVAL_SHIFT.get(w)
        out.append(rng.choice(alts) if alts else w)
    return " ".join(out)


@dataclass
class MentionEvent:
    canonical: str
    kind: str = "normal"  # normal | typo | shadow
    style: str = "regular"  # regular | hard | shifted


def _pick_form(ev, forms, split, params, rng):
    if ev.kind == "typo":
        return TYPOS[ev.canonical]
    if ev.style == "hard":
        return rng.choice(forms["plain"]).lower()
    if ev.style == "shifted":
        surface = rng.choice(forms["plain"])
        return surface.lower() if rng.random() < params.p_shifted_lower else surface
    if forms["hashtag"] and rng.random() < params.hashtag[split]:
        return rng.choice(forms["hashtag"])
    surface = rng.choice(forms["plain"])
    if rng.random() > params.caps[split]:
        surface = surface.lower()
    return surface


def _decorate(builder_text, gold, params, rng, counter):
    """Wrap the core text with retweet/user/url/hashtag noise; gold offsets shift."""
    prefix = ""
    if rng.random() < params.p_rt:
        prefix = f"RT @{rng.choice(USERS)} "
    suffix_parts = []
    if rng.random() < params.p_trailing_tags:
        suffix_parts.extend(rng.sample(TRAILING_TAGS, rng.randint(1, 2)))
    if rng.random() < params.p_url:
        suffix_parts.append(rng.choice(URLS).format(counter % 10000))
    suffix = (" " + " ".join(suffix_parts)) if suffix_parts else ""
    text = prefix + builder_text + suffix
    gold = [GoldSpan(g.start + len(prefix), g.end + len(prefix), g.canonical_title) for g in gold]
    return text, gold


def _add_core(builder, core, surface, canonical, params, rng, sentence_case):
    """Place one {M}-core into the builder; gold span covers the surface."""
    core = core.replace("{U}", rng.choice(USERS))
    before, _, after = core.partition("{M}")
    if builder.parts:
        builder.add("and" if rng.random() < 0.7 else "also")
    if before.strip():
        builder.add(_apply_case(before.strip(), sentence_case and not builder.parts, rng))
    trailing = "!" if not after.strip() and rng.random() < params.p_bang else ""
    if canonical is None:
        builder.add(surface + trailing)
    else:
        builder.add_mention(surface, canonical, trailing)
    builder.add(after.strip() + ("," if rng.random() < 0.15 and after.strip() else ""))


def _add_fragment(builder, frag, split, params, rng):
    frag = _apply_case(frag, rng.random() < params.neg_caps[split] or not builder.parts, rng)
    if builder.parts:
        builder.add(rng.choice(["and", "then", "...", "but"]))
    if rng.random() < params.p_fragment_comma:
        frag += ","
    builder.add(frag + ("!" if rng.random() < 0.2 else ""))


def build_tweet(events, split, forms_by_movie, params, rng, counter):
    builder = TweetBuilder()
    head, tail = [], []
    for ev in events:
        if ev.kind == "shadow":
            piece = ("core", rng.choice(SHADOW_CORES), ev, True)
        elif ev.style == "hard":
            # hard mentions blend into the chatter: same cores and casing as
            # the ambiguous negatives, random position
            piece = ("core", rng.choice(AMBIG_CORES), ev, False)
        elif ev.style == "shifted":
            piece = ("core", _shift_words(rng.choice(STRONG_CORES), rng), ev, True)
        else:
            piece = ("core", rng.choice(STRONG_CORES), ev, True)
        (head if piece[3] else tail).append(piece)
    if rng.random() < params.p_hard_neg[split]:
        # a strong movie context wrapped around a contemporary distractor
        tail.append(("noise", rng.choice(STRONG_CORES), rng.choice(HARD_NEG_SURFACES), True))
    if rng.random() < params.p_ambig_neg[split]:
        word = rng.choice(CONTEMP_NOISE_SURFACES)
        if rng.random() < params.p_ambig_neg_lower:
            word = word.lower()
        tail.append(("noise", rng.choice(AMBIG_CORES), word, False))
    n_frag = rng.randint(
        *(params.fragments_pos[split] if events else params.fragments_neg)
    )
    tail.extend(("frag", rng.choice(NEG_FRAGMENTS)[0], None, False) for _ in range(n_frag))
    rng.shuffle(tail)
    for kind, text, payload, sentence_case in head + tail:
        if kind == "core":
            surface = _pick_form(payload, forms_by_movie[payload.canonical], split, params, rng)
            _add_core(builder, text, surface, payload.canonical, params, rng, sentence_case)
        elif kind == "noise":
            _add_core(builder, text, payload, None, params, rng, sentence_case)
        else:
            _add_fragment(builder, text, split, params, rng)
    if rng.random() < params.p_mention_deco:
        builder.add(f"with @{rng.choice(USERS)}")
    if rng.random() < params.p_end_punct:
        builder.add(rng.choice(["...", "!!", "!!!", "??"]))
    return _decorate(builder.text(), builder.gold, params, rng, counter)


# --------------------------------------------------------------------------
# corpus plan
# --------------------------------------------------------------------------

def _pack_events(counts, doubles, typo_movies, shadow_movies, rng, p_hard=0.0, p_shifted=0.0):
    events = []
    for canonical, n in counts.items():
        events.extend(MentionEvent(canonical) for _ in range(n))
    rng.shuffle(events)
    for ev in events:
        r = rng.random()
        if r < p_hard:
            ev.style = "hard"
        elif r < p_hard + p_shifted:
            ev.style = "shifted"
    for movie, n in typo_movies.items():
        marked = 0
        for ev in events:
            if marked == n:
                break
            if ev.canonical == movie and ev.kind == "normal":
                ev.kind = "typo"
                marked += 1
    for movie, n in shadow_movies.items():
        marked = 0
        for ev in events:
            if marked == n:
                break
            if ev.canonical == movie and ev.kind == "normal":
                ev.kind = "shadow"
                marked += 1
    tweets: list[list[MentionEvent]] = []
    i = 0
    for _ in range(doubles):
        tweets.append([events[i], events[i + 1]])
        i += 2
    while i < len(events):
        tweets.append([events[i]])
        i += 1
    rng.shuffle(tweets)
    return tweets


def generate(params: GenParams = GenParams()):
    rng = random.Random(params.seed)
    train_counts, eval1_counts, eval2_counts = entity_counts()
    movies = {**TRAIN_MOVIES, **EVAL2_MOVIES}
    forms = {name: mention_forms(name, entries) for name, entries in movies.items()}

    plan = {
        "train": _pack_events(train_counts, 88, {"Hobbit": 4, "12 Years a Slave": 2,
                                                 "Wolf of Wall Street": 2},
                              {"Heat": 3}, rng,
                              params.hard_pos["train"], params.shifted_pos["train"]),
        "eval1": _pack_events(eval1_counts, 17, {"Hobbit": 1, "Lord of the Rings": 1,
                                                 "12 Years a Slave": 1},
                              {"Heat": 2}, rng,
                              params.hard_pos["eval1"], params.shifted_pos["eval1"]),
        "eval2": _pack_events(eval2_counts, 18, {"Lego Movie": 1, "Dallas Buyers Club": 1,
                                                 "Non Stop": 1}, {}, rng,
                              params.hard_pos["eval2"], params.shifted_pos["eval2"]),
    }
    no_entity = {"train": 204, "eval1": 104, "eval2": 0}

    records = []  # (split, events)
    for split, tweet_events in plan.items():
        records.extend((split, evs) for evs in tweet_events)
        records.extend((split, []) for _ in range(no_entity[split]))
    rng.shuffle(records)

    tweets, eval_ids = [], []
    for counter, (split, events) in enumerate(records):
        text, gold = build_tweet(events, split, forms, params, rng, counter)
        tid = f"t{counter:04d}"
        year = rng.choice([2013, 2014])
        tweets.append(Tweet(tid, text, year, tuple(gold)))
        if split != "train":
            eval_ids.append(tid)

    gazetteer = _build_gazetteer(movies, params, rng)
    table_words = _embedding_words()
    return tweets, gazetteer, eval_ids, table_words


def _build_gazetteer(movies, params, rng):
    entries = []
    eid = 0
    for name, titles in movies.items():
        for title, year in titles:
            entries.append(GazetteerEntry(f"g{eid:05d}", title, year))
            eid += 1
    for title, year in NOISE_TITLES:
        year = year if rng.random() > 0.18 else rng.choice([2013, 2014])
        entries.append(GazetteerEntry(f"g{eid:05d}", title, year))
        eid += 1
    for _ in range(params.n_distractors):
        n_words = rng.choice([1, 2, 2, 3])
        words = [
            "".join(rng.choice(FILLER_SYLLABLES) for _ in range(rng.randint(2, 3))).capitalize()
            for _ in range(n_words)
        ]
        title = " ".join(words)
        year = rng.randint(1930, 2014) if rng.random() > 0.1 else None
        entries.append(GazetteerEntry(f"g{eid:05d}", title, year))
        eid += 1
    return entries


def _embedding_words():
    words = set()
    for cluster in CLUSTERS.values():
        words.update(cluster)
    for core in STRONG_CORES + AMBIG_CORES + SHADOW_CORES:
        words.update(w for w in core.replace("{M}", "").replace("{U}", "").split() if w.isalpha())
    for frag, _ in NEG_FRAGMENTS:
        words.update(w for w in frag.split() if w.isalpha())
    return sorted(words)


def build_embeddings(params: GenParams):
    """Cluster-structured vectors: words in a cluster sit near a shared axis."""
    rng = np.random.default_rng(params.seed)
    vectors: dict[str, np.ndarray] = {}
    for cluster in CLUSTERS.values():
        base = rng.normal(size=params.embedding_dim)
        base /= np.linalg.norm(base)
        for word in cluster:
            noise = rng.normal(size=params.embedding_dim) * 0.12
            vec = base + noise
            vectors[word] = vec / np.linalg.norm(vec)
    for word in _embedding_words():
        if word not in vectors:
            vec = rng.normal(size=params.embedding_dim)
            vectors[word] = vec / np.linalg.norm(vec)
    return vectors


# --------------------------------------------------------------------------
# verification + output
# --------------------------------------------------------------------------

def corpus_stats(tweets, gazetteer):
    """Identification-level sanity numbers, by eval flag."""
    index = build_index_from_entries(gazetteer)
    stats = {}
    for tweet in tweets:
        norm = normalize(tweet, index.vocab)
        cands = identify(norm, index)
        gold = set(project_gold(tweet, norm))
        spans = {c.token_span for c in cands}
        s = stats.setdefault("all", {"tp": 0, "cand": 0, "gold": 0})
        s["tp"] += len(spans & gold)
        s["cand"] += len(spans)
        s["gold"] += len(tweet.gold)
    return stats


ABLATION_TOML = """\
collection_year = {year}

[[model]]
name = "Baseline"
baseline = true

[[model]]
name = "Model 1"
orthographic = true

[[model]]
name = "Model 2"
orthographic = true
ngram = true

[[model]]
name = "Model 3"
orthographic = true
ngram = true
supplementary = true
k = 10
"""

MODEL3_TOML = """\
collection_year = {year}
seed = 1

[features]
orthographic = true
ngram = true
supplementary = true
k = 10

[train]
c = 0.1
e = 0.1
b = 0.0
"""


def write_all(outdir: str | Path, params: GenParams = GenParams()) -> dict:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    tweets, gazetteer, eval_ids, _ = generate(params)

    write_corpus(tweets, outdir / "corpus.tsv")
    with open(outdir / "gazetteer.tsv", "w", encoding="utf-8") as fh:
        for e in gazetteer:
            year = "" if e.release_year is None else str(e.release_year)
            fh.write(f"{e.id}\t{e.title}\t{year}\n")
    with open(outdir / "train_titles.txt", "w", encoding="utf-8") as fh:
        for name in TRAIN_MOVIES:
            fh.write(name + "\n")
    with open(outdir / "eval_ids.txt", "w", encoding="utf-8") as fh:
        for tid in eval_ids:
            fh.write(tid + "\n")

    vectors = build_embeddings(params)
    with open(outdir / "embeddings.txt", "w", encoding="utf-8") as fh:
        fh.write(f"{len(vectors)} {params.embedding_dim}\n")
        for word, vec in vectors.items():
            fh.write(word + " " + " ".join(f"{v:.6f}" for v in vec) + "\n")

    (outdir / "ablation.toml").write_text(ABLATION_TOML.format(year=params.collection_year))
    (outdir / "model3.toml").write_text(MODEL3_TOML.format(year=params.collection_year))

    n_with_gold = sum(1 for t in tweets if t.gold)
    return {
        "tweets": len(tweets),
        "with_gold": n_with_gold,
        "entities": sum(len(t.gold) for t in tweets),
        "gazetteer": len(gazetteer),
    }


def main(argv=None):
    import argparse

    ap = argparse.ArgumentParser(description="Write the demo corpus and resources")
    ap.add_argument("outdir", nargs="?", default="data")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    info = write_all(args.outdir, GenParams(seed=args.seed))
    print(
        f"wrote {info['tweets']} tweets ({info['with_gold']} with entities, "
        f"{info['entities']} entities) and {info['gazetteer']} gazetteer rows to {args.outdir}"
    )


if __name__ == "__main__":
    main()
