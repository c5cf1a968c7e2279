"""Gazetteer-driven recognition of movie titles in tweets.

The pipeline has three stages: rule-based tweet normalization, candidate
identification against a trie-indexed gazetteer, and binary classification
of candidates with a linear model whose features carry no lexical identity
of the candidate itself.  Because the classifier never sees the matched
title, the gazetteer can be extended without retraining.
"""

__version__ = "0.1.0"
