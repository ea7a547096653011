"""Lightweight keyword extraction for query routing.

Lowercase tokenization, a fixed stop-word list, then the surviving
unigrams followed by bigrams over consecutive surviving tokens.
Order-preserving and deduplicated; no learned components.
"""

from __future__ import annotations

import re

# ~150 common English function words; deliberately static so results
# are reproducible across environments.
STOP_WORDS = frozenset("""
a about above after again against all am an and any are as at be because been
before being below between both but by can cannot could did do does doing down
during each few for from further had has have having he her here hers herself
him himself his how i if in into is it its itself just me more most my myself
no nor not now of off on once only or other our ours ourselves out over own
same she should so some such than that the their theirs them themselves then
there these they this those through to too under until up very was we were
what when where which while who whom why will with you your yours yourself
yourselves shall may might must ought would could am is are was were been
being do does did doing have has had having he she it they them his hers
""".split())

_TOKEN = re.compile(r"[a-z0-9]+(?:['_-][a-z0-9]+)*")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def extract_keywords(question: str) -> list[str]:
    kept = [tok for tok in tokenize(question) if tok not in STOP_WORDS]
    bigrams = [f"{a} {b}" for a, b in zip(kept, kept[1:])]
    out: list[str] = []
    seen: set[str] = set()
    for keyword in kept + bigrams:
        if keyword not in seen:
            seen.add(keyword)
            out.append(keyword)
    return out
