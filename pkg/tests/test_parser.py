from __future__ import annotations

import random

from kgcurate.ingest.parser import (
    RawTriple,
    format_triple_line,
    parse_triple_lines,
)


def triples_of(text):
    return [t.as_tuple() for t in parse_triple_lines(text).triples]


def test_plain_triple():
    assert triples_of("(GRI 305, covers, GHG emissions)") == [
        ("GRI 305", "covers", "GHG emissions")]


def test_commas_stay_in_object():
    # Split points: first two commas only; verified by hand enumeration
    # of "x|,| has target of|,| reduce 30%, vs 2019 baseline".
    assert triples_of("(x, has target of, reduce 30%, vs 2019 baseline)") == [
        ("x", "has target of", "reduce 30%, vs 2019 baseline")]


def test_prose_and_short_lines_skipped_with_reasons():
    outcome = parse_triple_lines("Here are the triples:\n(a, b, c)\n(d, e)")
    assert [t.as_tuple() for t in outcome.triples] == [("a", "b", "c")]
    assert [s["reason"] for s in outcome.skipped] == ["no_parens", "too_few_fields"]


def test_empty_field_rejected():
    outcome = parse_triple_lines("(a, , c)")
    assert outcome.triples == []
    assert outcome.skipped[0]["reason"] == "empty_field"


def test_bullets_and_numbering_stripped():
    text = "- (a, b, c)\n* (d, e, f)\n1. (g, h, i)\n2) (j, k, l)\n• (m, n, o)"
    assert triples_of(text) == [
        ("a", "b", "c"), ("d", "e", "f"), ("g", "h", "i"),
        ("j", "k", "l"), ("m", "n", "o")]


def test_trailing_text_warns_but_parses():
    outcome = parse_triple_lines("(a, b, c) and some commentary")
    assert [t.as_tuple() for t in outcome.triples] == [("a", "b", "c")]
    assert outcome.warnings[0]["reason"] == "trailing_text"
    assert outcome.skipped == []


def test_internal_whitespace_collapsed():
    assert triples_of("(a   b,  relates   to , c\td)") == [("a b", "relates to", "c d")]


def test_unicode_fields():
    assert triples_of("(émissions de GES, comprend, Scopé 1)") == [
        ("émissions de GES", "comprend", "Scopé 1")]


def test_parens_inside_object_kept():
    assert triples_of("(a, defines, target (interim))") == [
        ("a", "defines", "target (interim)")]


def test_blank_lines_ignored():
    outcome = parse_triple_lines("\n\n   \n(a, b, c)\n\n")
    assert len(outcome.triples) == 1
    assert outcome.skipped == []


def test_parser_is_total_on_garbage():
    garbage = "\x00\x01(((,,,)))\n)()(\n(,)\n(a,b\nxx)yy(zz"
    outcome = parse_triple_lines(garbage)  # must not raise
    assert len(outcome.triples) + len(outcome.skipped) >= 1


FIELD_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 éßü%$§&.!?;:'\"-"
OBJECT_EXTRA = ",،"


def random_field(rng, allow_commas=False):
    chars = FIELD_CHARS + (OBJECT_EXTRA if allow_commas else "")
    while True:
        value = "".join(rng.choice(chars) for _ in range(rng.randrange(1, 30)))
        value = " ".join(value.split())  # parser collapses whitespace
        if value and "(" not in value and ")" not in value:
            return value


def test_roundtrip_format_then_parse():
    rng = random.Random(1234)
    for _ in range(1000):
        subject = random_field(rng)
        predicate = random_field(rng)
        obj = random_field(rng, allow_commas=True)
        line = format_triple_line(subject, predicate, obj)
        outcome = parse_triple_lines(line)
        assert outcome.skipped == []
        assert [t.as_tuple() for t in outcome.triples] == [(subject, predicate, obj)]


def test_order_preserving_and_counts():
    lines = ["(a, b, c)", "junk", "(d, e, f)", "(g, h)", "(i, j, k)"]
    outcome = parse_triple_lines("\n".join(lines))
    assert [t.subject for t in outcome.triples] == ["a", "d", "i"]
    non_empty = len([l for l in lines if l.strip()])
    assert len(outcome.triples) + len(outcome.skipped) == non_empty
    for t in outcome.triples:
        for field in t.as_tuple():
            assert field == field.strip() and field
            assert "\n" not in field
