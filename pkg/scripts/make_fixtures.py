#!/usr/bin/env python3
"""Regenerate the bundled demo intake and its replay fixture.

Builds a synthetic managed-care climate-disclosure document whose
recorded extraction responses insert exactly 73 distinct triples, with
two boundary facts repeated across overlapping chunks (exercising
dedup) and two malformed lines (exercising skip warnings). Run from
the repo root:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kgcurate.ingest.chunker import ChunkConfig, chunk_text, join_pages
from kgcurate.ingest.prompts import PromptRegistry, select_prompt
from kgcurate.llm.client import LlmRequest
from kgcurate.store.models import PageText

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures"
TITLE = "Climate Disclosure Guidance for the Managed Care Sector"
MODEL_ID = "default"
TARGET_DISTINCT = 73

SUBJECTS = [
    "Managed care entities", "The board risk committee", "The chief sustainability officer",
    "The climate transition plan", "Member outreach programs", "Provider network operations",
    "The enterprise risk framework", "Care delivery facilities", "The actuarial function",
    "Pharmacy distribution fleets", "The disclosure policy", "Regional claims centers",
]

PREDICATES = [
    "shall disclose", "is overseen by", "has target of", "covers", "is measured in",
    "reports annually on", "integrates", "allocates capital to", "assesses",
    "is benchmarked against", "maintains", "prioritizes",
]

OBJECT_STEMS = [
    "Scope 1 emissions", "Scope 2 emissions", "Scope 3 category 15 emissions",
    "gross written premiums at climate risk", "extreme heat utilization rates",
    "vector-borne disease prevalence", "facility flood exposure", "grid outage resilience",
    "cold chain integrity", "telehealth substitution rates", "fleet electrification",
    "renewable power procurement", "energy intensity per member month",
    "scenario analysis outcomes", "physical risk concentration", "transition risk appetite",
    "heat-related admission forecasts", "community resilience grants",
    "supplier engagement scores", "internal carbon pricing", "water stress indicators",
    "air quality action thresholds", "wildfire smoke protocols", "claims volatility buffers",
    "member vulnerability indices", "emergency surge capacity", "green facility retrofits",
    "diesel generator runtime", "anesthetic gas inventories", "refrigerant leakage rates",
    "business continuity drills", "catastrophe model updates", "reinsurance adequacy",
    "premium repricing cadence", "decarbonization milestones", "baseline year 2019 levels",
    "a 30 percent reduction by 2030", "net zero operations by 2045",
    "annual assurance reviews", "quarterly board reporting",
]

FILLERS = [
    "This guidance volume addresses disclosure practice for the managed care sector "
    "and explains how preparers select, measure, and present the associated metrics.",
    "Entities should read these paragraphs together with the general requirements "
    "and apply them to the facts and circumstances of their own operations.",
    "Terms used in this section carry the meanings given in the sector glossary "
    "unless a paragraph explicitly states a narrower usage.",
    "The following paragraphs set out sector-specific application guidance and "
    "identify the judgements preparers are expected to document.",
    "Materiality judgements remain the responsibility of the reporting entity and "
    "should reflect the information needs of primary users.",
    "Illustrative examples included here do not limit the scope of the requirements "
    "and may be adapted to the entity's reporting structure.",
    "Cross-references in the margin indicate related metrics elsewhere in this "
    "volume and in the general requirements.",
    "Preparers may aggregate or disaggregate metrics where doing so preserves the "
    "decision-usefulness of the reported information.",
]


def build_facts(count: int) -> list[tuple[str, str, str]]:
    facts = []
    i = 0
    while len(facts) < count:
        subject = SUBJECTS[i % len(SUBJECTS)]
        predicate = PREDICATES[(i // 3) % len(PREDICATES)]
        stem = OBJECT_STEMS[i % len(OBJECT_STEMS)]
        # Qualify repeated stems so every (subject, object) pair stays unique.
        qualifier = "" if i < len(OBJECT_STEMS) else f" in cycle {i // len(OBJECT_STEMS)}"
        facts.append((subject, predicate, stem + qualifier))
        i += 1
    return facts


def build_document(fact_count: int) -> tuple[list[PageText], list[tuple[tuple, int, int]]]:
    """Pages plus (fact, abs_start, abs_end) spans for every fact sentence."""
    facts = build_facts(fact_count)
    sentences: list[tuple[str, tuple | None]] = []
    filler_idx = 0
    intro = ("This volume explains how managed care entities apply climate-related "
             "disclosure requirements across governance, strategy, risk management, "
             "and metrics and targets.")
    sentences.append((intro, None))
    for n, fact in enumerate(facts):
        if n % 2 == 1:
            sentences.append((FILLERS[filler_idx % len(FILLERS)], None))
            filler_idx += 1
        subject, predicate, obj = fact
        sentences.append((f"{subject} {predicate} {obj}.", fact))

    # Pack sentences into three pages of roughly equal length.
    total = sum(len(s) + 1 for s, _ in sentences)
    per_page = total // 3 + 1
    pages_sentences: list[list[tuple[str, tuple | None]]] = [[], [], []]
    page_idx = 0
    used = 0
    for sentence, fact in sentences:
        if used > per_page * (page_idx + 1) and page_idx < 2:
            page_idx += 1
        pages_sentences[page_idx].append((sentence, fact))
        used += len(sentence) + 1

    pages = []
    spans = []
    offset = 0
    for number, page_sents in enumerate(pages_sentences, start=1):
        text_parts = []
        cursor = offset
        for sentence, fact in page_sents:
            if text_parts:
                cursor += 1  # joining space
            if fact is not None:
                spans.append((fact, cursor, cursor + len(sentence)))
            text_parts.append(sentence)
            cursor += len(sentence)
        page_text = " ".join(text_parts)
        pages.append(PageText(page=number, text=page_text))
        offset += len(page_text) + 1  # page separator "\n"
    return pages, spans


def chunk_responses(pages, spans, config: ChunkConfig):
    full_text, page_map = join_pages(pages)
    chunks = chunk_text(full_text, config, page_map)
    per_chunk: list[list[tuple]] = [[] for _ in chunks]
    for fact, start, end in spans:
        for chunk in chunks:
            if start >= chunk.start and end <= chunk.end:
                per_chunk[chunk.index].append(fact)
    return chunks, per_chunk


def main() -> None:
    registry = PromptRegistry.load()
    config = ChunkConfig(chunk_size=registry.chunk_size, overlap=registry.overlap)

    chosen = None
    for fact_count in range(70, 110):
        pages, spans = build_document(fact_count)
        chunks, per_chunk = chunk_responses(pages, spans, config)
        if len(chunks) != 3:
            continue
        distinct = {fact for facts in per_chunk for fact in facts}
        duplicates = sum(len(facts) for facts in per_chunk) - len(distinct)
        if len(distinct) == TARGET_DISTINCT and duplicates >= 2:
            chosen = (fact_count, pages, chunks, per_chunk, duplicates)
            break
    if chosen is None:
        raise SystemExit("no fact count hit the target; adjust vocabulary")

    fact_count, pages, chunks, per_chunk, duplicates = chosen
    print(f"facts generated={fact_count} distinct extracted={TARGET_DISTINCT} "
          f"overlap duplicates={duplicates} chunks={len(chunks)}")

    intake = {"title": TITLE, "pages": [p.to_dict() for p in pages]}
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "managed_care_intake.json").write_text(
        json.dumps(intake, indent=2), encoding="utf-8")

    prompts = select_prompt("ifrs_s2", registry)
    records = []

    ident_request = LlmRequest(
        model_id=MODEL_ID,
        system=registry.identification_prompt(),
        user=pages[0].text[:2000],
        temperature=0.0,
    )
    records.append((ident_request, "ifrs_s2"))

    for chunk in chunks:
        lines = []
        if chunk.index == 0:
            lines.append("Here are the extracted triples:")  # skipped: no_parens
        for subject, predicate, obj in per_chunk[chunk.index]:
            lines.append(f"({subject}, {predicate}, {obj})")
        if chunk.index == len(chunks) - 1:
            lines.append("(incomplete, pair)")  # skipped: too_few_fields
        user = prompts["user_prompt_template"].replace("{content}", chunk.text)
        request = LlmRequest(model_id=MODEL_ID, system=prompts["system_prompt"],
                             user=user, temperature=0.0)
        records.append((request, "\n".join(lines)))

    records.extend(review_demo_records(registry))

    with open(OUT_DIR / "managed_care_replay.jsonl", "w", encoding="utf-8") as fh:
        for request, text in records:
            fh.write(json.dumps({"request_digest": request.digest(),
                                 "response_text": text}) + "\n")
    print(f"wrote {OUT_DIR / 'managed_care_intake.json'}")
    print(f"wrote {OUT_DIR / 'managed_care_replay.jsonl'} ({len(records)} records)")


REVIEW_DEMO_FACTS = [
    ("The board", "oversees", "climate strategy"),
    ("Climate strategy", "includes", "scenario analysis"),
    ("Scenario analysis", "informs", "risk appetite"),
    ("Risk appetite", "constrains", "capital allocation"),
    ("Capital allocation", "funds", "emission reduction targets"),
]


def review_demo_records(registry) -> list[tuple[LlmRequest, str]]:
    """A 5-triple document for fast end-to-end review walkthroughs."""
    sentences = [f"{s} {p} {o}." for s, p, o in REVIEW_DEMO_FACTS]
    page_text = ("This short briefing summarizes governance of climate strategy. "
                 + " ".join(sentences))
    intake = {"title": "Board Climate Governance Briefing",
              "pages": [{"page": 1, "text": page_text}]}
    (OUT_DIR / "review_demo_intake.json").write_text(
        json.dumps(intake, indent=2), encoding="utf-8")
    print(f"wrote {OUT_DIR / 'review_demo_intake.json'}")

    config = ChunkConfig(chunk_size=registry.chunk_size, overlap=registry.overlap)
    pages = [PageText(page=1, text=page_text)]
    full_text, page_map = join_pages(pages)
    chunks = chunk_text(full_text, config, page_map)
    assert len(chunks) == 1

    records = [(
        LlmRequest(model_id=MODEL_ID, system=registry.identification_prompt(),
                   user=page_text[:2000], temperature=0.0),
        "tcfd",
    )]
    prompts = select_prompt("tcfd", registry)
    lines = [f"({s}, {p}, {o})" for s, p, o in REVIEW_DEMO_FACTS]
    user = prompts["user_prompt_template"].replace("{content}", chunks[0].text)
    records.append((
        LlmRequest(model_id=MODEL_ID, system=prompts["system_prompt"],
                   user=user, temperature=0.0),
        "\n".join(lines),
    ))
    return records


if __name__ == "__main__":
    main()
