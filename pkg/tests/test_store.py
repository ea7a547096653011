from __future__ import annotations

import random

import networkx as nx
import pytest

from kgcurate.errors import (
    AlreadyDeleted,
    CertifiedImmutable,
    EmptyField,
    EmptyName,
    InvalidProvenance,
    NotDeleted,
    NotFound,
    UnknownDocument,
    UnknownEntity,
    UnknownGraph,
)
from kgcurate.store.graph_store import GraphStore
from kgcurate.store.models import Provenance, QueryFilter, TripleStatus

from conftest import fixed_clock, insert, make_document, make_store


# --- entities ---------------------------------------------------------------

def test_upsert_entity_idempotent_on_name(store_with_doc):
    store, doc = store_with_doc
    a = store.upsert_entity(doc.graph_id, "GHG emissions", "ingest")
    b = store.upsert_entity(doc.graph_id, "GHG emissions", "ingest")
    assert a.id == b.id


def test_upsert_entity_rejects_blank(store_with_doc):
    store, doc = store_with_doc
    with pytest.raises(EmptyName):
        store.upsert_entity(doc.graph_id, "   ", "ingest")


def test_entity_identity_is_exact_match(store_with_doc):
    # Case variants are distinct nodes; normalization is fusion's job.
    store, doc = store_with_doc
    a = store.upsert_entity(doc.graph_id, "GHG emissions", "x")
    b = store.upsert_entity(doc.graph_id, "ghg emissions", "x")
    assert a.id != b.id


def test_upsert_entity_unknown_graph(store):
    with pytest.raises(UnknownGraph):
        store.upsert_entity("nope", "name", "x")


# --- triples -----------------------------------------------------------------

def test_insert_triple_creates_draft(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "TCFD", "recommends disclosure of",
                 "Scope 1 emissions", actor="ingest")
    assert rec.status is TripleStatus.DRAFT
    assert rec.deleted is False
    assert rec.created_by == "ingest"
    view = store.triple_view(rec)
    assert (view["subject"], view["predicate"], view["object"]) == (
        "TCFD", "recommends disclosure of", "Scope 1 emissions")


def test_insert_triple_dedups_same_spo_same_document(store_with_doc):
    store, doc = store_with_doc
    first, created1 = store.insert_triple(
        doc.graph_id, "a", "rel", "b",
        Provenance(document_id=doc.id, chunk_index=3), "ingest")
    second, created2 = store.insert_triple(
        doc.graph_id, "a", "rel", "b",
        Provenance(document_id=doc.id, chunk_index=4), "ingest")
    assert created1 and not created2
    assert first.id == second.id
    # First provenance kept.
    assert store.get_triple(first.id).provenance.chunk_index == 3
    assert store.graph_stats(doc.graph_id).edge_count == 1


def test_insert_triple_empty_field(store_with_doc):
    store, doc = store_with_doc
    with pytest.raises(EmptyField):
        store.insert_triple(doc.graph_id, "x", "", "y",
                            Provenance(document_id=doc.id), "a")


def test_insert_triple_unknown_document(store_with_doc):
    store, doc = store_with_doc
    with pytest.raises(UnknownDocument):
        store.insert_triple(doc.graph_id, "x", "r", "y",
                            Provenance(document_id="d999"), "a")


def test_insert_validates_evidence_substring(store):
    doc = make_document(store, page_text="The quick brown fox. Jumps over fences.")
    with pytest.raises(InvalidProvenance):
        store.insert_triple(doc.graph_id, "x", "r", "y",
                            Provenance(document_id=doc.id, page=1,
                                       evidence_sentence="Not in the page at all."),
                            "a")
    rec, _ = store.insert_triple(
        doc.graph_id, "fox", "does", "jump",
        Provenance(document_id=doc.id, page=1,
                   evidence_sentence="The  quick brown fox."),  # ws-normalized match
        "a")
    assert rec.provenance.evidence_sentence == "The  quick brown fox."


def test_update_triple_patches_fields(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "x", "covers", "y")
    updated = store.update_triple(doc.graph_id, rec.id, {"predicate": "has target of"},
                                  "editor")
    assert updated.id == rec.id
    assert updated.predicate == "has target of"
    assert updated.last_updated_by == "editor"


def test_update_triple_empty_patch_no_audit(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "x", "covers", "y")
    before = len(store.audit_entries())
    updated = store.update_triple(doc.graph_id, rec.id, {}, "editor")
    assert updated.predicate == "covers"
    assert len(store.audit_entries()) == before


def test_update_certified_triple_rejected(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "x", "covers", "y")
    store.finalize_triple(rec.id, "certify", "", "meta")
    with pytest.raises(CertifiedImmutable):
        store.update_triple(doc.graph_id, rec.id, {"predicate": "other"}, "editor")


def test_update_missing_triple(store_with_doc):
    store, doc = store_with_doc
    with pytest.raises(NotFound):
        store.update_triple(doc.graph_id, "t99", {"predicate": "p"}, "a")


# --- soft delete / restore ---------------------------------------------------

def test_delete_then_restore_is_identity_on_visible_fields(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "s", "p", "o", page=None)
    original = store.triple_view(store.get_triple(rec.id))
    store.soft_delete_triple(doc.graph_id, rec.id, "x")
    restored = store.restore_triple(doc.graph_id, rec.id, "x")
    after = store.triple_view(restored)
    for field in ("subject", "predicate", "object", "provenance", "status", "origin"):
        assert after[field] == original[field]


def test_deleted_triple_hidden_from_default_views(store_with_doc):
    store, doc = store_with_doc
    a = insert(store, doc.graph_id, doc.id, "a", "p", "b")
    insert(store, doc.graph_id, doc.id, "b", "p", "c")
    store.soft_delete_triple(doc.graph_id, a.id, "x")
    sub = store.query_neighborhood(doc.graph_id, "a", 2)
    assert all(e.id != a.id for e in sub.edges)
    sub_incl = store.query_neighborhood(doc.graph_id, "a", 2,
                                        QueryFilter(include_deleted=True))
    found = [e for e in sub_incl.edges if e.id == a.id]
    assert found and found[0].deleted is True


def test_double_delete_and_bad_restore(store_with_doc):
    store, doc = store_with_doc
    rec = insert(store, doc.graph_id, doc.id, "a", "p", "b")
    with pytest.raises(NotDeleted):
        store.restore_triple(doc.graph_id, rec.id, "x")
    store.soft_delete_triple(doc.graph_id, rec.id, "x")
    with pytest.raises(AlreadyDeleted):
        store.soft_delete_triple(doc.graph_id, rec.id, "x")


# --- neighborhood and paths ---------------------------------------------------

def chain_graph(store, names):
    doc = make_document(store, title=f"chain-{names[0]}")
    for a, b in zip(names, names[1:]):
        insert(store, doc.graph_id, doc.id, a, "links", b)
    return doc


def test_neighborhood_chain_by_hand(store):
    doc = chain_graph(store, ["a", "b", "c", "d"])
    sub = store.query_neighborhood(doc.graph_id, "a", 2)
    assert sorted(n.name for n in sub.nodes) == ["a", "b", "c"]
    pairs = {(store.entity(e.subject_id).name, store.entity(e.object_id).name)
             for e in sub.edges}
    assert pairs == {("a", "b"), ("b", "c")}
    assert sub.truncated is False


def test_neighborhood_edge_cap(store):
    doc = chain_graph(store, ["a", "b", "c", "d"])
    sub = store.query_neighborhood(doc.graph_id, "a", 2, edge_cap=1)
    assert len(sub.edges) == 1
    assert sub.truncated is True


def test_neighborhood_unknown_entity(store):
    doc = chain_graph(store, ["a", "b"])
    with pytest.raises(UnknownEntity):
        store.query_neighborhood(doc.graph_id, "zz", 1)


def random_graph(store, rng, n_nodes=30, n_edges=60):
    doc = make_document(store, title=f"random-{rng.random()}")
    names = [f"n{i}" for i in range(n_nodes)]
    edges = []
    for _ in range(n_edges):
        a, b = rng.choice(names), rng.choice(names)
        if a == b:
            continue
        rec = insert(store, doc.graph_id, doc.id, a, f"p{rng.randrange(3)}", b)
        edges.append(rec)
    return doc, names


def test_neighborhood_matches_bruteforce_bfs_oracle(store):
    rng = random.Random(7)
    for _ in range(10):
        doc, names = random_graph(store, rng)
        start = rng.choice(names)
        if store.entity_by_name(doc.graph_id, start) is None:
            continue
        hops = rng.randrange(1, 4)
        sub = store.query_neighborhood(doc.graph_id, start, hops, edge_cap=10_000)

        # Independent oracle: networkx BFS distances + induced edge scan.
        g = nx.MultiGraph()
        views = [store.triple_view(t) for t in store.triples_of_graph(doc.graph_id)]
        for v in views:
            g.add_edge(v["subject"], v["object"], key=v["id"])
        reachable = {n for n, d in nx.single_source_shortest_path_length(
            g, start, cutoff=hops).items()}
        expected_edges = {v["id"] for v in views
                          if v["subject"] in reachable and v["object"] in reachable}
        assert {n.name for n in sub.nodes} == reachable
        assert {e.id for e in sub.edges} == expected_edges


def test_neighborhood_monotone_in_hops(store):
    rng = random.Random(13)
    doc, names = random_graph(store, rng)
    start = next(n for n in names if store.entity_by_name(doc.graph_id, n))
    previous: set = set()
    for hops in range(1, 5):
        nodes = {n.name for n in store.query_neighborhood(
            doc.graph_id, start, hops, edge_cap=10_000).nodes}
        assert previous <= nodes
        previous = nodes


def test_find_paths_simple_chain(store):
    doc = chain_graph(store, ["a", "b", "c"])
    paths = store.find_paths(doc.graph_id, "a", "c", 3, 10)
    assert len(paths) == 1
    assert [n.name for n in paths[0].nodes] == ["a", "b", "c"]
    assert paths[0].length == 2


def test_find_paths_self_is_empty(store):
    doc = chain_graph(store, ["a", "b"])
    assert store.find_paths(doc.graph_id, "a", "a", 3, 10) == []


def test_find_paths_matches_exhaustive_oracle(store):
    rng = random.Random(23)
    for _ in range(8):
        doc, names = random_graph(store, rng, n_nodes=12, n_edges=25)
        views = [store.triple_view(t) for t in store.triples_of_graph(doc.graph_id)]
        g = nx.MultiGraph()
        for v in views:
            g.add_edge(v["subject"], v["object"], key=v["id"])
        src, dst = rng.choice(names), rng.choice(names)
        if src == dst or src not in g or dst not in g:
            continue
        max_hops = rng.randrange(1, 5)
        got = store.find_paths(doc.graph_id, src, dst, max_hops, 100_000)
        got_keys = {tuple(e.id for e in p.edges) for p in got}
        expected = {
            tuple(key for _u, _v, key in path)
            for path in nx.all_simple_edge_paths(g, src, dst, cutoff=max_hops)
        }
        assert got_keys == expected
        # Ordering: shortest first, then lexicographic node names.
        rendered = [(p.length, tuple(n.name for n in p.nodes)) for p in got]
        assert rendered == sorted(rendered)


def test_find_paths_respects_max_paths(store):
    doc = make_document(store, title="diamond")
    insert(store, doc.graph_id, doc.id, "a", "p", "b")
    insert(store, doc.graph_id, doc.id, "b", "p", "d")
    insert(store, doc.graph_id, doc.id, "a", "p", "c")
    insert(store, doc.graph_id, doc.id, "c", "p", "d")
    assert len(store.find_paths(doc.graph_id, "a", "d", 3, 1)) == 1
    assert len(store.find_paths(doc.graph_id, "a", "d", 3, 10)) == 2


# --- stats and export ---------------------------------------------------------

def test_stats_empty_graph(store):
    graph = store.create_graph("x")
    stats = store.graph_stats(graph.id)
    assert (stats.node_count, stats.edge_count, stats.deleted_count) == (0, 0, 0)
    assert stats.predicate_histogram == {}


def test_stats_counts_exclude_deleted(store_with_doc):
    store, doc = store_with_doc
    recs = [insert(store, doc.graph_id, doc.id, f"s{i}", "p", f"o{i}") for i in range(3)]
    store.soft_delete_triple(doc.graph_id, recs[0].id, "x")
    stats = store.graph_stats(doc.graph_id)
    assert stats.edge_count == 2
    assert stats.deleted_count == 1
    assert stats.predicate_histogram == {"p": 2}


def test_export_filters_by_predicate(store_with_doc):
    store, doc = store_with_doc
    insert(store, doc.graph_id, doc.id, "a", "covers", "b")
    insert(store, doc.graph_id, doc.id, "c", "requires", "d")
    rows = store.export_edges(doc.graph_id, QueryFilter(predicates={"covers"}))
    assert [r["predicate"] for r in rows] == ["covers"]
    all_rows = store.export_edges(doc.graph_id)
    assert len(all_rows) == 2
    assert set(all_rows[0]) == {"subject", "predicate", "object",
                                "document_id", "page", "status"}


# --- persistence -----------------------------------------------------------

def test_event_replay_reproduces_state(tmp_path):
    import json

    store = make_store(tmp_path / "data", clock=fixed_clock)
    doc = make_document(store)
    insert(store, doc.graph_id, doc.id, "a", "p", "b")
    rec = insert(store, doc.graph_id, doc.id, "b", "q", "c")
    store.soft_delete_triple(doc.graph_id, rec.id, "x")
    stats_before = json.dumps(store.graph_stats(doc.graph_id).to_dict(), sort_keys=True)
    export_before = json.dumps(
        store.export_edges(doc.graph_id, QueryFilter(include_deleted=True)))
    store.close()

    # Byte-identical reproduction of the serialized read views.
    reloaded = GraphStore(tmp_path / "data", clock=fixed_clock)
    assert json.dumps(reloaded.graph_stats(doc.graph_id).to_dict(),
                      sort_keys=True) == stats_before
    assert json.dumps(reloaded.export_edges(
        doc.graph_id, QueryFilter(include_deleted=True))) == export_before
    reloaded.close()


def test_snapshot_plus_tail_replay(tmp_path):
    store = make_store(tmp_path / "data", clock=fixed_clock)
    doc = make_document(store)
    insert(store, doc.graph_id, doc.id, "a", "p", "b")
    store.save_snapshot()
    insert(store, doc.graph_id, doc.id, "b", "q", "c")
    expected = store.export_edges(doc.graph_id)
    store.close()

    reloaded = GraphStore(tmp_path / "data", clock=fixed_clock)
    assert reloaded.export_edges(doc.graph_id) == expected
    assert reloaded.verify_audit()["ok"] is True
    reloaded.close()


def test_every_mutation_emits_exactly_one_entry(store):
    # Counting oracle: scripted run with a known event count.
    doc = make_document(store)                      # graph_created + document_registered
    base = len(store.audit_entries())
    rec = insert(store, doc.graph_id, doc.id, "a", "p", "b")  # 2 upserts + 1 insert
    store.update_triple(doc.graph_id, rec.id, {"object": "c"}, "x")  # 1 upsert + 1 update
    store.soft_delete_triple(doc.graph_id, rec.id, "x")       # 1
    store.restore_triple(doc.graph_id, rec.id, "x")           # 1
    assert len(store.audit_entries()) - base == 3 + 2 + 1 + 1
