"""kgcurate: document-to-knowledge-graph extraction, curation, and certification.

Pipeline: pre-extracted page text goes through family identification,
overlapping chunking, LLM triple extraction, and evidence alignment
into a provenance-aware draft graph; role-governed expert review and
meta-expert certification promote it to a certified graph; fusion,
query, and analytics tasks run on top. An HTTP service and a CLI
expose the whole surface.
"""

__version__ = "0.1.0"
