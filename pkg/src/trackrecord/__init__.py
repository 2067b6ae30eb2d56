"""Desk-scale researcher assessment toolkit.

Builds a cleaned DOI-to-DOI citation graph from JSONL sources, computes
work-level scores (citations, influence, popularity, impulse) and the
eleven researcher-level indicators, and serves editable researcher
profiles with faceted indicator recomputation over HTTP.
"""

__version__ = "0.1.0"
