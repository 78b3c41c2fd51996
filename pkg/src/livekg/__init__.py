"""Multi-modal product knowledge graph and live-shopping assistant."""

__version__ = "0.1.0"
