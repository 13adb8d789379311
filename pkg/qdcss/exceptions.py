"""Error types raised across qdcss; the CLI maps them to exit codes."""

from typing import Any, Dict, List, Optional


class QdcssError(Exception):
    """Base class for all qdcss errors."""


class DimensionMismatchError(QdcssError, ValueError):
    """Operands have incompatible shapes or lengths."""


class SpecValidationError(QdcssError, ValueError):
    """A construction spec or code-spec document is malformed."""

    def __init__(self, message: str, diagnostics: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class InfeasibleConstructionError(QdcssError):
    """A well-formed request that cannot be built."""


class IntractableSearchError(QdcssError):
    """An exhaustive search request exceeds the configured candidate guard."""
